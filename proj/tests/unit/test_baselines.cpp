#include <doctest.h>

#include <numeric>
#include <stdexcept>

#include "pasim/baselines/baselines.hpp"
#include "pasim/scenario/arf.hpp"

using namespace pasim;

TEST_CASE("contention window scales by 11 Mbps over the data rate") {
    CHECK(cw_adapt(31, mbps(11)) == 31);
    CHECK(cw_adapt(31, mbps(5.5)) == 62);
    CHECK(cw_adapt(31, mbps(1)) == 341);
    CHECK(cw_adapt(31, mbps(2)) == 171);
}

TEST_CASE("fragment size matches the airtime of an MTU frame at the top rate") {
    const PhyParams phy;
    // (1548 * 8 / 11) us at 5.5 Mbps carries 774 bytes, 48 of them MAC overhead.
    const int f = fragment_size(mbps(5.5), 1500, mbps(11), phy);
    CHECK(f == 726);
    CHECK(std::abs(f - 727) <= 1);
    CHECK(fragment_size(mbps(1), 1500, mbps(11), phy) == 93);
    CHECK(fragment_size(mbps(11), 1500, mbps(11), phy) == 1500);
    CHECK(data_airtime(f, mbps(5.5), phy) - phy.plcp_overhead >= data_airtime(1500, mbps(11), phy) - phy.plcp_overhead);
}

TEST_CASE("packets split into near-equal fragments") {
    const auto parts = split_packet(1500, 726);
    CHECK(parts == std::vector<int>{500, 500, 500});
    const auto uneven = split_packet(1000, 300);
    CHECK(uneven.size() == 4);
    CHECK(std::accumulate(uneven.begin(), uneven.end(), 0) == 1000);
    CHECK(split_packet(500, 726) == std::vector<int>{500});
    CHECK_THROWS_AS(split_packet(10, 0), std::invalid_argument);
}

TEST_CASE("ARF steps up after ten successes and down after two failures") {
    ArfState a(PhyParams{}.rates, mbps(5.5));
    for (int i = 0; i < 9; ++i) CHECK_FALSE(a.step(TxOutcome::Success));
    CHECK(a.step(TxOutcome::Success));
    CHECK(a.rate() == mbps(11));
    for (int i = 0; i < 20; ++i) a.step(TxOutcome::Success);
    CHECK(a.rate() == mbps(11));

    CHECK_FALSE(a.step(TxOutcome::Failure));
    CHECK(a.step(TxOutcome::Failure));
    CHECK(a.rate() == mbps(5.5));
    CHECK(arf_step(a, TxOutcome::Success) == mbps(5.5));
}

TEST_CASE("a failed probe after stepping up falls straight back") {
    ArfState a(PhyParams{}.rates, mbps(2));
    for (int i = 0; i < 10; ++i) a.step(TxOutcome::Success);
    CHECK(a.rate() == mbps(5.5));
    CHECK(a.probing());
    CHECK(a.step(TxOutcome::Failure));
    CHECK(a.rate() == mbps(2));
}

TEST_CASE("ARF stays at the bottom rung") {
    ArfState a(PhyParams{}.rates, mbps(1));
    for (int i = 0; i < 10; ++i) a.step(TxOutcome::Failure);
    CHECK(a.rate() == mbps(1));
}

TEST_CASE("link quality trace is piecewise constant") {
    LinkQualityTrace t({{at_ns(0), mbps(11)}, {SimTime{seconds(20)}, mbps(5.5)}, {SimTime{seconds(35)}, mbps(2)}});
    CHECK(t.max_rate_at(SimTime{seconds(5)}) == mbps(11));
    CHECK(t.max_rate_at(SimTime{seconds(20)}) == mbps(5.5));
    CHECK(t.max_rate_at(SimTime{seconds(40)}) == mbps(2));
}
