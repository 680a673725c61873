#include <doctest.h>

#include "pasim/baselines/baselines.hpp"
#include "pasim/mac/pas_state.hpp"

using namespace pasim;

TEST_CASE("alpha rounds the remaining budget up to whole packets") {
    // 2000 / 954.182 = 2.096 packets, so alpha = 3 * 954.182 - 2000 = 862.546 us.
    CHECK(to_us(alpha(microseconds(2000), nanoseconds(954'182))) == doctest::Approx(862.546).epsilon(1e-6));
    CHECK(alpha(microseconds(3000), microseconds(1000)) == Duration::zero());
    CHECK(alpha(microseconds(500), microseconds(1000)) == microseconds(500));
}

TEST_CASE("an 11 Mbps station behind a 1 Mbps one sends a nine-frame burst") {
    const PhyParams phy;
    const Duration slow = data_airtime(1000, mbps(1), phy);
    const Duration fast = data_airtime(1000, mbps(11), phy);
    PasState s;
    s.sense_update(slow);
    CHECK(s.t_p_max() == slow);

    // ceil(8576 / 954.182) = 9 frames: one classical, eight aggregated, then the series closes.
    auto d = s.decide(fast);
    CHECK(d.emission == Emission::Classical);
    CHECK(d.budget_before == slow);
    CHECK(s.sending());
    int aggregated = 0;
    for (;;) {
        d = s.decide(fast);
        if (d.emission != Emission::Aggregated) break;
        ++aggregated;
    }
    CHECK(aggregated == 8);
    CHECK(d.emission == Emission::ClassicalLast);
    CHECK_FALSE(s.sending());
    CHECK(s.t_my_left() == Duration::zero());
}

TEST_CASE("without alpha the same budget fits only whole packets") {
    const PhyParams phy;
    PasOptions o;
    o.alpha = false;
    PasState s(o);
    s.sense_update(data_airtime(1000, mbps(5.5), phy));
    // 1716.4 / 954.2 = 1.8: the second packet would overrun, so there is no aggregation.
    CHECK(s.decide(data_airtime(1000, mbps(11), phy)).emission == Emission::Classical);
    CHECK(s.decide(data_airtime(1000, mbps(11), phy)).emission == Emission::ClassicalLast);
}

TEST_CASE("own ACK resets t_p_max, sensing keeps the maximum") {
    PasState s;
    s.sense_update(microseconds(300));
    s.sense_update(microseconds(900));
    s.sense_update(microseconds(500));
    CHECK(s.t_p_max() == microseconds(900));
    s.reset_on_own_ack();
    CHECK(s.t_p_max() == Duration::zero());
    s.observe_reservation(microseconds(1200));
    CHECK(s.t_p_max() == microseconds(1200));
}

TEST_CASE("equal rates give no aggregation") {
    const PhyParams phy;
    const Duration p = data_airtime(1000, mbps(11), phy);
    PasState s;
    s.sense_update(p);
    CHECK(s.decide(p).emission == Emission::Classical);
    CHECK(s.decide(p).emission == Emission::ClassicalLast);
}

TEST_CASE("t_rate inflates the budget use of small packets only") {
    const PhyParams phy;
    const TRate big = t_rate(1000, mbps(11), phy);
    CHECK_FALSE(big.below_one());
    CHECK(t_rate_decrement(microseconds(954), big) == microseconds(954));

    // 100 B at 11 Mbps: 72.73 us of payload against 192 + 34.91 + 304 us of overhead.
    const TRate small = t_rate(100, mbps(11), phy);
    CHECK(small.below_one());
    CHECK(small.value() == doctest::Approx(72.7273 / 530.9091).epsilon(1e-4));
    const Duration p = data_airtime(100, mbps(11), phy);
    CHECK(to_us(t_rate_decrement(p, small)) == doctest::Approx(to_us(p) / small.value()).epsilon(1e-6));
}

TEST_CASE("fixed budget ignores sensing and acknowledgements") {
    PasState s(fixed_txop_options(microseconds(8000)));
    s.sense_update(microseconds(20'000));
    s.reset_on_own_ack();
    CHECK(s.t_p_max() == microseconds(8000));
    int frames = 1;
    CHECK(s.decide(microseconds(1000)).emission == Emission::Classical);
    while (s.decide(microseconds(1000)).emission == Emission::Aggregated) ++frames;
    CHECK(frames == 8);
    // The budget is reloaded only when a new series starts.
    CHECK(s.decide(microseconds(1000)).emission == Emission::Classical);
}
