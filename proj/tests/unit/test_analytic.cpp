#include <doctest.h>

#include <random>

#include "pasim/analytic/model.hpp"

using namespace pasim;
using namespace pasim::analytic;

TEST_CASE("packet counts per access") {
    // 8384 us is a 1000 B frame at 1 Mbps without PLCP, 762.18 us the same at 11 Mbps.
    CHECK(n_a(8384, 762.18) == doctest::Approx(11.0).epsilon(1e-3));
    CHECK(n_et(8384, 762.18, 314) == doctest::Approx(8.08).epsilon(1e-3));
    CHECK(agg_time(11, 762.18, 314, 10) == doctest::Approx(11937.98).epsilon(1e-6));
}

TEST_CASE("packet and acknowledgement times") {
    ModelInput in;
    in.stations = {{mbps(11), 1}};
    CHECK(packet_time(mbps(11), in) == doctest::Approx(1048 * 8 / 11.0));
    CHECK(packet_time(mbps(1), in) == doctest::Approx(8384));
    in.t_includes_plcp = true;
    CHECK(packet_time(mbps(1), in) == doctest::Approx(8576));
    CHECK(ack_exchange_time(PhyParams{}) == doctest::Approx(314));
    CHECK(avg_backoff(in) == doctest::Approx(310));
}

TEST_CASE("n_a never falls below n_et") {
    std::mt19937_64 gen(3);
    std::uniform_real_distribution<double> u(1.0, 20'000.0);
    for (int i = 0; i < 10'000; ++i) {
        double a = u(gen);
        double b = u(gen);
        if (a < b) std::swap(a, b);
        const double ack = u(gen) / 20;
        CHECK(n_a(a, b) >= n_et(a, b, ack));
    }
}

TEST_CASE("two-rate mixes are close to the reference analytic rows") {
    struct Row {
        double slow;
        double slow_kbps;
        double slow_pkts;
        double fast_kbps;
        double fast_pkts;
        double index;
    };
    for (const Row& r : {Row{5.5, 1547.2, 193.4, 3095.2, 386.9, 0.98}, Row{2, 624.8, 78.1, 3749.6, 468.7, 0.93},
                         Row{1, 344.8, 43.1, 3791.2, 473.9, 0.92}}) {
        ModelInput in;
        in.stations = {{mbps(r.slow), 1}, {mbps(11), 1}};
        const ModelOutput out = evaluate(in);
        CAPTURE(r.slow);
        REQUIRE(out.groups.size() == 2);
        CHECK(std::abs(out.groups[0].throughput_bps / 1e3 / r.slow_kbps - 1) < 0.10);
        CHECK(std::abs(out.groups[0].packets_per_s / r.slow_pkts - 1) < 0.10);
        CHECK(std::abs(out.groups[1].throughput_bps / 1e3 / r.fast_kbps - 1) < 0.10);
        CHECK(std::abs(out.groups[1].packets_per_s / r.fast_pkts - 1) < 0.10);
        CHECK(std::abs(out.jain - r.index) <= 0.03);
    }
}

TEST_CASE("packet ratios are whole numbers in the rounded model") {
    ModelInput in;
    in.stations = {{mbps(1), 1}, {mbps(11), 1}};
    const auto out = evaluate(in);
    CHECK(out.groups[1].packets_per_s / out.groups[0].packets_per_s == doctest::Approx(11.0));
    in.stations = {{mbps(2), 1}, {mbps(11), 1}};
    const auto two = evaluate(in);
    CHECK(two.groups[1].packets_per_s / two.groups[0].packets_per_s == doctest::Approx(6.0));
}

TEST_CASE("equal rates are perfectly fair and occupancy adds up") {
    ModelInput in;
    in.stations = {{mbps(11), 2}};
    const auto out = evaluate(in);
    CHECK(out.jain == doctest::Approx(1.0));
    double occ = out.free_fraction;
    for (const auto& g : out.groups) occ += g.occupancy * g.count;
    CHECK(occ == doctest::Approx(1.0));
}

TEST_CASE("jain index") {
    const std::vector<double> r{1, 1, 1};
    const std::vector<double> ref{2, 2, 2};
    CHECK(jain_index(r, ref) == doctest::Approx(1.0));
    const std::vector<double> skew{1, 0};
    const std::vector<double> one{1, 1};
    CHECK(jain_index(skew, one) == doctest::Approx(0.5));
    const std::vector<double> bad{0, 1};
    CHECK_THROWS(jain_index(one, bad));
    CHECK_THROWS(jain_index(r, one));
}
