#include <doctest.h>

#include <sstream>

#include "pasim/cli/experiment.hpp"
#include "pasim/cli/output.hpp"

using namespace pasim;

namespace {

ScenarioConfig short_run(const std::string& name, int reps = 2, int secs = 10) {
    ScenarioConfig c = build_scenario(name);
    c.duration = seconds(secs);
    c.warmup = seconds(1);
    c.replications = reps;
    return c;
}

double kbps(const RunResult& r, std::size_t flow) { return r.flows.at(flow).throughput_bps() / 1e3; }

}  // namespace

TEST_CASE("every catalog scenario validates") {
    for (const auto& e : scenario_catalog()) {
        CAPTURE(e.name);
        CHECK_NOTHROW(build_scenario(e.name));
    }
    CHECK_THROWS_AS(build_scenario("nope"), std::invalid_argument);
}

TEST_CASE("uniform packet sizes average 1000 bytes") {
    RngStream r(9, 0);
    const TrafficSpec t = TrafficSpec::uniform(550, 1450);
    double sum = 0;
    const int n = 100'000;
    for (int i = 0; i < n; ++i) {
        const int b = next_packet(t, r);
        REQUIRE(b >= 550);
        REQUIRE(b <= 1450);
        sum += b;
    }
    CHECK(std::abs(sum / n - 1000) < 5);
}

TEST_CASE("packet division hands the MAC airtime-matched fragments") {
    const auto c = build_scenario("packet_division");
    CHECK(mac_payloads(c, c.flows[0], 1500) == std::vector<int>{500, 500, 500});
    CHECK(mac_payloads(c, c.flows[1], 1500) == std::vector<int>{1500});
}

TEST_CASE("same seed, same run") {
    const auto c = short_run("two_station_1_11", 1, 5);
    RunOptions o;
    o.keep_trace = true;
    const auto a = simulate(c, 77, o);
    const auto b = simulate(c, 77, o);
    CHECK(a.events == b.events);
    CHECK(a.flows[0].delivered_bytes == b.flows[0].delivered_bytes);
    CHECK(a.flows[1].delivered_bytes == b.flows[1].delivered_bytes);
    CHECK(a.data_tx.size() == b.data_tx.size());
    const auto other = simulate(c, 78, o);
    CHECK(other.events != a.events);
}

TEST_CASE("CSV output does not depend on worker count") {
    const auto c = short_run("four_station_1_2_5.5_11", 3, 4);
    ExperimentOptions one;
    ExperimentOptions three;
    three.jobs = 3;
    std::ostringstream a;
    std::ostringstream b;
    write_flows_csv(a, run_experiment(c, one));
    write_flows_csv(b, run_experiment(c, three));
    CHECK(a.str() == b.str());
}

TEST_CASE("a sole saturated station leaves only contention overhead free") {
    ScenarioConfig c = short_run("validation_11_11", 1, 5);
    c.flows.pop_back();
    const auto r = simulate(c, 1);
    double occ = r.occupancy.free;
    for (double f : r.occupancy.per_flow) occ += f;
    CHECK(occ == doctest::Approx(1.0).epsilon(1e-9));
    // Per exchange: DIFS + mean backoff 310 us idle against 954 + 10 + 304 us of airtime and SIFS.
    CHECK(r.occupancy.free == doctest::Approx((50.0 + 310 + 10) / (50 + 310 + 954.182 + 10 + 304)).epsilon(0.05));
}

TEST_CASE("occupancy under DCF and PAS") {
    ScenarioConfig c = short_run("two_station_1_11", 1, 10);
    c.mac.kind = MacKind::Dcf;
    const auto dcf = simulate(c, 3);
    CHECK(dcf.occupancy.per_flow[0] > 5 * dcf.occupancy.per_flow[1]);
    c.mac.kind = MacKind::Pas;
    const auto pas = simulate(c, 3);
    // 56 pkt/s of (8576 + 10 + 304) us leaves the 1 Mbps station near one half, the fast one just under.
    CHECK(std::abs(pas.occupancy.per_flow[0] - 0.5) < 0.05);
    CHECK(std::abs(pas.occupancy.per_flow[1] - 0.45) < 0.05);

    ScenarioConfig mid = short_run("two_station_5.5_11", 1, 10);
    const auto r = simulate(mid, 3);
    CHECK(r.occupancy.per_flow[1] > r.occupancy.per_flow[0]);
    CHECK(r.occupancy.per_flow[0] < 0.5);
    CHECK(r.occupancy.per_flow[1] < 0.5);
}

TEST_CASE("the central pair starves under DCF in the three-pairs layout") {
    ScenarioConfig c = short_run("three_pairs", 1, 20);
    c.mac.kind = MacKind::Dcf;
    const auto r = simulate(c, 11);
    CHECK(kbps(r, 1) < 0.1 * kbps(r, 0));
    CHECK(kbps(r, 1) < 0.1 * kbps(r, 2));
}

TEST_CASE("PAS keeps the static station steady while the walking one slows down") {
    ScenarioConfig c = build_scenario("arf_walkaway");
    c.warmup = Duration::zero();
    const auto r = simulate(c, 5);
    const auto plateau = [&](std::size_t flow, int from, int to) {
        double sum = 0;
        for (int s = from; s < to; ++s) sum += static_cast<double>(r.bytes_per_second[flow][static_cast<std::size_t>(s)]);
        return 8 * sum / (to - from) / 1e3;
    };
    // The static station is never penalized by its slowing partner. It gains 10 to 15% once the partner
    // slows, as in the two-station runs, which is more than a flat plateau would allow.
    const double fixed0 = plateau(0, 5, 20);
    for (auto [a, b] : {std::pair{20, 35}, std::pair{35, 50}, std::pair{50, 65}}) {
        const double ratio = plateau(0, a + 2, b) / fixed0;
        CHECK(ratio > 0.95);
        CHECK(ratio < 1.20);
    }
    CHECK(plateau(1, 5, 20) > plateau(1, 22, 35));
    CHECK(plateau(1, 22, 35) > plateau(1, 37, 50));
    CHECK(plateau(1, 37, 50) > plateau(1, 52, 65));
}

TEST_CASE("saturated sources never leave a queue empty") {
    const auto r = simulate(short_run("four_station_1_1_5.5_11", 1, 5), 2);
    for (std::size_t s = 0; s < r.counters.size(); s += 2) CHECK(r.counters[s].packets_dequeued > 0);
    for (const auto& f : r.flows) CHECK(f.delivered_packets > 0);
}
