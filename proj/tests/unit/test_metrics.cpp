#include <doctest.h>

#include "pasim/metrics/report.hpp"

using namespace pasim;

TEST_CASE("student-t interval") {
    const std::vector<double> x{10, 12, 11, 13, 9};
    const auto ci = confidence_interval(x);
    CHECK(ci.mean == doctest::Approx(11.0));
    // sd = sqrt(2.5), t(0.975, 4) = 2.776445.
    REQUIRE(ci.half_width);
    CHECK(*ci.half_width == doctest::Approx(2.776445 * std::sqrt(2.5) / std::sqrt(5.0)).epsilon(1e-6));
    CHECK_FALSE(confidence_interval(std::vector<double>{4}).half_width);
    CHECK(confidence_interval(std::vector<double>{4}).mean == 4);
}

TEST_CASE("interval overlap") {
    ConfidenceInterval a{10, 1, 5};
    ConfidenceInterval b{11.5, 1, 5};
    ConfidenceInterval c{13, 0.5, 5};
    CHECK(a.overlaps(b));
    CHECK(b.overlaps(a));
    CHECK_FALSE(a.overlaps(c));
}

TEST_CASE("occupancy sweep splits overlaps and sums to one") {
    const auto ms = [](int v) { return SimTime{milliseconds(v)}; };
    std::vector<AirInterval> iv{{ms(0), ms(4), 0}, {ms(2), ms(6), 1}, {ms(8), ms(9), 0}};
    const auto occ = sweep_occupancy(iv, 2, ms(0), ms(10));
    CHECK(occ.per_flow[0] == doctest::Approx(0.4));
    CHECK(occ.per_flow[1] == doctest::Approx(0.3));
    CHECK(occ.free == doctest::Approx(0.3));
    CHECK(occ.per_flow[0] + occ.per_flow[1] + occ.free == doctest::Approx(1.0).epsilon(1e-9));
    CHECK_THROWS(sweep_occupancy(iv, 1, ms(0), ms(10)));
}

TEST_CASE("burst reconstruction joins aggregated frames") {
    RunCollector c({FlowStats{0, 0, 1, mbps(11), 0, 0, {}}}, at_ns(0), SimTime{seconds(1)}, false);
    const auto rec = [](int start_us, Emission e) {
        DataTxRecord r;
        r.station = 0;
        r.start = SimTime{microseconds(start_us)};
        r.end = r.start + microseconds(100);
        r.emission = e;
        r.burst_budget = microseconds(350);
        return r;
    };
    c.on_data_tx(rec(0, Emission::Classical));
    c.on_data_tx(rec(110, Emission::Aggregated));
    c.on_data_tx(rec(220, Emission::Aggregated));
    c.on_data_tx(rec(1000, Emission::ClassicalLast));
    c.on_data_tx(rec(2000, Emission::Classical));
    REQUIRE(c.bursts().size() == 3);
    CHECK(c.bursts()[0].frames == 3);
    CHECK(c.bursts()[0].end == SimTime{microseconds(320)});
    CHECK(c.bursts()[0].airtime == microseconds(300));
    CHECK(c.bursts()[1].frames == 1);

    const auto gaps = interburst_times(c.bursts(), 0);
    REQUIRE(gaps.size() == 2);
    CHECK(gaps[0] == microseconds(680));
    CHECK(gaps[1] == microseconds(900));
}

TEST_CASE("inter-burst histogram") {
    const std::vector<Duration> gaps{microseconds(50), microseconds(250), microseconds(260), microseconds(610)};
    const auto h = interburst_histogram(gaps, microseconds(200), 5);
    CHECK(h.counts == std::vector<std::uint64_t>{1, 2, 0, 1});
    CHECK(h.mean_us == doctest::Approx(292.5));
    CHECK(h.bursts == 5);
    CHECK_THROWS(interburst_histogram(gaps, Duration::zero(), 5));
    CHECK_THROWS(interburst_histogram({}, microseconds(200), 0));
}

TEST_CASE("throughput report and measured fairness") {
    std::vector<std::vector<FlowStats>> runs;
    for (int r = 0; r < 3; ++r) {
        runs.push_back({FlowStats{0, 0, 1, mbps(1), 125'000, 125, seconds(1)},
                        FlowStats{1, 2, 3, mbps(11), 250'000, 250, seconds(1)}});
    }
    auto rep = throughput_report(runs);
    CHECK(rep.flows[0].kbps.mean == doctest::Approx(1000));
    CHECK(rep.flows[1].packets_per_s.mean == doctest::Approx(250));
    CHECK(rep.total_kbps.mean == doctest::Approx(3000));
    rep.flows[0].reference_kbps = 1000;
    rep.flows[1].reference_kbps = 4000;
    // x = {1, 0.5}: (1.5)^2 / (2 * 1.25) = 0.9.
    CHECK(measured_jain(rep) == doctest::Approx(0.9));
}
