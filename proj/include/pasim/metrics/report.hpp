#pragma once

#include <map>
#include <optional>
#include <span>
#include <vector>

#include "pasim/metrics/collector.hpp"

namespace pasim {

struct ConfidenceInterval {
    double mean = 0;
    /// Student-t half width at the 0.05 level; empty with fewer than two samples.
    std::optional<double> half_width;
    int n = 0;

    [[nodiscard]] double lo() const { return mean - half_width.value_or(0.0); }
    [[nodiscard]] double hi() const { return mean + half_width.value_or(0.0); }
    [[nodiscard]] bool overlaps(const ConfidenceInterval& other) const;
};

ConfidenceInterval confidence_interval(std::span<const double> samples, double level = 0.05);

struct FlowSummary {
    int flow = 0;
    NodeId src = 0;
    NodeId dst = 0;
    BitRate rate{};
    ConfidenceInterval kbps;
    ConfidenceInterval packets_per_s;
    ConfidenceInterval occupancy;
    /// Mean throughput of this flow when every flow sends at its rate; zero until filled in.
    double reference_kbps = 0;
};

struct ThroughputReport {
    std::vector<FlowSummary> flows;
    ConfidenceInterval total_kbps;
    ConfidenceInterval free_fraction;
    std::optional<double> jain;
};

/// Per-flow means and intervals across replications (all runs must share the same flows).
ThroughputReport throughput_report(std::span<const std::vector<FlowStats>> runs,
                                   std::span<const Occupancy> occupancy = {});

/// Jain index over r_i / r*_i using the report's mean throughputs and reference throughputs.
double measured_jain(const ThroughputReport& report);

struct Histogram {
    Duration bin_width{};
    std::vector<std::uint64_t> counts;
    double mean_us = 0;
    std::uint64_t samples = 0;
    std::uint64_t bursts = 0;
};

/// Inter-burst times (next start minus previous end, same station) of one station.
std::vector<Duration> interburst_times(std::span<const Burst> bursts, NodeId station);

Histogram interburst_histogram(std::span<const Duration> gaps, Duration bin_width, std::uint64_t bursts);

}  // namespace pasim
