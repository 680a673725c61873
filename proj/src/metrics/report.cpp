#include "pasim/metrics/report.hpp"

#include <boost/math/distributions/students_t.hpp>
#include <cmath>
#include <numeric>
#include <stdexcept>

#include "pasim/analytic/model.hpp"

namespace pasim {

bool ConfidenceInterval::overlaps(const ConfidenceInterval& other) const {
    return lo() <= other.hi() && other.lo() <= hi();
}

ConfidenceInterval confidence_interval(std::span<const double> samples, double level) {
    ConfidenceInterval ci;
    ci.n = static_cast<int>(samples.size());
    if (samples.empty()) return ci;
    ci.mean = std::accumulate(samples.begin(), samples.end(), 0.0) / static_cast<double>(samples.size());
    if (samples.size() < 2) return ci;
    double ss = 0;
    for (double x : samples) ss += (x - ci.mean) * (x - ci.mean);
    const double sd = std::sqrt(ss / static_cast<double>(samples.size() - 1));
    const boost::math::students_t dist(static_cast<double>(samples.size() - 1));
    const double t = boost::math::quantile(boost::math::complement(dist, level / 2.0));
    ci.half_width = t * sd / std::sqrt(static_cast<double>(samples.size()));
    return ci;
}

ThroughputReport throughput_report(std::span<const std::vector<FlowStats>> runs, std::span<const Occupancy> occupancy) {
    if (runs.empty()) throw std::invalid_argument("throughput_report: no runs");
    if (!occupancy.empty() && occupancy.size() != runs.size()) {
        throw std::invalid_argument("throughput_report: occupancy/run count mismatch");
    }
    const std::size_t nflows = runs.front().size();
    ThroughputReport rep;
    std::vector<double> totals(runs.size(), 0.0);
    for (std::size_t f = 0; f < nflows; ++f) {
        std::vector<double> kbps;
        std::vector<double> pps;
        std::vector<double> occ;
        for (std::size_t r = 0; r < runs.size(); ++r) {
            if (runs[r].size() != nflows) throw std::invalid_argument("throughput_report: runs disagree on flows");
            const FlowStats& s = runs[r][f];
            kbps.push_back(s.throughput_bps() / 1e3);
            pps.push_back(s.packets_per_s());
            totals[r] += s.throughput_bps() / 1e3;
            if (!occupancy.empty()) occ.push_back(occupancy[r].per_flow.at(f));
        }
        const FlowStats& first = runs.front()[f];
        FlowSummary sum;
        sum.flow = first.flow;
        sum.src = first.src;
        sum.dst = first.dst;
        sum.rate = first.rate;
        sum.kbps = confidence_interval(kbps);
        sum.packets_per_s = confidence_interval(pps);
        sum.occupancy = confidence_interval(occ);
        rep.flows.push_back(sum);
    }
    rep.total_kbps = confidence_interval(totals);
    if (!occupancy.empty()) {
        std::vector<double> free;
        for (const auto& o : occupancy) free.push_back(o.free);
        rep.free_fraction = confidence_interval(free);
    }
    return rep;
}

double measured_jain(const ThroughputReport& report) {
    std::vector<double> r;
    std::vector<double> ref;
    for (const auto& f : report.flows) {
        r.push_back(f.kbps.mean);
        ref.push_back(f.reference_kbps);
    }
    return analytic::jain_index(r, ref);
}

std::vector<Duration> interburst_times(std::span<const Burst> bursts, NodeId station) {
    std::vector<Duration> gaps;
    const Burst* prev = nullptr;
    for (const auto& b : bursts) {
        if (b.station != station) continue;
        if (prev != nullptr) gaps.push_back(b.start - prev->end);
        prev = &b;
    }
    return gaps;
}

Histogram interburst_histogram(std::span<const Duration> gaps, Duration bin_width, std::uint64_t bursts) {
    if (bin_width <= Duration::zero()) throw std::invalid_argument("histogram: bin width must be positive");
    if (bursts == 0 && gaps.empty()) throw std::invalid_argument("histogram: empty burst log");
    Histogram h;
    h.bin_width = bin_width;
    h.bursts = bursts;
    h.samples = gaps.size();
    double sum = 0;
    for (Duration g : gaps) {
        if (g < Duration::zero()) throw std::logic_error("histogram: overlapping bursts");
        const auto bin = static_cast<std::size_t>(g / bin_width);
        if (h.counts.size() <= bin) h.counts.resize(bin + 1, 0);
        ++h.counts[bin];
        sum += to_us(g);
    }
    h.mean_us = gaps.empty() ? 0.0 : sum / static_cast<double>(gaps.size());
    return h;
}

}  // namespace pasim
