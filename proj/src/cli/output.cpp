#include "pasim/cli/output.hpp"

#include <algorithm>
#include <cstdio>
#include <fstream>
#include <set>
#include <stdexcept>

#include "pasim/cli/config.hpp"

namespace pasim {

std::string csv_number(double v) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.6f", v);
    return buf;
}

namespace {

std::string prefix(const Experiment& ex, std::uint64_t seed) {
    return config_hash(ex.config) + "," + std::to_string(seed) + "," + ex.config.name + "," +
           std::string(to_string(ex.config.mac.kind));
}

std::set<NodeId> senders(const ScenarioConfig& c) {
    std::set<NodeId> s;
    for (const auto& f : c.flows) s.insert(f.src);
    return s;
}

}  // namespace

void write_flows_csv(std::ostream& out, const Experiment& ex) {
    out << "config_hash,seed,scenario,mac,station,rate,kbps,ci_lo,ci_hi,pkts_s,jain\n";
    const std::string jain = ex.report.jain ? csv_number(*ex.report.jain) : "";
    for (const auto& f : ex.report.flows) {
        out << prefix(ex, ex.config.seed) << "," << f.src << "," << rate_label(f.rate) << "," << csv_number(f.kbps.mean)
            << "," << csv_number(f.kbps.lo()) << "," << csv_number(f.kbps.hi()) << ","
            << csv_number(f.packets_per_s.mean) << "," << jain << "\n";
    }
}

void write_bursts_csv(std::ostream& out, const Experiment& ex) {
    out << "config_hash,seed,scenario,mac,station,bursts,bursts_per_s,mean_frames,max_frames,mean_interburst_us\n";
    const double window = to_seconds(ex.config.duration - ex.config.warmup);
    for (const auto& run : ex.runs) {
        for (NodeId s : senders(ex.config)) {
            std::uint64_t n = 0;
            std::uint64_t frames = 0;
            int max_frames = 0;
            for (const auto& b : run.bursts) {
                if (b.station != s) continue;
                ++n;
                frames += static_cast<std::uint64_t>(b.frames);
                max_frames = std::max(max_frames, b.frames);
            }
            const auto gaps = interburst_times(run.bursts, s);
            double gap_sum = 0;
            for (Duration g : gaps) gap_sum += to_us(g);
            out << prefix(ex, run.seed) << "," << s << "," << n << "," << csv_number(static_cast<double>(n) / window)
                << "," << csv_number(n == 0 ? 0.0 : static_cast<double>(frames) / static_cast<double>(n)) << ","
                << max_frames << "," << csv_number(gaps.empty() ? 0.0 : gap_sum / static_cast<double>(gaps.size()))
                << "\n";
        }
    }
}

void write_occupancy_csv(std::ostream& out, const Experiment& ex) {
    out << "config_hash,seed,scenario,mac,station,fraction\n";
    for (const auto& run : ex.runs) {
        for (std::size_t f = 0; f < run.occupancy.per_flow.size(); ++f) {
            out << prefix(ex, run.seed) << "," << ex.config.flows[f].src << "," << csv_number(run.occupancy.per_flow[f])
                << "\n";
        }
        out << prefix(ex, run.seed) << ",free," << csv_number(run.occupancy.free) << "\n";
    }
}

void write_histogram_csv(std::ostream& out, const Experiment& ex) {
    out << "config_hash,seed,scenario,mac,station,bin_start_us,count\n";
    for (NodeId s : senders(ex.config)) {
        std::vector<Duration> gaps;
        std::uint64_t bursts = 0;
        for (const auto& run : ex.runs) {
            const auto g = interburst_times(run.bursts, s);
            gaps.insert(gaps.end(), g.begin(), g.end());
            for (const auto& b : run.bursts) bursts += b.station == s ? 1 : 0;
        }
        if (bursts == 0) continue;
        const Histogram h = interburst_histogram(gaps, ex.config.histogram_bin, bursts);
        for (std::size_t i = 0; i < h.counts.size(); ++i) {
            if (h.counts[i] == 0) continue;
            out << prefix(ex, ex.config.seed) << "," << s << ","
                << csv_number(to_us(h.bin_width) * static_cast<double>(i)) << "," << h.counts[i] << "\n";
        }
    }
}

void write_all_csv(const std::filesystem::path& dir, const Experiment& ex) {
    std::filesystem::create_directories(dir);
    const auto write = [&](const char* name, void (*fn)(std::ostream&, const Experiment&)) {
        std::ofstream f(dir / name, std::ios::binary);
        if (!f) throw std::runtime_error("cannot write " + (dir / name).string());
        fn(f, ex);
        if (!f) throw std::runtime_error("write failed for " + (dir / name).string());
    };
    write("flows.csv", write_flows_csv);
    write("bursts.csv", write_bursts_csv);
    write("occupancy.csv", write_occupancy_csv);
    write("histogram.csv", write_histogram_csv);
}

void print_summary(std::ostream& out, const Experiment& ex) {
    char line[160];
    out << ex.config.name << " (" << to_string(ex.config.mac.kind) << ", " << ex.runs.size() << " runs, config "
        << config_hash(ex.config) << ")\n";
    std::snprintf(line, sizeof line, "%-8s %-6s %12s %24s %10s %10s\n", "station", "rate", "kbps", "95% CI", "pkt/s",
                  "occupancy");
    out << line;
    for (const auto& f : ex.report.flows) {
        char ci[48];
        std::snprintf(ci, sizeof ci, "[%.2f ; %.2f]", f.kbps.lo(), f.kbps.hi());
        std::snprintf(line, sizeof line, "%-8d %-6s %12.2f %24s %10.2f %10.4f\n", f.src, rate_label(f.rate).c_str(),
                      f.kbps.mean, ci, f.packets_per_s.mean, f.occupancy.mean);
        out << line;
    }
    std::snprintf(line, sizeof line, "total %.2f kbps, free %.4f", ex.report.total_kbps.mean,
                  ex.report.free_fraction.mean);
    out << line;
    if (ex.report.jain) {
        std::snprintf(line, sizeof line, ", Jain %.4f", *ex.report.jain);
        out << line;
    }
    out << "\n";
}

}  // namespace pasim
