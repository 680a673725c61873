#include "pasim/metrics/collector.hpp"

#include <algorithm>
#include <stdexcept>

namespace pasim {

double FlowStats::throughput_bps() const {
    if (window <= Duration::zero()) return 0.0;
    return 8.0 * static_cast<double>(delivered_bytes) / to_seconds(window);
}

double FlowStats::packets_per_s() const {
    if (window <= Duration::zero()) return 0.0;
    return static_cast<double>(delivered_packets) / to_seconds(window);
}

RunCollector::RunCollector(std::vector<FlowStats> flows, SimTime window_start, SimTime window_end, bool keep_trace)
    : flows_(std::move(flows)), window_start_(window_start), window_end_(window_end), keep_trace_(keep_trace) {
    if (window_end_ <= window_start_) throw std::invalid_argument("collector: empty measurement window");
    for (auto& f : flows_) f.window = window_end_ - window_start_;
    const auto secs = static_cast<std::size_t>((window_end_.time_since_epoch() + seconds(1) - nanoseconds(1)) / seconds(1));
    per_second_.assign(flows_.size(), std::vector<std::uint64_t>(secs, 0));
}

int RunCollector::flow_index(int flow) const {
    if (flow < 0 || flow >= static_cast<int>(flows_.size())) throw std::out_of_range("collector: unknown flow");
    return flow;
}

void RunCollector::on_data_tx(const DataTxRecord& r) {
    if (keep_trace_) data_tx_.push_back(r);
    if (r.start >= window_end_) return;
    const auto st = static_cast<std::size_t>(r.station);
    if (open_burst_.size() <= st) open_burst_.resize(st + 1, -1);

    int& open = open_burst_[st];
    if (r.emission == Emission::Aggregated) {
        if (open >= 0) {
            Burst& b = bursts_[static_cast<std::size_t>(open)];
            b.end = r.end;
            ++b.frames;
            b.airtime += r.end - r.start;
            b.max_packet = std::max(b.max_packet, r.end - r.start);
        }
        return;
    }
    if (r.start < window_start_) {
        open = -1;
        return;
    }
    bursts_.push_back(Burst{r.station, r.start, r.end, 1, r.burst_budget, r.end - r.start, r.end - r.start});
    open = static_cast<int>(bursts_.size()) - 1;
}

void RunCollector::on_delivery(NodeId /*receiver*/, const Frame& frame, SimTime at) {
    const auto i = static_cast<std::size_t>(flow_index(frame.flow));
    const auto sec = static_cast<std::size_t>(at.time_since_epoch() / seconds(1));
    if (sec < per_second_[i].size()) per_second_[i][sec] += static_cast<std::uint64_t>(frame.payload_bytes);
    if (at < window_start_ || at > window_end_) return;
    flows_[i].delivered_bytes += static_cast<std::uint64_t>(frame.payload_bytes);
    ++flows_[i].delivered_packets;
}

void RunCollector::on_own_ack(NodeId station, SimTime at, Duration t_p_max) {
    if (keep_trace_) own_acks_.push_back(OwnAckSample{station, at, t_p_max});
}

void RunCollector::on_cw(NodeId /*station*/, int cw) {
    if (!keep_trace_) return;
    const auto it = std::lower_bound(cw_values_.begin(), cw_values_.end(), cw);
    if (it == cw_values_.end() || *it != cw) cw_values_.insert(it, cw);
}

void RunCollector::on_air(const Frame& frame, SimTime start, SimTime end) {
    if (end <= window_start_ || start >= window_end_) return;
    air_.push_back(AirInterval{start, end, flow_index(frame.flow)});
}

void RunCollector::finish() {
    occupancy_ = sweep_occupancy(std::move(air_), static_cast<int>(flows_.size()), window_start_, window_end_);
    air_.clear();
}

Occupancy sweep_occupancy(std::vector<AirInterval> intervals, int flow_count, SimTime start, SimTime end) {
    if (end <= start) throw std::invalid_argument("occupancy: empty window");
    struct Edge {
        SimTime at;
        int flow;
        int delta;
    };
    std::vector<Edge> edges;
    edges.reserve(2 * intervals.size());
    for (const auto& iv : intervals) {
        if (iv.flow < 0 || iv.flow >= flow_count) throw std::out_of_range("occupancy: flow index out of range");
        const SimTime s = std::max(iv.start, start);
        const SimTime e = std::min(iv.end, end);
        if (e <= s) continue;
        edges.push_back(Edge{s, iv.flow, +1});
        edges.push_back(Edge{e, iv.flow, -1});
    }
    std::sort(edges.begin(), edges.end(), [](const Edge& a, const Edge& b) { return a.at < b.at; });

    std::vector<int> active(static_cast<std::size_t>(flow_count), 0);
    std::vector<double> busy_ns(static_cast<std::size_t>(flow_count), 0.0);
    int total_active = 0;
    SimTime prev = start;
    for (const auto& e : edges) {
        if (e.at > prev && total_active > 0) {
            const double dt = static_cast<double>((e.at - prev).count());
            for (std::size_t f = 0; f < active.size(); ++f) {
                if (active[f] > 0) busy_ns[f] += dt * active[f] / total_active;
            }
        }
        prev = std::max(prev, e.at);
        active[static_cast<std::size_t>(e.flow)] += e.delta;
        total_active += e.delta;
    }

    Occupancy occ;
    const double window = static_cast<double>((end - start).count());
    double used = 0.0;
    for (double b : busy_ns) {
        occ.per_flow.push_back(b / window);
        used += b / window;
    }
    occ.free = 1.0 - used;
    return occ;
}

}  // namespace pasim
