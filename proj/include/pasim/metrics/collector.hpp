#pragma once

#include <cstdint>
#include <vector>

#include "pasim/mac/station.hpp"

namespace pasim {

struct FlowStats {
    int flow = 0;
    NodeId src = 0;
    NodeId dst = 0;
    BitRate rate{};
    std::uint64_t delivered_bytes = 0;
    std::uint64_t delivered_packets = 0;
    Duration window{};

    [[nodiscard]] double throughput_bps() const;
    [[nodiscard]] double packets_per_s() const;
};

/// A maximal series of DATA frames from one station where each frame after the first was sent AGGREGATED.
struct Burst {
    NodeId station = 0;
    SimTime start{};
    /// End of the last DATA transmission of the burst.
    SimTime end{};
    int frames = 0;
    Duration budget{};
    /// Sum of the DATA airtimes.
    Duration airtime{};
    /// Longest DATA airtime in the burst.
    Duration max_packet{};
};

struct OwnAckSample {
    NodeId station = 0;
    SimTime at{};
    Duration t_p_max{};
};

/// One on-air frame attributed to a flow.
struct AirInterval {
    SimTime start{};
    SimTime end{};
    int flow = 0;
};

/// Per-flow share of the measurement window; control frames count for the flow they serve.
struct Occupancy {
    std::vector<double> per_flow;
    double free = 1.0;
};

/// Records everything one run needs for reporting. Counting starts at `window_start`.
class RunCollector final : public MacObserver {
public:
    RunCollector(std::vector<FlowStats> flows, SimTime window_start, SimTime window_end, bool keep_trace);

    void on_data_tx(const DataTxRecord& record) override;
    void on_delivery(NodeId receiver, const Frame& frame, SimTime at) override;
    void on_own_ack(NodeId station, SimTime at, Duration t_p_max) override;
    void on_cw(NodeId station, int cw) override;
    void on_air(const Frame& frame, SimTime start, SimTime end);

    /// Closes open bursts and computes occupancy.
    void finish();

    [[nodiscard]] const std::vector<FlowStats>& flows() const { return flows_; }
    [[nodiscard]] const std::vector<Burst>& bursts() const { return bursts_; }
    [[nodiscard]] const std::vector<DataTxRecord>& data_tx() const { return data_tx_; }
    [[nodiscard]] const std::vector<OwnAckSample>& own_acks() const { return own_acks_; }
    [[nodiscard]] const Occupancy& occupancy() const { return occupancy_; }
    /// Delivered bytes per flow per whole second of simulated time.
    [[nodiscard]] const std::vector<std::vector<std::uint64_t>>& bytes_per_second() const { return per_second_; }
    [[nodiscard]] const std::vector<int>& cw_values() const { return cw_values_; }

private:
    [[nodiscard]] int flow_index(int flow) const;

    std::vector<FlowStats> flows_;
    SimTime window_start_;
    SimTime window_end_;
    bool keep_trace_;

    std::vector<Burst> bursts_;
    std::vector<int> open_burst_;  // per station, index into bursts_ or -1
    std::vector<DataTxRecord> data_tx_;
    std::vector<OwnAckSample> own_acks_;
    std::vector<AirInterval> air_;
    Occupancy occupancy_;
    std::vector<std::vector<std::uint64_t>> per_second_;
    std::vector<int> cw_values_;
};

/// Fractions of [start, end) occupied by each flow; overlapping transmissions share their time equally.
/// `flow` in each interval is an index into the result's per_flow vector.
Occupancy sweep_occupancy(std::vector<AirInterval> intervals, int flow_count, SimTime start, SimTime end);

}  // namespace pasim
