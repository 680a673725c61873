#pragma once

#include <cstdint>
#include <optional>
#include <ostream>
#include <vector>

#include "pasim/metrics/collector.hpp"
#include "pasim/scenario/scenario.hpp"

namespace pasim {

struct RunOptions {
    /// Keep per-frame DATA records, own-ACK samples and CW values.
    bool keep_trace = false;
    /// Reference runs: every flow sends at this rate (ARF and link traces are ignored).
    std::optional<BitRate> force_rate;
    /// Engine dispatch trace.
    std::ostream* event_trace = nullptr;
};

struct RunResult {
    std::uint64_t seed = 0;
    std::vector<FlowStats> flows;
    Occupancy occupancy;
    std::vector<Burst> bursts;
    std::vector<StationCounters> counters;
    std::vector<DataTxRecord> data_tx;
    std::vector<OwnAckSample> own_acks;
    std::vector<int> cw_values;
    std::vector<std::vector<std::uint64_t>> bytes_per_second;
    std::uint64_t events = 0;
};

/// One independent replication of `config` with the given seed.
RunResult simulate(const ScenarioConfig& config, std::uint64_t seed, const RunOptions& options = {});

}  // namespace pasim
