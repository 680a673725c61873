#pragma once

#include <cstdint>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "pasim/mac/station.hpp"
#include "pasim/phy/topology.hpp"
#include "pasim/scenario/arf.hpp"
#include "pasim/sim/rng.hpp"

namespace pasim {

/// Saturated source packet sizes: fixed when lo == hi, otherwise uniform in [lo, hi].
struct TrafficSpec {
    int lo = 1000;
    int hi = 1000;

    static TrafficSpec fixed(int bytes) { return {bytes, bytes}; }
    static TrafficSpec uniform(int lo, int hi) { return {lo, hi}; }

    [[nodiscard]] bool is_fixed() const { return lo == hi; }
    void validate() const;

    friend bool operator==(const TrafficSpec&, const TrafficSpec&) = default;
};

int next_packet(const TrafficSpec& spec, RngStream& stream);

/// One saturated sender and its destination.
struct FlowSpec {
    NodeId src = 0;
    NodeId dst = 1;
    BitRate rate = mbps(11);
    TrafficSpec traffic;
    bool arf = false;
    /// Highest rate the src->dst link sustains over time; empty means unlimited.
    std::vector<std::pair<SimTime, BitRate>> link_trace;

    friend bool operator==(const FlowSpec&, const FlowSpec&) = default;
};

struct ScenarioConfig {
    std::string name = "custom";
    std::string description;
    int nodes = 2;
    /// Node pairs that sense but cannot decode each other (symmetric).
    std::vector<std::pair<NodeId, NodeId>> sense_only;
    /// Node pairs that neither sense nor decode each other (symmetric).
    std::vector<std::pair<NodeId, NodeId>> disconnected;
    std::vector<FlowSpec> flows;
    MacConfig mac;
    /// Packet-division MTU: fragments are airtime-matched to an MTU frame at the fastest flow's rate.
    int mtu = 1500;
    PhyParams phy;
    Duration duration = seconds(60);
    Duration warmup = seconds(5);
    int replications = 10;
    std::uint64_t seed = 1;
    Duration histogram_bin = microseconds(200);

    [[nodiscard]] Topology topology() const;
    /// Throws std::invalid_argument naming the first problem.
    void validate() const;

    friend bool operator==(const ScenarioConfig&, const ScenarioConfig&) = default;
};

struct CatalogEntry {
    std::string_view name;
    std::string_view description;
};

const std::vector<CatalogEntry>& scenario_catalog();

/// Throws std::invalid_argument for a name outside the catalog.
ScenarioConfig build_scenario(std::string_view name);

/// Payload sizes handed to the MAC for one upper-layer packet of this flow.
std::vector<int> mac_payloads(const ScenarioConfig& config, const FlowSpec& flow, int packet_bytes);

}  // namespace pasim
