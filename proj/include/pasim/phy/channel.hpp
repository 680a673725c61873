#pragma once

#include <functional>
#include <vector>

#include "pasim/phy/frame.hpp"
#include "pasim/phy/topology.hpp"
#include "pasim/sim/engine.hpp"

namespace pasim {

/// What a node observes when a signal it was sensing ends.
struct SignalEnd {
    const Frame& frame;
    /// The node is within decode range of the sender.
    bool decodable;
    /// Decodable and not voided by an overlap, by the node's own transmission, or by the link model.
    bool decoded;
    /// No other sensed energy remains at the node.
    bool medium_idle;
    /// Length of the continuous busy period that just ended; meaningful when medium_idle.
    Duration busy_interval;
};

class ChannelListener {
public:
    virtual ~ChannelListener() = default;
    /// Sensed energy went from none to some.
    virtual void on_energy_start() = 0;
    virtual void on_signal_end(const SignalEnd& end) = 0;
    virtual void on_transmit_end(const Frame& frame) = 0;
};

/// Shared medium with topology-based delivery and receiver-side collisions.
///
/// No propagation delay and no capture: any two decodable frames that overlap
/// at a receiver, by even one nanosecond, are both lost there. Sense-only
/// energy never corrupts a reception.
class Channel {
public:
    /// Returns false when the link cannot carry `frame` to `rx` at `start` (e.g. rate above link quality).
    using LinkModel = std::function<bool(const Frame& frame, NodeId rx, SimTime start)>;
    using AirObserver = std::function<void(const Frame& frame, SimTime start, SimTime end)>;

    Channel(Engine& engine, Topology topology);

    void attach(NodeId node, ChannelListener* listener);
    void set_link_model(LinkModel model) { link_model_ = std::move(model); }
    void set_air_observer(AirObserver observer) { air_observer_ = std::move(observer); }

    /// Starts transmitting `frame` now and returns its tx id. A node already transmitting is a logic error.
    std::uint64_t transmit(Frame frame);

    [[nodiscard]] bool energy_sensed(NodeId node) const { return nodes_[node].sensed > 0; }
    [[nodiscard]] bool transmitting(NodeId node) const { return nodes_[node].transmitting; }
    [[nodiscard]] const Topology& topology() const { return topology_; }

private:
    struct Reception {
        std::uint64_t tx_id;
        bool voided;
    };
    struct NodeState {
        ChannelListener* listener = nullptr;
        int sensed = 0;
        SimTime busy_since{};
        bool transmitting = false;
        std::vector<Reception> receptions;
    };

    void finish(const Frame& frame);

    Engine& engine_;
    Topology topology_;
    std::vector<NodeState> nodes_;
    LinkModel link_model_;
    AirObserver air_observer_;
    std::uint64_t next_tx_id_ = 1;
};

}  // namespace pasim
