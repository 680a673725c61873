#include "pasim/phy/channel.hpp"

#include <algorithm>
#include <stdexcept>
#include <string>

namespace pasim {

Channel::Channel(Engine& engine, Topology topology)
    : engine_(engine), topology_(std::move(topology)), nodes_(static_cast<std::size_t>(topology_.size())) {
    topology_.validate();
}

void Channel::attach(NodeId node, ChannelListener* listener) { nodes_.at(static_cast<std::size_t>(node)).listener = listener; }

std::uint64_t Channel::transmit(Frame frame) {
    NodeState& tx = nodes_.at(static_cast<std::size_t>(frame.src));
    if (tx.transmitting) {
        throw std::logic_error("channel: node " + std::to_string(frame.src) + " is already transmitting");
    }
    frame.tx_id = next_tx_id_++;
    const SimTime start = engine_.now();
    const SimTime end = start + frame.airtime;

    tx.transmitting = true;
    // Half duplex: whatever the transmitter was receiving is lost.
    for (auto& r : tx.receptions) r.voided = true;

    for (NodeId j = 0; j < topology_.size(); ++j) {
        if (j == frame.src || !topology_.senses(j, frame.src)) continue;
        NodeState& rx = nodes_[static_cast<std::size_t>(j)];
        const bool first_energy = rx.sensed++ == 0;
        if (first_energy) rx.busy_since = start;
        if (topology_.decodes(j, frame.src)) {
            bool voided = rx.transmitting || !rx.receptions.empty();
            if (link_model_ && !link_model_(frame, j, start)) voided = true;
            for (auto& r : rx.receptions) r.voided = true;
            rx.receptions.push_back(Reception{frame.tx_id, voided});
        }
        if (first_energy && rx.listener != nullptr) rx.listener->on_energy_start();
    }

    if (air_observer_) air_observer_(frame, start, end);
    engine_.schedule(end, EventTag{frame.src, EventKind::TxEnd, static_cast<std::int64_t>(frame.tx_id)},
                     [this, frame] { finish(frame); });
    return frame.tx_id;
}

void Channel::finish(const Frame& frame) {
    NodeState& tx = nodes_[static_cast<std::size_t>(frame.src)];
    tx.transmitting = false;
    if (tx.listener != nullptr) tx.listener->on_transmit_end(frame);

    const SimTime now = engine_.now();
    for (NodeId j = 0; j < topology_.size(); ++j) {
        if (j == frame.src || !topology_.senses(j, frame.src)) continue;
        NodeState& rx = nodes_[static_cast<std::size_t>(j)];
        --rx.sensed;
        bool decodable = false;
        bool decoded = false;
        auto it = std::find_if(rx.receptions.begin(), rx.receptions.end(),
                               [&](const Reception& r) { return r.tx_id == frame.tx_id; });
        if (it != rx.receptions.end()) {
            decodable = true;
            decoded = !it->voided;
            rx.receptions.erase(it);
        }
        const bool idle = rx.sensed == 0;
        if (rx.listener != nullptr) {
            rx.listener->on_signal_end(SignalEnd{frame, decodable, decoded, idle, now - rx.busy_since});
        }
    }
}

}  // namespace pasim
