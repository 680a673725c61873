#pragma once

#include <vector>

#include "pasim/phy/frame.hpp"

namespace pasim {

/// Who hears whom. decode[i][j]: node i decodes node j's frames.
/// sense[i][j]: node i detects node j's energy (carrier sense).
class Topology {
public:
    Topology() = default;
    explicit Topology(int n);

    static Topology fully_connected(int n);

    [[nodiscard]] int size() const { return n_; }
    [[nodiscard]] bool decodes(NodeId rx, NodeId tx) const { return decode_[index(rx, tx)]; }
    [[nodiscard]] bool senses(NodeId rx, NodeId tx) const { return sense_[index(rx, tx)]; }

    /// Symmetric link that is both sensed and decoded.
    void connect(NodeId a, NodeId b);
    /// Symmetric sense-only link (carrier sensing area).
    void sense_only(NodeId a, NodeId b);
    /// Removes the link in both directions.
    void disconnect(NodeId a, NodeId b);

    void set(NodeId rx, NodeId tx, bool decode, bool sense);

    /// Throws std::invalid_argument if decode does not imply sense.
    void validate() const;

    friend bool operator==(const Topology&, const Topology&) = default;

private:
    [[nodiscard]] std::size_t index(NodeId rx, NodeId tx) const;

    int n_ = 0;
    std::vector<bool> decode_;
    std::vector<bool> sense_;
};

}  // namespace pasim
