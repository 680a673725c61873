#include "pasim/phy/topology.hpp"

#include <stdexcept>
#include <string>

namespace pasim {

Frame make_frame(FrameKind kind, NodeId src, NodeId dst, int payload_bytes, BitRate rate, const PhyParams& phy) {
    Frame f;
    f.kind = kind;
    f.src = src;
    f.dst = dst;
    f.payload_bytes = kind == FrameKind::Data ? payload_bytes : 0;
    f.rate = kind == FrameKind::Data ? rate : phy.control_rate;
    f.airtime = airtime(kind, f.payload_bytes, f.rate, phy);
    return f;
}

Topology::Topology(int n) : n_(n), decode_(static_cast<std::size_t>(n * n), false), sense_(decode_) {
    if (n <= 0) throw std::invalid_argument("topology: node count must be positive");
}

Topology Topology::fully_connected(int n) {
    Topology t(n);
    for (int i = 0; i < n; ++i) {
        for (int j = 0; j < n; ++j) {
            if (i != j) t.set(i, j, true, true);
        }
    }
    return t;
}

std::size_t Topology::index(NodeId rx, NodeId tx) const {
    if (rx < 0 || tx < 0 || rx >= n_ || tx >= n_) {
        throw std::out_of_range("topology: node id out of range (" + std::to_string(rx) + "," + std::to_string(tx) + ")");
    }
    return static_cast<std::size_t>(rx * n_ + tx);
}

void Topology::set(NodeId rx, NodeId tx, bool decode, bool sense) {
    decode_[index(rx, tx)] = decode;
    sense_[index(rx, tx)] = sense;
}

void Topology::connect(NodeId a, NodeId b) {
    set(a, b, true, true);
    set(b, a, true, true);
}

void Topology::sense_only(NodeId a, NodeId b) {
    set(a, b, false, true);
    set(b, a, false, true);
}

void Topology::disconnect(NodeId a, NodeId b) {
    set(a, b, false, false);
    set(b, a, false, false);
}

void Topology::validate() const {
    for (int i = 0; i < n_; ++i) {
        for (int j = 0; j < n_; ++j) {
            if (i != j && decodes(i, j) && !senses(i, j)) {
                throw std::invalid_argument("topology: node " + std::to_string(i) + " decodes " + std::to_string(j) +
                                            " without sensing it");
            }
        }
    }
}

}  // namespace pasim
