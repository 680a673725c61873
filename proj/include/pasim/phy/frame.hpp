#pragma once

#include <cstdint>

#include "pasim/phy/phy_params.hpp"
#include "pasim/sim/time.hpp"

namespace pasim {

using NodeId = int;
constexpr NodeId kBroadcast = -1;

/// An on-air unit.
struct Frame {
    FrameKind kind = FrameKind::Data;
    NodeId src = 0;
    NodeId dst = 0;
    int payload_bytes = 0;
    BitRate rate{};
    Duration airtime{};
    /// NAV reservation carried in the header, measured from the end of this frame.
    Duration duration_field{};
    /// DATA sent as a continuation of an aggregated series.
    bool burst_member = false;
    /// Per-sender sequence number of the MSDU (DATA), or of the MSDU being protected (RTS/CTS/ACK).
    std::uint64_t seq = 0;
    /// Flow the frame belongs to: DATA/RTS carry the sender's flow, ACK/CTS the flow they answer.
    int flow = -1;
    /// Global transmission id assigned by the channel.
    std::uint64_t tx_id = 0;

    [[nodiscard]] bool is_control() const { return kind != FrameKind::Data; }
};

/// Builds a frame whose airtime is computed from its kind, size and rate.
Frame make_frame(FrameKind kind, NodeId src, NodeId dst, int payload_bytes, BitRate rate, const PhyParams& phy);

}  // namespace pasim
