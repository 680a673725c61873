#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "pasim/sim/time.hpp"

namespace pasim {

/// Data rate in bits per second.
struct BitRate {
    std::int64_t bps = 0;

    friend constexpr auto operator<=>(BitRate, BitRate) = default;

    [[nodiscard]] double mbps() const { return static_cast<double>(bps) / 1e6; }
};

constexpr BitRate mbps(double v) { return BitRate{static_cast<std::int64_t>(v * 1e6 + 0.5)}; }

/// "1", "2", "5.5", "11" style label.
std::string rate_label(BitRate rate);

enum class FrameKind : std::uint8_t { Data, Ack, Rts, Cts };

std::string_view to_string(FrameKind kind);

/// 802.11b DSSS timing and framing constants.
struct PhyParams {
    Duration slot_time = microseconds(20);
    Duration sifs = microseconds(10);
    Duration difs = microseconds(50);
    /// PHY preamble + header, always sent at the base rate.
    Duration plcp_overhead = microseconds(192);
    /// MAC header + FCS + network headers carried on air with every DATA frame.
    int mac_overhead_bytes = 48;
    int ack_bytes = 14;
    int rts_bytes = 20;
    int cts_bytes = 14;
    BitRate control_rate = mbps(1);
    int cw_min = 31;
    int cw_max = 1023;
    int retry_limit = 7;
    std::vector<BitRate> rates = {mbps(1), mbps(2), mbps(5.5), mbps(11)};

    /// Throws std::invalid_argument describing the first violated invariant.
    void validate() const;

    [[nodiscard]] bool supports(BitRate rate) const;

    friend bool operator==(const PhyParams&, const PhyParams&) = default;
};

/// On-air duration of a frame. DATA frames use `data_rate`; control frames use
/// phy.control_rate and ignore the payload. Throws std::invalid_argument for a
/// rate the PHY does not support.
Duration airtime(FrameKind kind, int payload_bytes, BitRate data_rate, const PhyParams& phy);

inline Duration data_airtime(int payload_bytes, BitRate rate, const PhyParams& phy) {
    return airtime(FrameKind::Data, payload_bytes, rate, phy);
}
inline Duration ack_airtime(const PhyParams& phy) { return airtime(FrameKind::Ack, 0, phy.control_rate, phy); }
inline Duration cts_airtime(const PhyParams& phy) { return airtime(FrameKind::Cts, 0, phy.control_rate, phy); }
inline Duration rts_airtime(const PhyParams& phy) { return airtime(FrameKind::Rts, 0, phy.control_rate, phy); }

/// Time to send `bytes` at `rate`, rounded up to a whole nanosecond.
Duration serialization_time(std::int64_t bytes, BitRate rate);

}  // namespace pasim
