#include "pasim/phy/phy_params.hpp"

#include <algorithm>
#include <cstdio>
#include <stdexcept>

namespace pasim {

std::string rate_label(BitRate rate) {
    char buf[32];
    if (rate.bps % 1'000'000 == 0) {
        std::snprintf(buf, sizeof buf, "%lld", static_cast<long long>(rate.bps / 1'000'000));
    } else {
        std::snprintf(buf, sizeof buf, "%g", rate.mbps());
    }
    return buf;
}

std::string_view to_string(FrameKind kind) {
    switch (kind) {
        case FrameKind::Data: return "DATA";
        case FrameKind::Ack: return "ACK";
        case FrameKind::Rts: return "RTS";
        case FrameKind::Cts: return "CTS";
    }
    return "?";
}

namespace {

bool power_of_two(long long v) { return v > 0 && (v & (v - 1)) == 0; }

}  // namespace

void PhyParams::validate() const {
    if (slot_time <= Duration::zero() || sifs <= Duration::zero() || difs <= Duration::zero() ||
        plcp_overhead < Duration::zero()) {
        throw std::invalid_argument("phy: durations must be positive");
    }
    if (!(sifs < difs)) throw std::invalid_argument("phy: sifs must be shorter than difs");
    if (!(cw_min < cw_max)) throw std::invalid_argument("phy: cw_min must be below cw_max");
    if (!power_of_two(cw_min + 1LL) || !power_of_two(cw_max + 1LL)) {
        throw std::invalid_argument("phy: cw_min+1 and cw_max+1 must be powers of two");
    }
    if (retry_limit < 0) throw std::invalid_argument("phy: retry_limit must be >= 0");
    if (mac_overhead_bytes < 0 || ack_bytes <= 0 || rts_bytes <= 0 || cts_bytes <= 0) {
        throw std::invalid_argument("phy: frame sizes must be positive");
    }
    if (control_rate.bps <= 0) throw std::invalid_argument("phy: control_rate must be positive");
    if (rates.empty()) throw std::invalid_argument("phy: no data rates");
    for (auto r : rates) {
        if (r.bps <= 0) throw std::invalid_argument("phy: data rates must be positive");
    }
}

bool PhyParams::supports(BitRate rate) const { return std::find(rates.begin(), rates.end(), rate) != rates.end(); }

Duration serialization_time(std::int64_t bytes, BitRate rate) {
    const std::int64_t bits_times_1e9 = bytes * 8 * 1'000'000'000LL;
    return Duration{(bits_times_1e9 + rate.bps - 1) / rate.bps};
}

Duration airtime(FrameKind kind, int payload_bytes, BitRate data_rate, const PhyParams& phy) {
    switch (kind) {
        case FrameKind::Data:
            if (!phy.supports(data_rate)) {
                throw std::invalid_argument("airtime: unsupported data rate " + rate_label(data_rate) + " Mbps");
            }
            if (payload_bytes < 0) throw std::invalid_argument("airtime: negative payload");
            return phy.plcp_overhead + serialization_time(payload_bytes + phy.mac_overhead_bytes, data_rate);
        case FrameKind::Ack: return phy.plcp_overhead + serialization_time(phy.ack_bytes, phy.control_rate);
        case FrameKind::Cts: return phy.plcp_overhead + serialization_time(phy.cts_bytes, phy.control_rate);
        case FrameKind::Rts: return phy.plcp_overhead + serialization_time(phy.rts_bytes, phy.control_rate);
    }
    throw std::invalid_argument("airtime: unknown frame kind");
}

}  // namespace pasim
