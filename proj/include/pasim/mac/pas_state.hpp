#pragma once

#include <optional>

#include "pasim/phy/phy_params.hpp"
#include "pasim/sim/time.hpp"

namespace pasim {

struct PasOptions {
    bool alpha = true;
    bool t_rate = true;
    /// Fixed-TXOP baseline: a constant occupancy budget replaces sensing.
    std::optional<Duration> fixed_t_p_max;

    friend bool operator==(const PasOptions&, const PasOptions&) = default;
};

/// How the packet at the head of the queue is sent.
enum class Emission {
    /// Normal DCF access (possibly the first frame of a burst).
    Classical,
    /// SIFS after the previous acknowledgement, inside a burst.
    Aggregated,
    /// The burst could not be continued; state was reset and the packet goes through DCF access.
    ClassicalLast,
};

std::string_view to_string(Emission e);

/// Smallest over-approximation that rounds `t_my_left` up to a whole number of packets:
/// (ceil(left/packet) - left/packet) * packet. Always in [0, packet).
Duration alpha(Duration t_my_left, Duration t_my_packet);

/// Payload time versus per-packet overhead time (PHY + MAC headers and the acknowledgement).
struct TRate {
    Duration payload;
    Duration header;

    [[nodiscard]] double value() const;
    [[nodiscard]] bool below_one() const { return payload < header; }
};

TRate t_rate(int payload_bytes, BitRate rate, const PhyParams& phy);

/// Budget consumed by one packet: t_my_packet, inflated by 1/t_rate when t_rate < 1.
Duration t_rate_decrement(Duration t_my_packet, const TRate& ratio);

struct EmissionDecision {
    Emission emission;
    /// t_my_left after the reload step and before this packet's decrement.
    Duration budget_before;
};

/// Per-station PAS state: occupancy sensing and the aggregated-emission rule.
class PasState {
public:
    explicit PasState(PasOptions options = {});

    /// A continuous busy period of `busy` just ended at this station.
    void sense_update(Duration busy);
    /// An acknowledgement addressed to this station was decoded.
    void reset_on_own_ack();
    /// Duration field of an overheard RTS or CTS.
    void observe_reservation(Duration reserved);

    /// Emission rule for the packet at the head of the queue. `decrement` is the
    /// budget this packet consumes (t_my_packet, or its t_rate inflation).
    EmissionDecision decide(Duration t_my_packet, Duration decrement);
    EmissionDecision decide(Duration t_my_packet) { return decide(t_my_packet, t_my_packet); }

    /// Abandons the current series: t_my_left = 0, sending = false.
    void end_burst();

    [[nodiscard]] Duration t_p_max() const { return t_p_max_; }
    [[nodiscard]] Duration t_my_left() const { return t_my_left_; }
    [[nodiscard]] bool sending() const { return sending_; }
    [[nodiscard]] const PasOptions& options() const { return options_; }

private:
    PasOptions options_;
    Duration t_p_max_{0};
    Duration t_my_left_{0};
    bool sending_ = false;
};

}  // namespace pasim
