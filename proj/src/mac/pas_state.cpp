#include "pasim/mac/pas_state.hpp"

#include <algorithm>
#include <limits>
#include <stdexcept>

namespace pasim {

std::string_view to_string(Emission e) {
    switch (e) {
        case Emission::Classical: return "classical";
        case Emission::Aggregated: return "aggregated";
        case Emission::ClassicalLast: return "classical_last";
    }
    return "?";
}

namespace {

// Rounds toward +infinity for any sign of the numerator; den > 0.
std::int64_t ceil_div(std::int64_t num, std::int64_t den) {
    const std::int64_t q = num / den;
    return (num % den > 0) ? q + 1 : q;
}

}  // namespace

Duration alpha(Duration t_my_left, Duration t_my_packet) {
    if (t_my_packet <= Duration::zero()) throw std::invalid_argument("alpha: t_my_packet must be positive");
    const std::int64_t packets = ceil_div(t_my_left.count(), t_my_packet.count());
    return Duration{packets * t_my_packet.count() - t_my_left.count()};
}

double TRate::value() const {
    return static_cast<double>(payload.count()) / static_cast<double>(header.count());
}

TRate t_rate(int payload_bytes, BitRate rate, const PhyParams& phy) {
    return TRate{serialization_time(payload_bytes, rate),
                 phy.plcp_overhead + serialization_time(phy.mac_overhead_bytes, rate) + ack_airtime(phy)};
}

Duration t_rate_decrement(Duration t_my_packet, const TRate& ratio) {
    if (!ratio.below_one()) return t_my_packet;
    if (ratio.payload <= Duration::zero()) return Duration{std::numeric_limits<std::int64_t>::max() / 4};
    // t_my_packet / t_rate, rounded up.
    // Both factors are frame-scale nanosecond counts, far from overflowing the product.
    const std::int64_t num = t_my_packet.count() * ratio.header.count();
    const std::int64_t den = ratio.payload.count();
    return Duration{static_cast<std::int64_t>((num + den - 1) / den)};
}

PasState::PasState(PasOptions options) : options_(options) {
    if (options_.fixed_t_p_max) {
        if (*options_.fixed_t_p_max < Duration::zero()) throw std::invalid_argument("pas: negative fixed t_p_max");
        t_p_max_ = *options_.fixed_t_p_max;
    }
}

void PasState::sense_update(Duration busy) {
    if (options_.fixed_t_p_max) return;
    t_p_max_ = std::max(t_p_max_, busy);
}

void PasState::reset_on_own_ack() {
    if (options_.fixed_t_p_max) return;
    t_p_max_ = Duration::zero();
}

void PasState::observe_reservation(Duration reserved) {
    if (options_.fixed_t_p_max) return;
    t_p_max_ = std::max(t_p_max_, reserved);
}

EmissionDecision PasState::decide(Duration t_my_packet, Duration decrement) {
    // Reload only between bursts. Inside a burst t_p_max is zero anyway (reset by the
    // previous ACK) except under a fixed budget, where reloading would never end the burst.
    if (!sending_ && t_my_left_ <= Duration::zero()) t_my_left_ = t_p_max_;
    const Duration budget = t_my_left_;
    const Duration over = options_.alpha ? alpha(t_my_left_, t_my_packet) : Duration::zero();
    t_my_left_ -= decrement;
    // With alpha, left + over is an exact multiple of the packet time, so the final
    // partially-fitting packet lands on zero; it is admitted (the over-approximation).
    const bool fits = t_my_left_ + over >= Duration::zero();
    if (sending_) {
        if (fits) return {Emission::Aggregated, budget};
        end_burst();
        return {Emission::ClassicalLast, budget};
    }
    if (fits) {
        sending_ = true;
        return {Emission::Classical, budget};
    }
    t_my_left_ = Duration::zero();
    return {Emission::Classical, budget};
}

void PasState::end_burst() {
    t_my_left_ = Duration::zero();
    sending_ = false;
}

}  // namespace pasim
