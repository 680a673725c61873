#include "pasim/mac/station.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

namespace pasim {

std::string_view to_string(MacKind kind) {
    switch (kind) {
        case MacKind::Dcf: return "dcf";
        case MacKind::Pas: return "pas";
        case MacKind::CwAdapt: return "cw_adapt";
        case MacKind::PacketDivision: return "packet_division";
        case MacKind::FixedTxop: return "fixed_txop";
    }
    return "?";
}

std::optional<MacKind> parse_mac_kind(std::string_view text) {
    for (MacKind k : {MacKind::Dcf, MacKind::Pas, MacKind::CwAdapt, MacKind::PacketDivision, MacKind::FixedTxop}) {
        if (to_string(k) == text) return k;
    }
    return std::nullopt;
}

Station::Station(NodeId id, Engine& engine, Channel& channel, const PhyParams& phy, MacConfig config,
                 RngStream rng, MacObserver* observer)
    : id_(id),
      engine_(engine),
      channel_(channel),
      phy_(phy),
      config_(std::move(config)),
      rng_(std::move(rng)),
      observer_(observer),
      cw_(phy.cw_min),
      count_from_(engine.now() + phy.difs) {
    if (config_.uses_pas()) {
        PasOptions opts = config_.pas;
        if (config_.kind == MacKind::Pas) opts.fixed_t_p_max.reset();
        if (config_.kind == MacKind::FixedTxop && !opts.fixed_t_p_max) {
            throw std::invalid_argument("fixed_txop station needs a fixed t_p_max");
        }
        pas_.emplace(opts);
    }
    channel_.attach(id_, this);
}

void Station::bind_flow(FlowBinding flow) {
    if (!flow.source) throw std::invalid_argument("station " + std::to_string(id_) + ": flow without a source");
    if (!phy_.supports(flow.rate)) throw std::invalid_argument("station " + std::to_string(id_) + ": unsupported rate");
    flow_ = std::move(flow);
}

void Station::enable_arf(ArfState arf) { arf_ = std::move(arf); }

void Station::start() {
    if (!flow_) return;
    ensure_packet();
    backoff_ = forced_backoff_.value_or(0);
    forced_backoff_.reset();
    request_access();
}

BitRate Station::current_rate() const { return arf_ ? arf_->rate() : flow_->rate; }

int Station::effective_cw() const {
    if (config_.kind != MacKind::CwAdapt || !flow_) return cw_;
    const double scaled = static_cast<double>(cw_) * static_cast<double>(config_.cw_reference_rate.bps) /
                          static_cast<double>(current_rate().bps);
    return static_cast<int>(std::lround(scaled));
}

bool Station::medium_busy() const {
    return channel_.energy_sensed(id_) || channel_.transmitting(id_) || nav_until_ > engine_.now();
}

// ---------------------------------------------------------------- access

void Station::refresh_medium() {
    const bool busy = medium_busy();
    if (busy && idle_) {
        idle_ = false;
        on_medium_busy();
    } else if (!busy && !idle_) {
        idle_ = true;
        on_medium_idle();
    }
}

void Station::on_medium_busy() {
    if (!grant_event_.valid()) return;
    const SimTime now = engine_.now();
    // A grant due at this very instant still fires: both stations start together and collide.
    if (grant_time_ == now) return;
    if (now > count_from_) {
        const auto slots = static_cast<int>((now - count_from_) / phy_.slot_time);
        backoff_ = std::max(0, backoff_ - slots);
    }
    engine_.cancel(grant_event_);
}

Duration Station::eifs() const { return phy_.sifs + ack_airtime(phy_) + phy_.difs; }

void Station::on_medium_idle() {
    count_from_ = engine_.now() + phy_.difs;
    if (config_.eifs) count_from_ = std::max(count_from_, eifs_until_);
    if (sifs_retry_waiting_) {
        sifs_retry_waiting_ = false;
        schedule_sifs_data(Emission::Aggregated);
        return;
    }
    schedule_grant_if_needed();
}

void Station::schedule_grant_if_needed() {
    if (!access_wanted_ || !idle_ || grant_event_.valid()) return;
    grant_time_ = std::max(count_from_ + backoff_ * phy_.slot_time, engine_.now());
    grant_event_ = engine_.schedule(grant_time_, EventTag{id_, EventKind::AccessGrant, backoff_}, [this] { on_grant(); });
}

void Station::request_access() {
    phase_ = Phase::Contend;
    access_wanted_ = true;
    // Slots only count from the moment the backoff was requested.
    if (idle_) count_from_ = std::max(count_from_, engine_.now());
    schedule_grant_if_needed();
}

void Station::draw_backoff() {
    if (forced_backoff_) {
        backoff_ = *forced_backoff_;
        forced_backoff_.reset();
        return;
    }
    backoff_ = static_cast<int>(rng_.uniform_int(0, effective_cw()));
}

void Station::set_cw(int cw) {
    cw_ = cw;
    if (observer_ != nullptr) observer_->on_cw(id_, cw_);
}

void Station::backoff_and_contend(bool double_cw) {
    if (double_cw) set_cw(std::min(2 * (cw_ + 1) - 1, phy_.cw_max));
    draw_backoff();
    request_access();
}

void Station::on_grant() {
    grant_event_ = EventHandle{};
    if (channel_.transmitting(id_)) {
        // Busy answering someone else; contend again once the medium frees up.
        backoff_ = 0;
        return;
    }
    access_wanted_ = false;
    backoff_ = 0;
    ensure_packet();

    current_emission_ = Emission::Classical;
    burst_budget_ = Duration::zero();
    if (pas_) {
        const EmissionDecision d = pas_->decide(packet_airtime(), packet_decrement());
        current_emission_ = d.emission;
        burst_budget_ = d.budget_before;
    }
    ++burst_id_;

    if (wants_rts()) {
        send_rts();
    } else {
        send_data(current_emission_, std::nullopt);
    }
}

// ---------------------------------------------------------------- exchange

void Station::ensure_packet() {
    if (current_) return;
    if (queue_.empty()) {
        for (int bytes : flow_->source()) queue_.push_back(bytes);
        if (queue_.empty()) throw std::logic_error("saturated source produced no frame");
    }
    current_ = Packet{queue_.front(), next_seq_++};
    queue_.pop_front();
    current_is_retry_ = false;
    ++counters_.packets_dequeued;
}

Duration Station::packet_airtime() const { return data_airtime(current_->bytes, current_rate(), phy_); }

Duration Station::packet_decrement() const {
    const Duration p = packet_airtime();
    if (!pas_ || !pas_->options().t_rate) return p;
    const TRate ratio = t_rate(current_->bytes, current_rate(), phy_);
    return ratio.below_one() ? t_rate_decrement(p, ratio) : p;
}

bool Station::wants_rts() const { return config_.rts_threshold && current_->bytes >= *config_.rts_threshold; }

void Station::send_rts() {
    Frame rts = make_frame(FrameKind::Rts, id_, flow_->dst, 0, phy_.control_rate, phy_);
    rts.duration_field = 3 * phy_.sifs + cts_airtime(phy_) + packet_airtime() + ack_airtime(phy_);
    rts.seq = current_->seq;
    rts.flow = flow_->flow;
    channel_.transmit(rts);
    ++counters_.rts_tx;
    phase_ = Phase::TxRts;
    refresh_medium();
}

void Station::send_data(Emission emission, std::optional<SimTime> sifs_anchor) {
    const BitRate rate = current_rate();
    Frame data = make_frame(FrameKind::Data, id_, flow_->dst, current_->bytes, rate, phy_);
    data.duration_field = phy_.sifs + ack_airtime(phy_);
    data.burst_member = emission == Emission::Aggregated;
    data.seq = current_->seq;
    data.flow = flow_->flow;

    const SimTime start = engine_.now();
    channel_.transmit(data);
    phase_ = Phase::TxData;
    ++counters_.data_tx;
    if (data.burst_member) ++counters_.aggregated_tx;

    if (pas_) {
        counters_.min_t_p_max = std::min(counters_.min_t_p_max, pas_->t_p_max());
        counters_.max_t_p_max = std::max(counters_.max_t_p_max, pas_->t_p_max());
    }
    counters_.min_t_my_packet = std::min(counters_.min_t_my_packet, data.airtime);
    counters_.max_t_my_packet = std::max(counters_.max_t_my_packet, data.airtime);

    if (observer_ != nullptr) {
        DataTxRecord rec;
        rec.station = id_;
        rec.flow = flow_->flow;
        rec.start = start;
        rec.end = start + data.airtime;
        rec.payload_bytes = data.payload_bytes;
        rec.emission = emission;
        rec.retry = current_is_retry_;
        rec.burst_id = burst_id_;
        rec.burst_budget = burst_budget_;
        rec.t_my_packet = data.airtime;
        rec.sifs_anchor = sifs_anchor;
        rec.t_p_max = pas_ ? pas_->t_p_max() : Duration::zero();
        observer_->on_data_tx(rec);
    }
    current_is_retry_ = true;
    refresh_medium();
}

void Station::schedule_sifs_data(Emission emission) {
    phase_ = Phase::SifsPending;
    const SimTime anchor = engine_.now();
    engine_.schedule_in(phy_.sifs, EventTag{id_, EventKind::SifsTx, static_cast<std::int64_t>(current_->seq)},
                        [this, emission, anchor] {
                            if (channel_.transmitting(id_)) {
                                if (pas_) pas_->end_burst();
                                backoff_and_contend(false);
                                return;
                            }
                            send_data(emission, anchor);
                        });
}

void Station::send_response(Frame frame) {
    engine_.schedule_in(phy_.sifs, EventTag{id_, EventKind::ResponseTx, static_cast<std::int64_t>(frame.kind)},
                        [this, frame] {
                            if (channel_.transmitting(id_)) return;
                            channel_.transmit(frame);
                            refresh_medium();
                        });
}

// ---------------------------------------------------------------- channel events

void Station::on_energy_start() { refresh_medium(); }

void Station::on_transmit_end(const Frame& frame) {
    if (frame.kind == FrameKind::Data && phase_ == Phase::TxData) {
        phase_ = Phase::WaitAck;
        timeout_event_ = engine_.schedule_in(phy_.sifs + ack_airtime(phy_) + phy_.slot_time,
                                             EventTag{id_, EventKind::AckTimeout, static_cast<std::int64_t>(frame.seq)},
                                             [this] {
                                                 timeout_event_ = EventHandle{};
                                                 on_ack_timeout();
                                             });
    } else if (frame.kind == FrameKind::Rts && phase_ == Phase::TxRts) {
        phase_ = Phase::WaitCts;
        timeout_event_ = engine_.schedule_in(phy_.sifs + cts_airtime(phy_) + phy_.slot_time,
                                             EventTag{id_, EventKind::CtsTimeout, static_cast<std::int64_t>(frame.seq)},
                                             [this] {
                                                 timeout_event_ = EventHandle{};
                                                 on_cts_timeout();
                                             });
    }
    refresh_medium();
}

void Station::on_signal_end(const SignalEnd& end) {
    if (pas_ && end.medium_idle) pas_->sense_update(end.busy_interval);
    eifs_until_ = end.decoded ? SimTime{} : engine_.now() + eifs();
    if (end.decoded) handle_frame(end.frame);
    refresh_medium();
}

void Station::handle_frame(const Frame& f) {
    const SimTime now = engine_.now();
    if (f.dst != id_) {
        if (pas_ && (f.kind == FrameKind::Rts || f.kind == FrameKind::Cts)) pas_->observe_reservation(f.duration_field);
        if (f.duration_field > Duration::zero() && now + f.duration_field > nav_until_) {
            nav_until_ = now + f.duration_field;
            engine_.cancel(nav_event_);
            nav_event_ = engine_.schedule(nav_until_, EventTag{id_, EventKind::NavExpiry, 0}, [this] {
                nav_event_ = EventHandle{};
                refresh_medium();
            });
        }
        return;
    }

    switch (f.kind) {
        case FrameKind::Data: {
            auto& last = last_seq_from_[f.src];
            if (f.seq > last) {
                last = f.seq;
                if (observer_ != nullptr) observer_->on_delivery(id_, f, now);
            }
            Frame ack = make_frame(FrameKind::Ack, id_, f.src, 0, phy_.control_rate, phy_);
            ack.seq = f.seq;
            ack.flow = f.flow;
            send_response(ack);
            break;
        }
        case FrameKind::Rts: {
            if (nav_until_ > now) break;
            Frame cts = make_frame(FrameKind::Cts, id_, f.src, 0, phy_.control_rate, phy_);
            cts.duration_field = std::max(Duration::zero(), f.duration_field - phy_.sifs - cts.airtime);
            cts.seq = f.seq;
            cts.flow = f.flow;
            send_response(cts);
            break;
        }
        case FrameKind::Cts: {
            if (phase_ != Phase::WaitCts || !current_ || f.seq != current_->seq) break;
            engine_.cancel(timeout_event_);
            schedule_sifs_data(current_emission_);
            break;
        }
        case FrameKind::Ack: {
            if (phase_ != Phase::WaitAck || !current_ || f.seq != current_->seq) break;
            engine_.cancel(timeout_event_);
            if (pas_) pas_->reset_on_own_ack();
            if (observer_ != nullptr) observer_->on_own_ack(id_, now, pas_ ? pas_->t_p_max() : Duration::zero());
            on_success();
            break;
        }
    }
}

// ---------------------------------------------------------------- outcomes

void Station::on_success() {
    ++counters_.successes;
    if (arf_) arf_->step(TxOutcome::Success);
    set_cw(phy_.cw_min);
    retry_count_ = 0;
    current_.reset();
    ensure_packet();

    if (pas_ && pas_->sending()) {
        const EmissionDecision d = pas_->decide(packet_airtime(), packet_decrement());
        if (d.emission == Emission::Aggregated) {
            current_emission_ = Emission::Aggregated;
            schedule_sifs_data(Emission::Aggregated);
            return;
        }
    }
    backoff_and_contend(false);
}

void Station::drop_packet() {
    ++counters_.drops;
    if (observer_ != nullptr) observer_->on_drop(id_, flow_->flow);
    current_.reset();
    retry_count_ = 0;
    set_cw(phy_.cw_min);
    if (pas_) pas_->end_burst();
    ensure_packet();
    backoff_and_contend(false);
}

void Station::on_ack_timeout() {
    ++counters_.ack_timeouts;
    if (arf_) arf_->step(TxOutcome::Failure);
    if (++retry_count_ > phy_.retry_limit) {
        drop_packet();
        return;
    }
    if (pas_ && current_emission_ == Emission::Aggregated && pas_->t_my_left() > Duration::zero()) {
        const EmissionDecision d = pas_->decide(packet_airtime(), packet_decrement());
        if (d.emission == Emission::Aggregated) {
            ++counters_.in_burst_retries;
            if (medium_busy()) {
                phase_ = Phase::SifsPending;
                sifs_retry_waiting_ = true;
            } else {
                schedule_sifs_data(Emission::Aggregated);
            }
            return;
        }
    }
    if (pas_) pas_->end_burst();
    backoff_and_contend(true);
}

void Station::on_cts_timeout() {
    ++counters_.cts_timeouts;
    if (++retry_count_ > phy_.retry_limit) {
        drop_packet();
        return;
    }
    if (pas_) pas_->end_burst();
    backoff_and_contend(true);
}

}  // namespace pasim
