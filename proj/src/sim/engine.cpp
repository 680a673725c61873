#include "pasim/sim/engine.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

namespace pasim {

Duration from_us(double us) { return Duration{std::llround(us * 1e3)}; }
Duration from_seconds(double s) { return Duration{std::llround(s * 1e9)}; }

std::string_view to_string(EventKind kind) {
    switch (kind) {
        case EventKind::Generic: return "generic";
        case EventKind::TxStart: return "tx_start";
        case EventKind::TxEnd: return "tx_end";
        case EventKind::AccessGrant: return "access_grant";
        case EventKind::AckTimeout: return "ack_timeout";
        case EventKind::CtsTimeout: return "cts_timeout";
        case EventKind::ResponseTx: return "response_tx";
        case EventKind::SifsTx: return "sifs_tx";
        case EventKind::NavExpiry: return "nav_expiry";
        case EventKind::PacketArrival: return "packet_arrival";
    }
    return "unknown";
}

EventHandle Engine::schedule(SimTime fire_at, EventTag tag, Callback cb) {
    if (fire_at < now_) {
        throw std::logic_error("event scheduled in the past: " + std::to_string(ns_since_start(fire_at)) +
                               " < " + std::to_string(ns_since_start(now_)));
    }
    const std::uint64_t seq = next_seq_++;
    heap_.push_back(Entry{fire_at, seq, tag, std::move(cb)});
    std::push_heap(heap_.begin(), heap_.end(), Later{});
    live_.insert(seq);
    return EventHandle{seq};
}

void Engine::cancel(EventHandle& handle) {
    if (handle.valid()) live_.erase(handle.id_);
    handle = EventHandle{};
}

std::uint64_t Engine::run_until(SimTime t_end) {
    std::uint64_t dispatched = 0;
    while (!heap_.empty() && heap_.front().fire_at <= t_end) {
        std::pop_heap(heap_.begin(), heap_.end(), Later{});
        Entry entry = std::move(heap_.back());
        heap_.pop_back();
        if (live_.erase(entry.seq) == 0) continue;
        now_ = entry.fire_at;
        if (trace_ != nullptr) {
            *trace_ << ns_since_start(now_) << '\t' << entry.tag.target << '\t' << to_string(entry.tag.kind) << '\t'
                    << entry.tag.detail << '\n';
        }
        entry.cb();
        ++dispatched;
    }
    if (t_end > now_) now_ = t_end;
    return dispatched;
}

}  // namespace pasim
