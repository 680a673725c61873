#pragma once

#include <cstdint>
#include <functional>
#include <ostream>
#include <string_view>
#include <unordered_set>
#include <vector>

#include "pasim/sim/time.hpp"

namespace pasim {

enum class EventKind : std::uint8_t {
    Generic,
    TxStart,
    TxEnd,
    AccessGrant,
    AckTimeout,
    CtsTimeout,
    ResponseTx,
    SifsTx,
    NavExpiry,
    PacketArrival,
};

std::string_view to_string(EventKind kind);

/// Target id used for events that do not belong to a station.
constexpr int kChannelTarget = -1;

struct EventTag {
    int target = kChannelTarget;
    EventKind kind = EventKind::Generic;
    std::int64_t detail = 0;
};

class EventHandle {
public:
    EventHandle() = default;
    [[nodiscard]] bool valid() const { return id_ != 0; }

private:
    friend class Engine;
    explicit EventHandle(std::uint64_t id) : id_(id) {}
    std::uint64_t id_ = 0;
};

/// Single-threaded discrete-event scheduler.
///
/// Events fire in (fire_at, seq) order, where seq is the insertion counter, so
/// events scheduled for the same instant dispatch FIFO.
class Engine {
public:
    using Callback = std::function<void()>;

    Engine() = default;
    Engine(const Engine&) = delete;
    Engine& operator=(const Engine&) = delete;

    [[nodiscard]] SimTime now() const { return now_; }

    /// Scheduling in the past throws std::logic_error.
    EventHandle schedule(SimTime fire_at, EventTag tag, Callback cb);
    EventHandle schedule_in(Duration delay, EventTag tag, Callback cb) {
        return schedule(now_ + delay, tag, std::move(cb));
    }

    /// Cancelling an already dispatched or invalid handle is a no-op.
    void cancel(EventHandle& handle);

    /// Dispatches every event with fire_at <= t_end, then advances the clock to t_end.
    std::uint64_t run_until(SimTime t_end);

    [[nodiscard]] std::size_t pending() const { return live_.size(); }

    /// One tab-separated line per dispatch: time_ns, target, kind, detail.
    void set_trace(std::ostream* out) { trace_ = out; }

private:
    struct Entry {
        SimTime fire_at;
        std::uint64_t seq;
        EventTag tag;
        Callback cb;
    };
    struct Later {
        bool operator()(const Entry& a, const Entry& b) const {
            if (a.fire_at != b.fire_at) return a.fire_at > b.fire_at;
            return a.seq > b.seq;
        }
    };

    SimTime now_ = kSimStart;
    std::uint64_t next_seq_ = 1;
    std::vector<Entry> heap_;
    std::unordered_set<std::uint64_t> live_;
    std::ostream* trace_ = nullptr;
};

}  // namespace pasim
