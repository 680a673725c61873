#pragma once

#include <chrono>
#include <cstdint>

namespace pasim {

/// Simulated clock. Time points are integer nanoseconds since the start of a run.
struct SimClock {
    using rep = std::int64_t;
    using period = std::nano;
    using duration = std::chrono::duration<rep, period>;
    using time_point = std::chrono::time_point<SimClock>;
    static constexpr bool is_steady = true;
};

using Duration = SimClock::duration;
using SimTime = SimClock::time_point;

constexpr SimTime kSimStart{};

constexpr Duration nanoseconds(std::int64_t n) { return Duration{n}; }
constexpr Duration microseconds(std::int64_t n) { return Duration{n * 1000}; }
constexpr Duration milliseconds(std::int64_t n) { return Duration{n * 1'000'000}; }
constexpr Duration seconds(std::int64_t n) { return Duration{n * 1'000'000'000}; }

/// Rounds a real-valued microsecond count to the nearest nanosecond.
Duration from_us(double us);
/// Rounds a real-valued second count to the nearest nanosecond.
Duration from_seconds(double s);

inline double to_us(Duration d) { return static_cast<double>(d.count()) / 1e3; }
inline double to_seconds(Duration d) { return static_cast<double>(d.count()) / 1e9; }
inline std::int64_t ns_since_start(SimTime t) { return t.time_since_epoch().count(); }
inline SimTime at_ns(std::int64_t ns) { return SimTime{Duration{ns}}; }

}  // namespace pasim
