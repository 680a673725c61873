#include "pasim/sim/rng.hpp"

#include <limits>
#include <stdexcept>

namespace pasim {

std::uint64_t splitmix64(std::uint64_t x) {
    x += 0x9E3779B97F4A7C15ULL;
    x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ULL;
    x = (x ^ (x >> 27)) * 0x94D049BB133111EBULL;
    return x ^ (x >> 31);
}

std::uint64_t replication_seed(std::uint64_t master_seed, int index) {
    return splitmix64(master_seed + 0x632BE59BD9B4E019ULL * static_cast<std::uint64_t>(index + 1));
}

RngStream::RngStream(std::uint64_t master_seed, std::uint64_t stream_id)
    : seed_(master_seed), stream_id_(stream_id), engine_(splitmix64(master_seed ^ splitmix64(stream_id))) {}

std::int64_t RngStream::uniform_int(std::int64_t lo, std::int64_t hi) {
    if (lo > hi) throw std::invalid_argument("uniform_int: lo > hi");
    const std::uint64_t span = static_cast<std::uint64_t>(hi) - static_cast<std::uint64_t>(lo);
    if (span == std::numeric_limits<std::uint64_t>::max()) return static_cast<std::int64_t>(engine_());
    const std::uint64_t range = span + 1;
    // Reject the top partial bucket so every residue is equally likely.
    const std::uint64_t limit = std::numeric_limits<std::uint64_t>::max() - std::numeric_limits<std::uint64_t>::max() % range;
    std::uint64_t x = engine_();
    while (x >= limit) x = engine_();
    return static_cast<std::int64_t>(static_cast<std::uint64_t>(lo) + x % range);
}

double RngStream::uniform01() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }

}  // namespace pasim
