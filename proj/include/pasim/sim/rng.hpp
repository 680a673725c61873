#pragma once

#include <cstdint>
#include <random>

namespace pasim {

/// Well-known stream ids for non-station subsystems. Station streams use the station id.
enum class Subsystem : std::uint64_t {
    Traffic = 1ULL << 32,
};

/// Reproducible pseudo-random stream.
///
/// The engine (mt19937_64) and the bounded-integer reduction are both fully
/// specified here rather than delegated to std::uniform_int_distribution, whose
/// algorithm is implementation-defined, so draws are identical across platforms.
class RngStream {
public:
    RngStream(std::uint64_t master_seed, std::uint64_t stream_id);

    /// Uniform integer in [lo, hi]. lo > hi throws std::invalid_argument.
    std::int64_t uniform_int(std::int64_t lo, std::int64_t hi);

    /// Uniform real in [0, 1) with 53 random bits.
    double uniform01();

    [[nodiscard]] std::uint64_t seed() const { return seed_; }
    [[nodiscard]] std::uint64_t stream_id() const { return stream_id_; }

private:
    std::uint64_t seed_;
    std::uint64_t stream_id_;
    std::mt19937_64 engine_;
};

/// SplitMix64 finaliser; used to decorrelate (seed, stream) pairs.
std::uint64_t splitmix64(std::uint64_t x);

/// Seed for replication `index` of a run with the given master seed.
std::uint64_t replication_seed(std::uint64_t master_seed, int index);

}  // namespace pasim
