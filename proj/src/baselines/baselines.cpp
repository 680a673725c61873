#include "pasim/baselines/baselines.hpp"

#include <cmath>
#include <stdexcept>

namespace pasim {

int cw_adapt(int cw, BitRate data_rate, BitRate reference_rate) {
    if (data_rate.bps <= 0) throw std::invalid_argument("cw_adapt: rate must be positive");
    return static_cast<int>(std::lround(static_cast<double>(cw) * static_cast<double>(reference_rate.bps) /
                                        static_cast<double>(data_rate.bps)));
}

int fragment_size(BitRate data_rate, int mtu_bytes, BitRate top_rate, const PhyParams& phy) {
    if (data_rate > top_rate) throw std::invalid_argument("fragment_size: data rate above the top rate");
    if (mtu_bytes <= 0) throw std::invalid_argument("fragment_size: mtu must be positive");
    if (data_rate == top_rate) return mtu_bytes;
    // (f + oh) / data_rate = (mtu + oh) / top_rate, in integer arithmetic.
    const std::int64_t frame = mtu_bytes + phy.mac_overhead_bytes;
    const std::int64_t num = frame * data_rate.bps;
    const std::int64_t on_air = (num + top_rate.bps - 1) / top_rate.bps;
    const std::int64_t f = on_air - phy.mac_overhead_bytes;
    if (f <= 0) throw std::invalid_argument("fragment_size: MAC overhead exceeds the matched airtime");
    return static_cast<int>(f);
}

std::vector<int> split_packet(int bytes, int fragment_bytes) {
    if (bytes <= 0 || fragment_bytes <= 0) throw std::invalid_argument("split_packet: sizes must be positive");
    const int n = (bytes + fragment_bytes - 1) / fragment_bytes;
    std::vector<int> out(static_cast<std::size_t>(n), bytes / n);
    for (int i = 0; i < bytes % n; ++i) ++out[static_cast<std::size_t>(i)];
    return out;
}

PasOptions fixed_txop_options(Duration t_p_max) {
    if (t_p_max <= Duration::zero()) throw std::invalid_argument("fixed_txop: budget must be positive");
    PasOptions o;
    o.fixed_t_p_max = t_p_max;
    return o;
}

}  // namespace pasim
