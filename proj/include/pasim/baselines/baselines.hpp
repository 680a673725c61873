#pragma once

#include <vector>

#include "pasim/mac/pas_state.hpp"
#include "pasim/phy/phy_params.hpp"

namespace pasim {

/// Contention window scaled by reference/data rate, rounded to nearest.
int cw_adapt(int cw, BitRate data_rate, BitRate reference_rate = mbps(11));

/// Fragment payload whose on-air time at `data_rate` matches an `mtu_bytes`
/// frame at `top_rate` (MAC overhead counted on both sides, rounded up).
int fragment_size(BitRate data_rate, int mtu_bytes, BitRate top_rate, const PhyParams& phy);

/// Splits a packet into ceil(bytes / fragment) near-equal fragments.
std::vector<int> split_packet(int bytes, int fragment_bytes);

/// PAS options for the fixed-budget variant.
PasOptions fixed_txop_options(Duration t_p_max);

}  // namespace pasim
