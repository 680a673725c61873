#pragma once

#include <optional>
#include <span>
#include <vector>

#include "pasim/phy/phy_params.hpp"

namespace pasim::analytic {

/// All durations in this module are microseconds as doubles.

/// How many packets a station sends per access.
enum class AggregationCount {
    /// t_p_max / T_i as a real number.
    Continuous,
    /// Rounded up to whole packets, as the α over-approximation does in the MAC.
    AlphaRounded,
};

double n_a(double t_p_max, double t_my_packet);
double n_et(double t_p_max, double t_my_packet, double t_ack);
double agg_time(double n_a, double t_i, double t_ack, double sifs);

struct RateGroup {
    BitRate rate;
    int count = 1;
};

struct ModelInput {
    std::vector<RateGroup> stations;
    int packet_bytes = 1000;
    PhyParams phy{};
    bool t_includes_plcp = false;
    AggregationCount count_mode = AggregationCount::AlphaRounded;
    /// False gives the plain-DCF round-robin model (one packet per access).
    bool aggregate = true;
    std::optional<double> t_p_max;
    /// Defaults to (cw_min / 2) slots.
    std::optional<double> avg_backoff;

    void validate() const;
};

struct RateResult {
    BitRate rate;
    int count = 0;
    double t_i = 0;
    double n_a = 0;
    double agg = 0;
    double occupancy = 0;
    double packets_per_s = 0;
    double throughput_bps = 0;
    /// Per-station throughput if every station sent at this rate.
    double reference_bps = 0;
};

struct ModelOutput {
    std::vector<RateResult> groups;
    double free_fraction = 0;
    double jain = 0;
};

double packet_time(BitRate rate, const ModelInput& in);
/// SIFS + PHY header + ACK frame.
double ack_exchange_time(const PhyParams& phy);
double avg_backoff(const ModelInput& in);

/// Occupancy and throughput only; reference rates and the index are left at zero.
ModelOutput evaluate_core(const ModelInput& in);
ModelOutput evaluate(const ModelInput& in);

/// (Σ x_i)² / (n Σ x_i²) with x_i = r_i / r*_i. Throws on a non-positive reference or size mismatch.
double jain_index(std::span<const double> rates, std::span<const double> reference_rates);

}  // namespace pasim::analytic
