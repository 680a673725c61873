#include "pasim/analytic/model.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace pasim::analytic {

double n_a(double t_p_max, double t_my_packet) {
    if (t_my_packet <= 0) throw std::invalid_argument("n_a: packet time must be positive");
    return t_p_max / t_my_packet;
}

double n_et(double t_p_max, double t_my_packet, double t_ack) {
    if (t_p_max <= 0 || t_my_packet <= 0 || t_ack <= 0) throw std::invalid_argument("n_et: durations must be positive");
    return (t_p_max + t_ack) / (t_my_packet + t_ack);
}

double agg_time(double n, double t_i, double t_ack, double sifs) { return n * (t_i + t_ack) + (n - 1) * sifs; }

void ModelInput::validate() const {
    if (stations.empty()) throw std::invalid_argument("model: no stations");
    for (const auto& g : stations) {
        if (g.count < 1) throw std::invalid_argument("model: station count must be at least 1");
        if (g.rate.bps <= 0) throw std::invalid_argument("model: rate must be positive");
    }
    if (packet_bytes <= 0) throw std::invalid_argument("model: packet size must be positive");
    if (t_p_max && *t_p_max <= 0) throw std::invalid_argument("model: t_p_max must be positive");
    if (avg_backoff && *avg_backoff < 0) throw std::invalid_argument("model: negative average backoff");
}

double packet_time(BitRate rate, const ModelInput& in) {
    const double bits = 8.0 * (in.packet_bytes + in.phy.mac_overhead_bytes);
    const double t = bits / static_cast<double>(rate.bps) * 1e6;
    return in.t_includes_plcp ? t + to_us(in.phy.plcp_overhead) : t;
}

double ack_exchange_time(const PhyParams& phy) {
    return to_us(phy.sifs) + to_us(phy.plcp_overhead) +
           8.0 * phy.ack_bytes / static_cast<double>(phy.control_rate.bps) * 1e6;
}

double avg_backoff(const ModelInput& in) {
    return in.avg_backoff.value_or(in.phy.cw_min / 2.0 * to_us(in.phy.slot_time));
}

ModelOutput evaluate_core(const ModelInput& in) {
    in.validate();
    const double t_ack = ack_exchange_time(in.phy);
    const double sifs = to_us(in.phy.sifs);
    const double difs = to_us(in.phy.difs);

    double t_max = 0;
    for (const auto& g : in.stations) t_max = std::max(t_max, packet_time(g.rate, in));
    const double budget = in.t_p_max.value_or(t_max);

    ModelOutput out;
    double cycle = 0;
    int n = 0;
    for (const auto& g : in.stations) {
        RateResult r;
        r.rate = g.rate;
        r.count = g.count;
        r.t_i = packet_time(g.rate, in);
        if (!in.aggregate) {
            r.n_a = 1.0;
        } else {
            r.n_a = n_a(budget, r.t_i);
            // Guard against 11.000000001 turning into 12.
            if (in.count_mode == AggregationCount::AlphaRounded) r.n_a = std::max(1.0, std::ceil(r.n_a - 1e-9));
        }
        r.agg = agg_time(r.n_a, r.t_i, t_ack, sifs);
        cycle += r.agg * g.count;
        n += g.count;
        out.groups.push_back(r);
    }

    const double occ_den = cycle + n * difs;
    const double pkt_den = cycle + n * (difs + avg_backoff(in));
    double used = 0;
    for (auto& r : out.groups) {
        r.occupancy = r.agg / occ_den;
        r.packets_per_s = r.n_a / pkt_den * 1e6;
        r.throughput_bps = r.packets_per_s * in.packet_bytes * 8.0;
        used += r.occupancy * r.count;
    }
    out.free_fraction = 1.0 - used;
    return out;
}

ModelOutput evaluate(const ModelInput& in) {
    ModelOutput out = evaluate_core(in);
    int n = 0;
    for (const auto& g : in.stations) n += g.count;

    std::vector<double> rates;
    std::vector<double> refs;
    for (auto& r : out.groups) {
        ModelInput uniform = in;
        uniform.stations = {RateGroup{r.rate, n}};
        // The budget follows the cell's own slowest station.
        uniform.t_p_max.reset();
        r.reference_bps = evaluate_core(uniform).groups.front().throughput_bps;
        for (int k = 0; k < r.count; ++k) {
            rates.push_back(r.throughput_bps);
            refs.push_back(r.reference_bps);
        }
    }
    out.jain = jain_index(rates, refs);
    return out;
}

double jain_index(std::span<const double> rates, std::span<const double> reference_rates) {
    if (rates.size() != reference_rates.size() || rates.empty()) {
        throw std::invalid_argument("jain_index: rate lists must be non-empty and of equal length");
    }
    double sum = 0;
    double sum_sq = 0;
    for (std::size_t i = 0; i < rates.size(); ++i) {
        if (!(reference_rates[i] > 0)) throw std::invalid_argument("jain_index: reference rate must be positive");
        const double x = rates[i] / reference_rates[i];
        sum += x;
        sum_sq += x * x;
    }
    if (sum_sq == 0) throw std::invalid_argument("jain_index: all rates are zero");
    return sum * sum / (static_cast<double>(rates.size()) * sum_sq);
}

}  // namespace pasim::analytic
