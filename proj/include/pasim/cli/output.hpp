#pragma once

#include <filesystem>
#include <ostream>
#include <string>

#include "pasim/cli/experiment.hpp"

namespace pasim {

/// Every row starts with config_hash and seed. Aggregate rows use the master seed,
/// per-run rows the replication seed.
void write_flows_csv(std::ostream& out, const Experiment& ex);
/// One row per (replication, station): burst count, rate and sizes, mean inter-burst time.
void write_bursts_csv(std::ostream& out, const Experiment& ex);
/// One row per (replication, flow) plus a "free" row per replication.
void write_occupancy_csv(std::ostream& out, const Experiment& ex);
/// Inter-burst histogram per station, pooled over replications.
void write_histogram_csv(std::ostream& out, const Experiment& ex);

/// Writes flows.csv, bursts.csv, occupancy.csv and histogram.csv into `dir`, creating it.
void write_all_csv(const std::filesystem::path& dir, const Experiment& ex);

/// Human-readable per-flow table with totals and the fairness index.
void print_summary(std::ostream& out, const Experiment& ex);

/// Fixed six-decimal rendering used by every CSV.
std::string csv_number(double v);

}  // namespace pasim
