#pragma once

#include <functional>
#include <vector>

#include "pasim/metrics/report.hpp"
#include "pasim/scenario/simulation.hpp"

namespace pasim {

struct ExperimentOptions {
    /// Worker threads for independent replications; results do not depend on it.
    int jobs = 1;
    bool keep_trace = false;
    /// Auxiliary runs for the measured fairness index.
    bool reference_runs = true;
};

struct Experiment {
    ScenarioConfig config;
    std::vector<RunResult> runs;
    ThroughputReport report;
};

/// Seeds for the configured replications, derived from the master seed.
std::vector<std::uint64_t> replication_seeds(const ScenarioConfig& config);

/// Runs `jobs` workers over [0, count); each index is handled exactly once.
void parallel_for(int count, int jobs, const std::function<void(int)>& body);

/// All replications plus, when requested, the reference runs behind the measured Jain index.
Experiment run_experiment(const ScenarioConfig& config, const ExperimentOptions& options = {});

}  // namespace pasim
