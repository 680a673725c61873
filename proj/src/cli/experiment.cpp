#include "pasim/cli/experiment.hpp"

#include <algorithm>
#include <atomic>
#include <exception>
#include <map>
#include <mutex>
#include <stdexcept>
#include <thread>

namespace pasim {

std::vector<std::uint64_t> replication_seeds(const ScenarioConfig& config) {
    std::vector<std::uint64_t> seeds;
    for (int r = 0; r < config.replications; ++r) seeds.push_back(replication_seed(config.seed, r));
    return seeds;
}

void parallel_for(int count, int jobs, const std::function<void(int)>& body) {
    jobs = std::clamp(jobs, 1, std::max(1, count));
    if (jobs == 1) {
        for (int i = 0; i < count; ++i) body(i);
        return;
    }
    std::atomic<int> next{0};
    std::exception_ptr error;
    std::mutex error_mutex;
    std::vector<std::thread> workers;
    for (int w = 0; w < jobs; ++w) {
        workers.emplace_back([&] {
            for (int i = next++; i < count; i = next++) {
                try {
                    body(i);
                } catch (...) {
                    const std::lock_guard lock(error_mutex);
                    if (!error) error = std::current_exception();
                }
            }
        });
    }
    for (auto& t : workers) t.join();
    if (error) std::rethrow_exception(error);
}

namespace {

std::vector<RunResult> run_all(const ScenarioConfig& config, const RunOptions& options, int jobs) {
    const auto seeds = replication_seeds(config);
    std::vector<RunResult> runs(seeds.size());
    parallel_for(static_cast<int>(seeds.size()), jobs,
                 [&](int i) { runs[static_cast<std::size_t>(i)] = simulate(config, seeds[static_cast<std::size_t>(i)], options); });
    return runs;
}

std::vector<double> mean_flow_kbps(const std::vector<RunResult>& runs) {
    std::vector<double> mean(runs.front().flows.size(), 0.0);
    for (const auto& r : runs) {
        for (std::size_t f = 0; f < r.flows.size(); ++f) mean[f] += r.flows[f].throughput_bps() / 1e3;
    }
    for (double& m : mean) m /= static_cast<double>(runs.size());
    return mean;
}

}  // namespace

Experiment run_experiment(const ScenarioConfig& config, const ExperimentOptions& options) {
    config.validate();
    Experiment ex;
    ex.config = config;
    RunOptions ro;
    ro.keep_trace = options.keep_trace;
    ex.runs = run_all(config, ro, options.jobs);

    std::vector<std::vector<FlowStats>> flows;
    std::vector<Occupancy> occ;
    for (const auto& r : ex.runs) {
        flows.push_back(r.flows);
        occ.push_back(r.occupancy);
    }
    ex.report = throughput_report(flows, occ);
    if (!options.reference_runs) return ex;

    // r*_i: flow i's throughput when every flow sends at rate_i, with the same seeds.
    std::map<std::int64_t, std::vector<double>> reference;
    for (const auto& f : config.flows) {
        if (reference.contains(f.rate.bps)) continue;
        const bool identical = std::all_of(config.flows.begin(), config.flows.end(), [&](const FlowSpec& g) {
            return g.rate == f.rate && !g.arf && g.link_trace.empty();
        });
        if (identical) {
            reference[f.rate.bps] = mean_flow_kbps(ex.runs);
            continue;
        }
        RunOptions forced;
        forced.force_rate = f.rate;
        reference[f.rate.bps] = mean_flow_kbps(run_all(config, forced, options.jobs));
    }
    for (std::size_t i = 0; i < ex.report.flows.size(); ++i) {
        ex.report.flows[i].reference_kbps = reference.at(config.flows[i].rate.bps)[i];
    }
    ex.report.jain = measured_jain(ex.report);
    return ex;
}

}  // namespace pasim
