#include <CLI11.hpp>

#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>

#include "pasim/analytic/model.hpp"
#include "pasim/cli/config.hpp"
#include "pasim/cli/experiment.hpp"
#include "pasim/cli/output.hpp"

#ifndef PASIM_CONFIG_DIR
#define PASIM_CONFIG_DIR "configs"
#endif

namespace fs = std::filesystem;
using namespace pasim;

namespace {

std::string read_file(const fs::path& p) {
    std::ifstream in(p, std::ios::binary);
    if (!in) throw std::runtime_error("cannot read " + p.string());
    std::ostringstream s;
    s << in.rdbuf();
    return s.str();
}

ScenarioConfig load_config(const fs::path& p) {
    try {
        return parse_config(read_file(p));
    } catch (const ConfigError& e) {
        throw std::runtime_error(p.string() + ": " + e.what());
    }
}

// A config file path, a path under the shipped configs directory (".cfg" optional), or a catalog name.
ScenarioConfig resolve(const std::string& target) {
    for (const fs::path& base : {fs::path{}, fs::path{PASIM_CONFIG_DIR}}) {
        for (const std::string& ext : {std::string{}, std::string{".cfg"}}) {
            const fs::path p = base / (target + ext);
            if (fs::is_regular_file(p)) return load_config(p);
        }
    }
    return build_scenario(target);
}

struct Overrides {
    std::string mac;
    std::optional<std::uint64_t> seed;
    std::optional<int> reps;
    std::vector<std::string> sets;

    void add_to(CLI::App* cmd) {
        cmd->add_option("--mac", mac, "dcf, pas, cw_adapt, packet_division or fixed_txop");
        cmd->add_option("--seed", seed, "master seed");
        cmd->add_option("--reps", reps, "replications")->check(CLI::PositiveNumber);
        cmd->add_option("--set", sets, "override a config key, e.g. --set pas.alpha=off")->take_all();
    }

    [[nodiscard]] ScenarioConfig apply(ScenarioConfig c) const {
        if (seed) c.seed = *seed;
        if (reps) c.replications = *reps;
        std::vector<Override> edits;
        if (!mac.empty()) edits.push_back({"mac", mac});
        for (const auto& s : sets) {
            const auto eq = s.find('=');
            if (eq == std::string::npos) throw std::runtime_error("--set expects key=value, got '" + s + "'");
            edits.push_back({s.substr(0, eq), s.substr(eq + 1)});
        }
        if (!edits.empty()) c = with_overrides(c, edits);
        c.validate();
        return c;
    }
};

std::vector<std::string> split_list(const std::string& s) {
    std::vector<std::string> out;
    std::string cur;
    std::istringstream in(s);
    while (std::getline(in, cur, ',')) {
        if (!cur.empty()) out.push_back(cur);
    }
    return out;
}

// "dcf", "pas", ... plus the PAS ablations "pas-no-alpha" and "pas-no-t_rate".
ScenarioConfig with_variant(ScenarioConfig c, const std::string& variant) {
    if (variant == "pas-no-alpha") return with_overrides(c, {{"mac", "pas"}, {"pas.alpha", "off"}});
    if (variant == "pas-no-t_rate") return with_overrides(c, {{"mac", "pas"}, {"pas.t_rate", "off"}});
    return with_override(c, "mac", variant);
}

int list_scenarios() {
    for (const auto& e : scenario_catalog()) std::cout << e.name << "  " << e.description << "\n";
    return 0;
}

int run_command(const std::string& target, const Overrides& ov, const std::string& out_dir, int jobs) {
    const ScenarioConfig c = ov.apply(resolve(target));
    ExperimentOptions opt;
    opt.jobs = jobs;
    const Experiment ex = run_experiment(c, opt);
    print_summary(std::cout, ex);
    if (!out_dir.empty()) {
        write_all_csv(out_dir, ex);
        std::ofstream(fs::path(out_dir) / "config.cfg", std::ios::binary) << serialize_config(c);
    }
    return 0;
}

int sweep_command(const std::string& target, const Overrides& ov, const std::string& axis,
                  const std::string& values, const std::string& macs, const std::string& out_file, int jobs) {
    const ScenarioConfig base = ov.apply(resolve(target));
    std::ofstream file;
    if (!out_file.empty()) {
        file.open(out_file, std::ios::binary);
        if (!file) throw std::runtime_error("cannot write " + out_file);
    }
    std::ostream& out = out_file.empty() ? std::cout : file;
    out << "config_hash,seed,scenario,axis,value,mac,station,rate,kbps,ci_lo,ci_hi,pkts_s,total_kbps,jain\n";
    const auto variants = macs.empty() ? std::vector<std::string>{std::string(to_string(base.mac.kind))}
                                       : split_list(macs);
    for (const auto& value : split_list(values)) {
        for (const auto& variant : variants) {
            const ScenarioConfig c = with_variant(with_override(base, axis, value), variant);
            ExperimentOptions opt;
            opt.jobs = jobs;
            const Experiment ex = run_experiment(c, opt);
            for (const auto& f : ex.report.flows) {
                out << config_hash(c) << "," << c.seed << "," << c.name << "," << axis << "," << value << "," << variant
                    << "," << f.src << "," << rate_label(f.rate) << "," << csv_number(f.kbps.mean) << ","
                    << csv_number(f.kbps.lo()) << "," << csv_number(f.kbps.hi()) << ","
                    << csv_number(f.packets_per_s.mean) << "," << csv_number(ex.report.total_kbps.mean) << ","
                    << (ex.report.jain ? csv_number(*ex.report.jain) : "") << "\n";
            }
            std::cerr << "sweep " << axis << "=" << value << " " << variant << " done\n";
        }
    }
    return 0;
}

int analytic_command(const std::vector<std::string>& mixes, int bytes, bool plcp, bool continuous) {
    std::cout << "mix,rate,count,kbps,pkt_s,index\n";
    for (const auto& mix : mixes) {
        analytic::ModelInput in;
        in.packet_bytes = bytes;
        in.t_includes_plcp = plcp;
        in.count_mode = continuous ? analytic::AggregationCount::Continuous : analytic::AggregationCount::AlphaRounded;
        for (const auto& r : split_list(mix)) {
            std::size_t used = 0;
            const double v = std::stod(r, &used);
            if (used != r.size()) throw std::runtime_error("bad rate '" + r + "'");
            in.stations.push_back(analytic::RateGroup{mbps(v), 1});
        }
        const auto out = analytic::evaluate(in);
        std::string label = mix;
        for (char& ch : label) ch = ch == ',' ? '/' : ch;
        for (const auto& g : out.groups) {
            std::cout << label << "," << rate_label(g.rate) << "," << g.count << "," << csv_number(g.throughput_bps / 1e3)
                      << "," << csv_number(g.packets_per_s) << "," << csv_number(out.jain) << "\n";
        }
    }
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Discrete-event simulator for multi-rate 802.11 DCF with occupancy-based aggregation"};
    app.require_subcommand(1);

    app.add_subcommand("list-scenarios", "list the built-in scenarios");

    auto* show = app.add_subcommand("show-config", "print the canonical config of a scenario or config file");
    std::string show_target;
    Overrides show_ov;
    show->add_option("target", show_target, "config file or scenario name")->required();
    show_ov.add_to(show);

    auto* run = app.add_subcommand("run", "run all replications and write CSVs");
    std::string run_target;
    std::string out_dir;
    int jobs = 1;
    Overrides run_ov;
    run->add_option("target", run_target, "config file or scenario name")->required();
    run->add_option("--out", out_dir, "directory for the CSV files");
    run->add_option("--jobs", jobs, "worker threads")->check(CLI::PositiveNumber);
    run_ov.add_to(run);

    auto* sweep = app.add_subcommand("sweep", "vary one config key and emit a long-form CSV");
    std::string sweep_target;
    std::string axis;
    std::string values;
    std::string macs;
    std::string sweep_out;
    Overrides sweep_ov;
    sweep->add_option("target", sweep_target, "config file or scenario name")->required();
    sweep->add_option("--axis", axis, "config key, e.g. flow.0.traffic")->required();
    sweep->add_option("--values", values, "comma-separated values")->required();
    sweep->add_option("--macs", macs, "comma-separated MAC variants (pas-no-alpha and pas-no-t_rate allowed)");
    sweep->add_option("--out", sweep_out, "CSV file (default stdout)");
    sweep->add_option("--jobs", jobs, "worker threads")->check(CLI::PositiveNumber);
    sweep_ov.add_to(sweep);

    auto* ana = app.add_subcommand("analytic", "closed-form throughput and fairness per rate mix");
    std::vector<std::string> mixes{"5.5,11", "2,11", "1,11"};
    int bytes = 1000;
    bool plcp = false;
    bool continuous = false;
    ana->add_option("--mix", mixes, "comma-separated rates in Mbps, one station each; repeatable");
    ana->add_option("--bytes", bytes, "packet payload size")->check(CLI::PositiveNumber);
    ana->add_flag("--plcp", plcp, "include the PLCP header in packet times");
    ana->add_flag("--continuous", continuous, "fractional packets per access instead of whole packets");

    CLI11_PARSE(app, argc, argv);

    try {
        if (app.got_subcommand("list-scenarios")) return list_scenarios();
        if (show->parsed()) {
            std::cout << serialize_config(show_ov.apply(resolve(show_target)));
            return 0;
        }
        if (run->parsed()) return run_command(run_target, run_ov, out_dir, jobs);
        if (sweep->parsed()) return sweep_command(sweep_target, sweep_ov, axis, values, macs, sweep_out, jobs);
        if (ana->parsed()) return analytic_command(mixes, bytes, plcp, continuous);
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 0;
}
