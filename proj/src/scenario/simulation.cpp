#include "pasim/scenario/simulation.hpp"

#include <memory>

namespace pasim {

RunResult simulate(const ScenarioConfig& config, std::uint64_t seed, const RunOptions& options) {
    config.validate();
    std::vector<FlowSpec> flows = config.flows;
    if (options.force_rate) {
        for (auto& f : flows) {
            f.rate = *options.force_rate;
            f.arf = false;
            f.link_trace.clear();
        }
    }
    ScenarioConfig effective = config;
    effective.flows = flows;

    Engine engine;
    engine.set_trace(options.event_trace);
    Channel channel(engine, effective.topology());

    std::vector<FlowStats> stats;
    for (std::size_t i = 0; i < flows.size(); ++i) {
        stats.push_back(FlowStats{static_cast<int>(i), flows[i].src, flows[i].dst, flows[i].rate, 0, 0, {}});
    }
    RunCollector collector(std::move(stats), kSimStart + config.warmup, kSimStart + config.duration,
                           options.keep_trace);
    channel.set_air_observer(
        [&collector](const Frame& f, SimTime start, SimTime end) { collector.on_air(f, start, end); });

    std::vector<LinkQualityTrace> traces(flows.size());
    bool any_trace = false;
    for (std::size_t i = 0; i < flows.size(); ++i) {
        if (!flows[i].link_trace.empty()) {
            traces[i] = LinkQualityTrace(flows[i].link_trace);
            any_trace = true;
        }
    }
    if (any_trace) {
        channel.set_link_model([&flows, &traces](const Frame& f, NodeId rx, SimTime start) {
            if (f.kind != FrameKind::Data || f.flow < 0) return true;
            const auto i = static_cast<std::size_t>(f.flow);
            if (traces[i].empty() || flows[i].src != f.src || flows[i].dst != rx) return true;
            return f.rate <= traces[i].max_rate_at(start);
        });
    }

    std::vector<std::unique_ptr<Station>> stations;
    stations.reserve(static_cast<std::size_t>(config.nodes));
    for (NodeId n = 0; n < config.nodes; ++n) {
        stations.push_back(std::make_unique<Station>(n, engine, channel, config.phy, config.mac,
                                                     RngStream(seed, static_cast<std::uint64_t>(n)), &collector));
    }

    std::vector<RngStream> traffic_streams;
    traffic_streams.reserve(flows.size());
    for (std::size_t i = 0; i < flows.size(); ++i) {
        traffic_streams.emplace_back(seed, static_cast<std::uint64_t>(Subsystem::Traffic) + i);
    }
    for (std::size_t i = 0; i < flows.size(); ++i) {
        const FlowSpec& f = flows[i];
        FlowBinding binding;
        binding.flow = static_cast<int>(i);
        binding.dst = f.dst;
        binding.rate = f.rate;
        binding.source = [&effective, &flows, &traffic_streams, i] {
            return mac_payloads(effective, flows[i], next_packet(flows[i].traffic, traffic_streams[i]));
        };
        Station& st = *stations[static_cast<std::size_t>(f.src)];
        st.bind_flow(std::move(binding));
        if (f.arf) st.enable_arf(ArfState(config.phy.rates, f.rate));
    }
    for (auto& st : stations) st->start();

    RunResult result;
    result.seed = seed;
    result.events = engine.run_until(kSimStart + config.duration);
    collector.finish();

    result.flows = collector.flows();
    result.occupancy = collector.occupancy();
    result.bursts = collector.bursts();
    result.bytes_per_second = collector.bytes_per_second();
    if (options.keep_trace) {
        result.data_tx = collector.data_tx();
        result.own_acks = collector.own_acks();
        result.cw_values = collector.cw_values();
    }
    for (const auto& st : stations) result.counters.push_back(st->counters());
    return result;
}

}  // namespace pasim
