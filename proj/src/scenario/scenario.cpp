#include "pasim/scenario/scenario.hpp"

#include <algorithm>
#include <functional>
#include <map>
#include <set>
#include <stdexcept>
#include <string>

#include "pasim/baselines/baselines.hpp"

namespace pasim {

void TrafficSpec::validate() const {
    if (lo <= 0 || hi < lo) throw std::invalid_argument("traffic: need 0 < lo <= hi");
}

int next_packet(const TrafficSpec& spec, RngStream& stream) {
    if (spec.is_fixed()) return spec.lo;
    return static_cast<int>(stream.uniform_int(spec.lo, spec.hi));
}

Topology ScenarioConfig::topology() const {
    Topology t = Topology::fully_connected(nodes);
    for (const auto& [a, b] : sense_only) t.sense_only(a, b);
    for (const auto& [a, b] : disconnected) t.disconnect(a, b);
    return t;
}

void ScenarioConfig::validate() const {
    const auto fail = [this](const std::string& what) {
        throw std::invalid_argument("scenario " + name + ": " + what);
    };
    if (nodes < 2) fail("needs at least two nodes");
    phy.validate();
    const auto in_range = [this](NodeId n) { return n >= 0 && n < nodes; };
    for (const auto& [a, b] : sense_only) {
        if (!in_range(a) || !in_range(b) || a == b) fail("bad sense_only pair");
    }
    for (const auto& [a, b] : disconnected) {
        if (!in_range(a) || !in_range(b) || a == b) fail("bad disconnected pair");
    }
    if (flows.empty()) fail("no flows");
    std::set<NodeId> senders;
    for (const auto& f : flows) {
        if (!in_range(f.src) || !in_range(f.dst) || f.src == f.dst) fail("bad flow endpoints");
        if (!senders.insert(f.src).second) fail("node " + std::to_string(f.src) + " carries two flows");
        if (!phy.supports(f.rate)) fail("unsupported rate " + rate_label(f.rate));
        f.traffic.validate();
        if (!std::is_sorted(f.link_trace.begin(), f.link_trace.end(),
                            [](const auto& x, const auto& y) { return x.first < y.first; })) {
            fail("link trace must be sorted by time");
        }
        for (const auto& [at, r] : f.link_trace) {
            if (!phy.supports(r)) fail("unsupported link-trace rate " + rate_label(r));
        }
    }
    if (duration <= warmup) fail("duration must exceed warmup");
    if (warmup < Duration::zero()) fail("negative warmup");
    if (replications < 1) fail("replications must be at least 1");
    if (histogram_bin <= Duration::zero()) fail("histogram bin must be positive");
    if (mac.rts_threshold && *mac.rts_threshold < 0) fail("negative RTS threshold");
    if (mac.kind == MacKind::FixedTxop && !mac.pas.fixed_t_p_max) fail("fixed_txop needs a budget");
    if (mac.kind == MacKind::PacketDivision && mtu <= 0) fail("mtu must be positive");
}

std::vector<int> mac_payloads(const ScenarioConfig& config, const FlowSpec& flow, int packet_bytes) {
    if (config.mac.kind != MacKind::PacketDivision) return {packet_bytes};
    BitRate top = flow.rate;
    for (const auto& f : config.flows) top = std::max(top, f.rate);
    const int fragment = fragment_size(flow.rate, config.mtu, top, config.phy);
    return split_packet(packet_bytes, fragment);
}

namespace {

// Independent sender/receiver pairs 2k -> 2k+1, all within range of each other.
ScenarioConfig pairs(std::string name, std::string description, const std::vector<BitRate>& rates,
                     TrafficSpec traffic = TrafficSpec::fixed(1000)) {
    ScenarioConfig c;
    c.name = std::move(name);
    c.description = std::move(description);
    c.nodes = static_cast<int>(2 * rates.size());
    for (std::size_t k = 0; k < rates.size(); ++k) {
        FlowSpec f;
        f.src = static_cast<NodeId>(2 * k);
        f.dst = static_cast<NodeId>(2 * k + 1);
        f.rate = rates[k];
        f.traffic = traffic;
        c.flows.push_back(f);
    }
    c.mac.kind = MacKind::Pas;
    return c;
}

// Two senders 0 and 1 that cannot hear each other, both sending to node 2.
ScenarioConfig hidden(std::string name, std::string description, BitRate a, BitRate b, TrafficSpec traffic,
                      int rts_threshold) {
    ScenarioConfig c;
    c.name = std::move(name);
    c.description = std::move(description);
    c.nodes = 3;
    c.disconnected = {{0, 1}};
    c.flows = {FlowSpec{0, 2, a, traffic, false, {}}, FlowSpec{1, 2, b, traffic, false, {}}};
    c.mac.kind = MacKind::Pas;
    c.mac.rts_threshold = rts_threshold;
    return c;
}

using Builder = std::function<ScenarioConfig()>;

struct Entry {
    std::string name;
    std::string description;
    Builder build;
};

const std::vector<Entry>& entries() {
    static const std::vector<Entry> all = [] {
        std::vector<Entry> v;
        const auto add = [&v](ScenarioConfig proto) {
            std::string n = proto.name;
            std::string d = proto.description;
            v.push_back(Entry{n, d, [proto] { return proto; }});
        };

        add(pairs("validation_11_11", "two 11 Mbps senders, 1000 B", {mbps(11), mbps(11)}));
        for (double x : {1.0, 2.0, 5.5}) {
            const std::string label = rate_label(mbps(x));
            add(pairs("two_station_" + label + "_11", label + " Mbps and 11 Mbps senders, 1000 B", {mbps(x), mbps(11)}));
        }
        add(pairs("four_station_1_2_5.5_11", "four senders at 1, 2, 5.5 and 11 Mbps",
                  {mbps(1), mbps(2), mbps(5.5), mbps(11)}));
        add(pairs("four_station_1_1_1_11", "three 1 Mbps senders and one 11 Mbps sender",
                  {mbps(1), mbps(1), mbps(1), mbps(11)}));
        add(pairs("four_station_1_1_5.5_11", "senders at 1, 1, 5.5 and 11 Mbps",
                  {mbps(1), mbps(1), mbps(5.5), mbps(11)}));
        add(pairs("uniform_5.5_11", "5.5 and 11 Mbps senders, sizes uniform in [550, 1450] B",
                  {mbps(5.5), mbps(11)}, TrafficSpec::uniform(550, 1450)));
        {
            ScenarioConfig c = pairs("small_packets", "11 Mbps sender of 100 B packets against 5.5 Mbps at 1000 B",
                                     {mbps(11), mbps(5.5)});
            c.flows[0].traffic = TrafficSpec::fixed(100);
            add(c);
        }
        {
            ScenarioConfig c = pairs("cw_adapt", "contention windows scaled by 11 Mbps / rate, uniform sizes",
                                     {mbps(5.5), mbps(11)}, TrafficSpec::uniform(550, 1450));
            c.mac.kind = MacKind::CwAdapt;
            add(c);
        }
        {
            ScenarioConfig c = pairs("packet_division", "1500 B packets fragmented to match the 11 Mbps airtime",
                                     {mbps(5.5), mbps(11)}, TrafficSpec::fixed(1500));
            c.mac.kind = MacKind::PacketDivision;
            add(c);
        }
        add(pairs("pas_1500", "5.5 and 11 Mbps senders, 1500 B", {mbps(5.5), mbps(11)}, TrafficSpec::fixed(1500)));
        {
            ScenarioConfig c = pairs("fixed_txop", "fixed 8000 us occupancy budget, uniform sizes",
                                     {mbps(5.5), mbps(11)}, TrafficSpec::uniform(550, 1450));
            c.mac.kind = MacKind::FixedTxop;
            c.mac.pas = fixed_txop_options(microseconds(8000));
            add(c);
        }
        {
            // 0->1 and 4->5 are the outer pairs, 2->3 the central pair that senses both.
            ScenarioConfig c = pairs("three_pairs", "outer 2 Mbps pairs unaware of each other, central 11 Mbps pair",
                                     {mbps(2), mbps(11), mbps(2)});
            for (NodeId centre : {2, 3}) {
                for (NodeId outer : {0, 1, 4, 5}) c.sense_only.emplace_back(centre, outer);
            }
            for (NodeId a : {0, 1}) {
                for (NodeId b : {4, 5}) c.disconnected.emplace_back(a, b);
            }
            add(c);
        }
        for (double x : {1.0, 2.0, 5.5, 11.0}) {
            const std::string label = rate_label(mbps(x));
            add(hidden("hidden_pair_" + label + "_11",
                       "hidden " + label + " Mbps and 11 Mbps senders to one receiver, RTS/CTS above 200 B", mbps(x),
                       mbps(11), TrafficSpec::fixed(1000), 200));
        }
        add(hidden("hidden_uniform_1_11", "hidden 1 and 11 Mbps senders, uniform sizes, RTS/CTS above 1000 B",
                   mbps(1), mbps(11), TrafficSpec::uniform(550, 1450), 1000));
        {
            ScenarioConfig c = pairs("arf_walkaway", "ARF senders; the second one's link degrades 11 -> 5.5 -> 2 -> 1",
                                     {mbps(11), mbps(11)});
            for (auto& f : c.flows) f.arf = true;
            c.flows[1].link_trace = {{at_ns(0), mbps(11)},
                                     {SimTime{seconds(20)}, mbps(5.5)},
                                     {SimTime{seconds(35)}, mbps(2)},
                                     {SimTime{seconds(50)}, mbps(1)}};
            c.duration = seconds(65);
            add(c);
        }
        {
            ScenarioConfig c = pairs("delay_1_11", "1 and 11 Mbps senders over 20 s, for inter-burst delays",
                                     {mbps(1), mbps(11)});
            c.duration = seconds(25);
            add(c);
        }
        return v;
    }();
    return all;
}

}  // namespace

const std::vector<CatalogEntry>& scenario_catalog() {
    static const std::vector<CatalogEntry> cat = [] {
        std::vector<CatalogEntry> out;
        for (const auto& e : entries()) out.push_back(CatalogEntry{e.name, e.description});
        return out;
    }();
    return cat;
}

ScenarioConfig build_scenario(std::string_view name) {
    for (const auto& e : entries()) {
        if (e.name == name) {
            ScenarioConfig c = e.build();
            c.validate();
            return c;
        }
    }
    throw std::invalid_argument("unknown scenario '" + std::string(name) + "'");
}

}  // namespace pasim
