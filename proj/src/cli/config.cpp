#include "pasim/cli/config.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <cstdio>
#include <functional>
#include <map>
#include <optional>
#include <set>
#include <sstream>
#include <vector>

namespace pasim {

ConfigError::ConfigError(int line, const std::string& what)
    : std::runtime_error(line > 0 ? "config line " + std::to_string(line) + ": " + what : "config: " + what),
      line_(line) {}

namespace {

std::string_view trim(std::string_view s) {
    const auto b = s.find_first_not_of(" \t\r");
    if (b == std::string_view::npos) return {};
    const auto e = s.find_last_not_of(" \t\r");
    return s.substr(b, e - b + 1);
}

std::vector<std::string_view> words(std::string_view s) {
    std::vector<std::string_view> out;
    std::size_t i = 0;
    while (i < s.size()) {
        while (i < s.size() && (s[i] == ' ' || s[i] == '\t' || s[i] == ',')) ++i;
        const std::size_t b = i;
        while (i < s.size() && s[i] != ' ' && s[i] != '\t' && s[i] != ',') ++i;
        if (i > b) out.push_back(s.substr(b, i - b));
    }
    return out;
}

template <typename T>
std::optional<T> to_int(std::string_view s) {
    T v{};
    const auto [p, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
    if (ec != std::errc{} || p != s.data() + s.size()) return std::nullopt;
    return v;
}

// Decimal megabits per second, at most six fractional digits so the value is an exact bps count.
std::optional<BitRate> to_rate(std::string_view s) {
    const auto dot = s.find('.');
    const auto whole = to_int<std::int64_t>(s.substr(0, dot));
    if (!whole || *whole < 0) return std::nullopt;
    std::int64_t frac = 0;
    if (dot != std::string_view::npos) {
        const auto digits = s.substr(dot + 1);
        if (digits.empty() || digits.size() > 6) return std::nullopt;
        const auto f = to_int<std::int64_t>(digits);
        if (!f || *f < 0) return std::nullopt;
        frac = *f;
        for (std::size_t k = digits.size(); k < 6; ++k) frac *= 10;
    }
    return BitRate{*whole * 1'000'000 + frac};
}

std::string format_rate(BitRate r) {
    std::string s = std::to_string(r.bps / 1'000'000);
    if (const auto frac = r.bps % 1'000'000; frac != 0) {
        char buf[8];
        std::snprintf(buf, sizeof buf, "%06lld", static_cast<long long>(frac));
        std::string f = buf;
        while (f.back() == '0') f.pop_back();
        s += "." + f;
    }
    return s;
}

std::string on_off(bool b) { return b ? "on" : "off"; }

struct Entry {
    std::string value;
    int line;
};

using Table = std::map<std::string, Entry>;

Table tokenize(std::string_view text) {
    Table table;
    std::string section;
    int line_no = 0;
    std::size_t pos = 0;
    while (pos <= text.size()) {
        const auto nl = text.find('\n', pos);
        const auto raw = text.substr(pos, nl == std::string_view::npos ? std::string_view::npos : nl - pos);
        pos = nl == std::string_view::npos ? text.size() + 1 : nl + 1;
        ++line_no;
        const auto line = trim(raw);
        if (line.empty() || line.front() == '#' || line.front() == ';') continue;
        if (line.front() == '[') {
            if (line.back() != ']') throw ConfigError(line_no, "unterminated section header");
            section = std::string(trim(line.substr(1, line.size() - 2)));
            if (section.empty()) throw ConfigError(line_no, "empty section name");
            continue;
        }
        const auto eq = line.find('=');
        if (eq == std::string_view::npos) throw ConfigError(line_no, "expected 'key = value'");
        const auto key = trim(line.substr(0, eq));
        if (key.empty()) throw ConfigError(line_no, "missing key");
        const std::string full = section.empty() ? std::string(key) : section + "." + std::string(key);
        if (table.contains(full)) throw ConfigError(line_no, "duplicate key '" + full + "'");
        table.emplace(full, Entry{std::string(trim(line.substr(eq + 1))), line_no});
    }
    return table;
}

class Reader {
public:
    explicit Reader(Table t) : table_(std::move(t)) {}

    // Runs `apply` on the value of `key` if present; errors raised inside carry the key's line.
    void take(const std::string& key, const std::function<void(std::string_view, int)>& apply) {
        const auto it = table_.find(key);
        if (it == table_.end()) return;
        const Entry e = it->second;
        table_.erase(it);
        apply(e.value, e.line);
    }

    [[nodiscard]] std::set<int> flow_indices() const {
        std::set<int> out;
        for (const auto& [key, e] : table_) {
            if (!key.starts_with("flow.")) continue;
            const auto rest = std::string_view(key).substr(5);
            const auto idx = to_int<int>(rest.substr(0, rest.find('.')));
            if (!idx || *idx < 0 || rest.find('.') == std::string_view::npos) {
                throw ConfigError(e.line, "bad flow section in '" + key + "'");
            }
            out.insert(*idx);
        }
        return out;
    }

    void reject_leftovers() const {
        if (table_.empty()) return;
        const auto first = std::min_element(table_.begin(), table_.end(),
                                            [](const auto& a, const auto& b) { return a.second.line < b.second.line; });
        throw ConfigError(first->second.line, "unknown key '" + first->first + "'");
    }

private:
    Table table_;
};

int int_value(std::string_view v, int line) {
    const auto x = to_int<int>(v);
    if (!x) throw ConfigError(line, "expected an integer, got '" + std::string(v) + "'");
    return *x;
}

bool bool_value(std::string_view v, int line) {
    if (v == "on" || v == "true" || v == "yes") return true;
    if (v == "off" || v == "false" || v == "no") return false;
    throw ConfigError(line, "expected on|off, got '" + std::string(v) + "'");
}

BitRate rate_value(std::string_view v, int line) {
    const auto r = to_rate(v);
    if (!r || r->bps <= 0) throw ConfigError(line, "expected a rate in Mbps, got '" + std::string(v) + "'");
    return *r;
}

Duration duration_value(std::string_view v, int line) {
    try {
        return parse_duration(v);
    } catch (const std::invalid_argument& e) {
        throw ConfigError(line, e.what());
    }
}

std::vector<std::pair<NodeId, NodeId>> pairs_value(std::string_view v, int line) {
    std::vector<std::pair<NodeId, NodeId>> out;
    for (auto w : words(v)) {
        const auto dash = w.find('-');
        const auto a = dash == std::string_view::npos ? std::nullopt : to_int<NodeId>(w.substr(0, dash));
        const auto b = dash == std::string_view::npos ? std::nullopt : to_int<NodeId>(w.substr(dash + 1));
        if (!a || !b) throw ConfigError(line, "expected node pairs like '0-1', got '" + std::string(w) + "'");
        out.emplace_back(*a, *b);
    }
    return out;
}

std::string pairs_text(const std::vector<std::pair<NodeId, NodeId>>& pairs) {
    std::string s;
    for (const auto& [a, b] : pairs) {
        if (!s.empty()) s += ' ';
        s += std::to_string(a) + "-" + std::to_string(b);
    }
    return s;
}

TrafficSpec traffic_value(std::string_view v, int line) {
    const auto dash = v.find('-');
    const auto lo = to_int<int>(v.substr(0, dash));
    const auto hi = dash == std::string_view::npos ? lo : to_int<int>(v.substr(dash + 1));
    if (!lo || !hi) throw ConfigError(line, "expected bytes or 'lo-hi', got '" + std::string(v) + "'");
    return TrafficSpec{*lo, *hi};
}

std::string traffic_text(const TrafficSpec& t) {
    return t.is_fixed() ? std::to_string(t.lo) : std::to_string(t.lo) + "-" + std::to_string(t.hi);
}

// Space-separated "<time>@<Mbps>" steps such as "0s@11 20s@5.5".
std::vector<std::pair<SimTime, BitRate>> trace_value(std::string_view v, int line) {
    std::vector<std::pair<SimTime, BitRate>> out;
    for (auto w : words(v)) {
        const auto at = w.find('@');
        if (at == std::string_view::npos) throw ConfigError(line, "expected '<time>@<rate>', got '" + std::string(w) + "'");
        out.emplace_back(SimTime{duration_value(w.substr(0, at), line)}, rate_value(w.substr(at + 1), line));
    }
    return out;
}

std::string trace_text(const std::vector<std::pair<SimTime, BitRate>>& trace) {
    std::string s;
    for (const auto& [t, r] : trace) {
        if (!s.empty()) s += ' ';
        auto d = format_duration(t.time_since_epoch());
        d.erase(d.find(' '), 1);
        s += d + "@" + format_rate(r);
    }
    return s;
}

}  // namespace

std::string format_duration(Duration d) {
    const auto n = d.count();
    if (n != 0 && n % 1'000'000'000 == 0) return std::to_string(n / 1'000'000'000) + " s";
    if (n != 0 && n % 1'000'000 == 0) return std::to_string(n / 1'000'000) + " ms";
    if (n % 1'000 == 0) return std::to_string(n / 1'000) + " us";
    return std::to_string(n) + " ns";
}

Duration parse_duration(std::string_view text) {
    text = trim(text);
    std::size_t split = 0;
    while (split < text.size() && (std::isdigit(static_cast<unsigned char>(text[split])) || (split == 0 && text[0] == '-'))) {
        ++split;
    }
    const auto n = to_int<std::int64_t>(text.substr(0, split));
    const auto unit = trim(text.substr(split));
    if (!n) throw std::invalid_argument("expected a duration like '60 s', got '" + std::string(text) + "'");
    if (unit == "s") return seconds(*n);
    if (unit == "ms") return milliseconds(*n);
    if (unit == "us") return microseconds(*n);
    if (unit == "ns") return nanoseconds(*n);
    throw std::invalid_argument("duration unit must be s, ms, us or ns in '" + std::string(text) + "'");
}

ScenarioConfig parse_config(std::string_view text) {
    Reader in(tokenize(text));
    ScenarioConfig c;

    in.take("name", [&](auto v, int line) {
        if (v.empty()) throw ConfigError(line, "empty name");
        c.name = std::string(v);
    });
    in.take("description", [&](auto v, int) { c.description = std::string(v); });
    in.take("nodes", [&](auto v, int line) { c.nodes = int_value(v, line); });
    in.take("sense_only", [&](auto v, int line) { c.sense_only = pairs_value(v, line); });
    in.take("disconnected", [&](auto v, int line) { c.disconnected = pairs_value(v, line); });
    in.take("duration", [&](auto v, int line) { c.duration = duration_value(v, line); });
    in.take("warmup", [&](auto v, int line) { c.warmup = duration_value(v, line); });
    in.take("replications", [&](auto v, int line) { c.replications = int_value(v, line); });
    in.take("seed", [&](auto v, int line) {
        const auto s = to_int<std::uint64_t>(v);
        if (!s) throw ConfigError(line, "expected an unsigned seed, got '" + std::string(v) + "'");
        c.seed = *s;
    });
    in.take("histogram_bin", [&](auto v, int line) { c.histogram_bin = duration_value(v, line); });
    in.take("mtu", [&](auto v, int line) { c.mtu = int_value(v, line); });

    in.take("mac", [&](auto v, int line) {
        const auto k = parse_mac_kind(v);
        if (!k) throw ConfigError(line, "unknown mac '" + std::string(v) + "'");
        c.mac.kind = *k;
    });
    in.take("mac.eifs", [&](auto v, int line) { c.mac.eifs = bool_value(v, line); });
    in.take("mac.cw_reference_rate", [&](auto v, int line) { c.mac.cw_reference_rate = rate_value(v, line); });
    in.take("pas.alpha", [&](auto v, int line) { c.mac.pas.alpha = bool_value(v, line); });
    in.take("pas.t_rate", [&](auto v, int line) { c.mac.pas.t_rate = bool_value(v, line); });
    in.take("pas.rts_threshold", [&](auto v, int line) {
        if (v == "off") {
            c.mac.rts_threshold.reset();
        } else {
            c.mac.rts_threshold = int_value(v, line);
        }
    });
    in.take("pas.fixed_t_p_max", [&](auto v, int line) {
        if (v == "off") {
            c.mac.pas.fixed_t_p_max.reset();
        } else {
            c.mac.pas.fixed_t_p_max = duration_value(v, line);
        }
    });

    in.take("phy.slot_time", [&](auto v, int line) { c.phy.slot_time = duration_value(v, line); });
    in.take("phy.sifs", [&](auto v, int line) { c.phy.sifs = duration_value(v, line); });
    in.take("phy.difs", [&](auto v, int line) { c.phy.difs = duration_value(v, line); });
    in.take("phy.plcp_overhead", [&](auto v, int line) { c.phy.plcp_overhead = duration_value(v, line); });
    in.take("phy.mac_overhead_bytes", [&](auto v, int line) { c.phy.mac_overhead_bytes = int_value(v, line); });
    in.take("phy.ack_bytes", [&](auto v, int line) { c.phy.ack_bytes = int_value(v, line); });
    in.take("phy.rts_bytes", [&](auto v, int line) { c.phy.rts_bytes = int_value(v, line); });
    in.take("phy.cts_bytes", [&](auto v, int line) { c.phy.cts_bytes = int_value(v, line); });
    in.take("phy.control_rate", [&](auto v, int line) { c.phy.control_rate = rate_value(v, line); });
    in.take("phy.cw_min", [&](auto v, int line) { c.phy.cw_min = int_value(v, line); });
    in.take("phy.cw_max", [&](auto v, int line) { c.phy.cw_max = int_value(v, line); });
    in.take("phy.retry_limit", [&](auto v, int line) { c.phy.retry_limit = int_value(v, line); });
    in.take("phy.rates", [&](auto v, int line) {
        c.phy.rates.clear();
        for (auto w : words(v)) c.phy.rates.push_back(rate_value(w, line));
    });

    const auto indices = in.flow_indices();
    int expected = 0;
    for (int idx : indices) {
        if (idx != expected++) throw ConfigError(0, "flow sections must be numbered 0, 1, 2, ... without gaps");
        const std::string p = "flow." + std::to_string(idx) + ".";
        FlowSpec f;
        bool has_src = false;
        bool has_dst = false;
        bool has_rate = false;
        in.take(p + "src", [&](auto v, int line) {
            f.src = int_value(v, line);
            has_src = true;
        });
        in.take(p + "dst", [&](auto v, int line) {
            f.dst = int_value(v, line);
            has_dst = true;
        });
        in.take(p + "rate", [&](auto v, int line) {
            f.rate = rate_value(v, line);
            has_rate = true;
        });
        in.take(p + "traffic", [&](auto v, int line) { f.traffic = traffic_value(v, line); });
        in.take(p + "arf", [&](auto v, int line) { f.arf = bool_value(v, line); });
        in.take(p + "link_trace", [&](auto v, int line) { f.link_trace = trace_value(v, line); });
        if (!has_src || !has_dst || !has_rate) {
            throw ConfigError(0, "flow " + std::to_string(idx) + " needs src, dst and rate");
        }
        c.flows.push_back(std::move(f));
    }
    in.reject_leftovers();

    try {
        c.validate();
    } catch (const std::invalid_argument& e) {
        throw ConfigError(0, e.what());
    }
    return c;
}

std::string serialize_config(const ScenarioConfig& c) {
    std::ostringstream out;
    out << "name = " << c.name << "\n";
    out << "description = " << c.description << "\n";
    out << "nodes = " << c.nodes << "\n";
    out << "sense_only = " << pairs_text(c.sense_only) << "\n";
    out << "disconnected = " << pairs_text(c.disconnected) << "\n";
    out << "duration = " << format_duration(c.duration) << "\n";
    out << "warmup = " << format_duration(c.warmup) << "\n";
    out << "replications = " << c.replications << "\n";
    out << "seed = " << c.seed << "\n";
    out << "histogram_bin = " << format_duration(c.histogram_bin) << "\n";
    out << "mtu = " << c.mtu << "\n";
    out << "mac = " << to_string(c.mac.kind) << "\n";

    out << "\n[mac]\n";
    out << "eifs = " << on_off(c.mac.eifs) << "\n";
    out << "cw_reference_rate = " << format_rate(c.mac.cw_reference_rate) << "\n";

    out << "\n[pas]\n";
    out << "alpha = " << on_off(c.mac.pas.alpha) << "\n";
    out << "t_rate = " << on_off(c.mac.pas.t_rate) << "\n";
    out << "rts_threshold = " << (c.mac.rts_threshold ? std::to_string(*c.mac.rts_threshold) : "off") << "\n";
    out << "fixed_t_p_max = " << (c.mac.pas.fixed_t_p_max ? format_duration(*c.mac.pas.fixed_t_p_max) : "off")
        << "\n";

    out << "\n[phy]\n";
    out << "slot_time = " << format_duration(c.phy.slot_time) << "\n";
    out << "sifs = " << format_duration(c.phy.sifs) << "\n";
    out << "difs = " << format_duration(c.phy.difs) << "\n";
    out << "plcp_overhead = " << format_duration(c.phy.plcp_overhead) << "\n";
    out << "mac_overhead_bytes = " << c.phy.mac_overhead_bytes << "\n";
    out << "ack_bytes = " << c.phy.ack_bytes << "\n";
    out << "rts_bytes = " << c.phy.rts_bytes << "\n";
    out << "cts_bytes = " << c.phy.cts_bytes << "\n";
    out << "control_rate = " << format_rate(c.phy.control_rate) << "\n";
    out << "cw_min = " << c.phy.cw_min << "\n";
    out << "cw_max = " << c.phy.cw_max << "\n";
    out << "retry_limit = " << c.phy.retry_limit << "\n";
    out << "rates =";
    for (const auto& r : c.phy.rates) out << " " << format_rate(r);
    out << "\n";

    for (std::size_t i = 0; i < c.flows.size(); ++i) {
        const auto& f = c.flows[i];
        out << "\n[flow." << i << "]\n";
        out << "src = " << f.src << "\n";
        out << "dst = " << f.dst << "\n";
        out << "rate = " << format_rate(f.rate) << "\n";
        out << "traffic = " << traffic_text(f.traffic) << "\n";
        out << "arf = " << on_off(f.arf) << "\n";
        out << "link_trace = " << trace_text(f.link_trace) << "\n";
    }
    std::string text = out.str();
    for (auto at = text.find(" = \n"); at != std::string::npos; at = text.find(" = \n", at)) text.erase(at + 2, 1);
    return text;
}

ScenarioConfig with_overrides(const ScenarioConfig& config, const std::vector<Override>& overrides) {
    std::istringstream in(serialize_config(config));
    std::ostringstream out;
    std::string section;
    std::string line;
    std::vector<bool> found(overrides.size(), false);
    while (std::getline(in, line)) {
        const auto t = trim(line);
        if (!t.empty() && t.front() == '[') {
            section = std::string(t.substr(1, t.size() - 2));
        } else if (const auto eq = t.find('='); eq != std::string_view::npos) {
            const auto k = std::string(trim(t.substr(0, eq)));
            const std::string full = section.empty() ? k : section + "." + k;
            // Later overrides of the same key win.
            for (std::size_t i = 0; i < overrides.size(); ++i) {
                if (full != overrides[i].key) continue;
                line = k + " = " + std::string(trim(overrides[i].value));
                found[i] = true;
            }
        }
        out << line << "\n";
    }
    for (std::size_t i = 0; i < overrides.size(); ++i) {
        if (!found[i]) throw ConfigError(0, "unknown key '" + overrides[i].key + "'");
    }
    return parse_config(out.str());
}

ScenarioConfig with_override(const ScenarioConfig& config, std::string_view key, std::string_view value) {
    return with_overrides(config, {Override{std::string(key), std::string(value)}});
}

std::string config_hash(const ScenarioConfig& config) {
    std::uint64_t h = 0xcbf29ce484222325ULL;
    for (const unsigned char ch : serialize_config(config)) {
        h ^= ch;
        h *= 0x100000001b3ULL;
    }
    char buf[17];
    std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
    return buf;
}

}  // namespace pasim
