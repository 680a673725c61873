#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "pasim/scenario/scenario.hpp"

namespace pasim {

/// Malformed or unknown configuration entry. `line()` is 1-based, 0 when the
/// problem is not tied to a single line (for example a missing flow field).
class ConfigError : public std::runtime_error {
public:
    ConfigError(int line, const std::string& what);
    [[nodiscard]] int line() const { return line_; }

private:
    int line_;
};

/// Parses the `key = value` / `[section]` format. Unknown keys, duplicate keys
/// and bad values are errors; omitted keys take the ScenarioConfig defaults.
ScenarioConfig parse_config(std::string_view text);

/// Canonical text: every key, fixed order, `parse_config(serialize_config(c)) == c`.
std::string serialize_config(const ScenarioConfig& config);

struct Override {
    std::string key;  // flattened `section.key` form
    std::string value;
};

/// Copy of `config` with the given keys replaced, validated once after all of them apply.
/// Throws ConfigError for keys the canonical text does not contain.
ScenarioConfig with_overrides(const ScenarioConfig& config, const std::vector<Override>& overrides);
ScenarioConfig with_override(const ScenarioConfig& config, std::string_view key, std::string_view value);

/// FNV-1a 64 of the canonical text, as 16 hex digits.
std::string config_hash(const ScenarioConfig& config);

/// "60 s", "8000 us", "1500 ns": the largest unit that represents `d` exactly.
std::string format_duration(Duration d);
/// Accepts an integer with unit s, ms, us or ns.
Duration parse_duration(std::string_view text);

}  // namespace pasim
