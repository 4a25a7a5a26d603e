#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "evacsim/health.hpp"
#include "evacsim/world.hpp"

namespace evacsim {

/// Full description of one simulation run (minus the seed).  Defaults are the
/// baseline square scenario; a config file only has to name the population.
struct ScenarioConfig {
    std::int64_t population = 30000;
    double aware_fraction = 50.0;  // % warned before the alarm
    double panic_fraction = 0.0;   // % panicking once the alarm fires
    bool glass_bottles = true;     // broken glass on the ground -> slipping
    bool real_exits = true;        // barriers halve gate capacity
    double female_fraction = 50.0;
    double adult_fraction = 80.0;
    double elderly_fraction = 10.0;
    double children_fraction = 10.0;
    double scale = 2.0;            // metres per patch edge
    double slipping_chance = 1.0;  // % per tick while glass_bottles
    double people_dim = 0.75;      // metres per person edge
    int wall_thickness = 0;        // extra wall rings dilated onto the map
    InjuryModelParams injury;
    SpeedModelParams speed;
    std::string map_path;          // empty: use the bundled square
    std::int64_t alarm_tick = 10;
    std::int64_t max_ticks = 7200;
    double gate_restriction_factor = 0.5;

    CapacityPolicy capacity_policy() const {
        return CapacityPolicy{scale, people_dim, real_exits, gate_restriction_factor};
    }

    friend bool operator==(const ScenarioConfig&, const ScenarioConfig&) = default;
};

/// Parse `key = value` lines ('#' starts a comment, blank lines ignored,
/// last assignment wins).  Unknown keys are rejected with their line number.
/// `population` must be present; all other keys fall back to the defaults
/// above.  Relative map_path values are resolved against `base_dir` when
/// given.  Throws ConfigError on syntax, type or invariant problems.
ScenarioConfig parse_scenario(const std::string& text, const std::string& base_dir = "");

/// Read and parse a scenario file; relative map paths resolve against the
/// file's directory.  Throws IoError if unreadable.
ScenarioConfig load_scenario_file(const std::string& path);

/// Canonical text form; parse_scenario(serialize_scenario(c)) == c.
std::string serialize_scenario(const ScenarioConfig& config);

/// Apply one key/value pair as the config-file parser would (used for sweep
/// axes).  Throws ConfigError for unknown keys or bad values.
void set_scenario_key(ScenarioConfig& config, const std::string& key, const std::string& value);

/// Read one key back in canonical text form.  Throws ConfigError for unknown
/// keys.
std::string get_scenario_key(const ScenarioConfig& config, const std::string& key);

/// All recognised config keys, in canonical file order.
const std::vector<std::string>& scenario_keys();

/// Check the cross-field invariants (fractions in range and summing to 100,
/// people_dim <= scale, positive scale, ...).  Throws ConfigError.
void validate_scenario(const ScenarioConfig& config);

/// Desk-scale preset: population divided by 10, map unchanged.
ScenarioConfig desk_scale(ScenarioConfig config);

} // namespace evacsim
