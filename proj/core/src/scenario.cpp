#include "evacsim/scenario.hpp"

#include <charconv>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <functional>
#include <set>
#include <sstream>

#include "evacsim/errors.hpp"
#include "evacsim/numfmt.hpp"

namespace evacsim {

namespace {

std::string trim(const std::string& s) {
    std::size_t b = s.find_first_not_of(" \t");
    if (b == std::string::npos) return "";
    std::size_t e = s.find_last_not_of(" \t");
    return s.substr(b, e - b + 1);
}

double to_double(const std::string& key, const std::string& value) {
    double out = 0.0;
    const char* end = value.data() + value.size();
    auto [ptr, ec] = std::from_chars(value.data(), end, out);
    if (ec != std::errc{} || ptr != end)
        throw ConfigError("key '" + key + "': expected a number, got '" + value + "'");
    return out;
}

std::int64_t to_int(const std::string& key, const std::string& value) {
    std::int64_t out = 0;
    const char* end = value.data() + value.size();
    auto [ptr, ec] = std::from_chars(value.data(), end, out);
    if (ec != std::errc{} || ptr != end)
        throw ConfigError("key '" + key + "': expected an integer, got '" + value + "'");
    return out;
}

bool to_bool(const std::string& key, const std::string& value) {
    if (value == "on" || value == "true" || value == "1") return true;
    if (value == "off" || value == "false" || value == "0") return false;
    throw ConfigError("key '" + key + "': expected on/off, got '" + value + "'");
}

std::string from_bool(bool b) { return b ? "on" : "off"; }

struct KeyDef {
    const char* name;
    std::function<void(ScenarioConfig&, const std::string&)> set;
    std::function<std::string(const ScenarioConfig&)> get;
};

const std::vector<KeyDef>& key_table() {
    auto dbl = [](double ScenarioConfig::* field, const char* name) {
        return KeyDef{
            name,
            [field, name](ScenarioConfig& c, const std::string& v) { c.*field = to_double(name, v); },
            [field](const ScenarioConfig& c) { return format_number(c.*field); },
        };
    };
    auto boolean = [](bool ScenarioConfig::* field, const char* name) {
        return KeyDef{
            name,
            [field, name](ScenarioConfig& c, const std::string& v) { c.*field = to_bool(name, v); },
            [field](const ScenarioConfig& c) { return from_bool(c.*field); },
        };
    };
    auto speed_mult = [](int lvl, const char* name) {
        return KeyDef{
            name,
            [lvl, name](ScenarioConfig& c, const std::string& v) {
                c.speed.injury_multipliers[lvl] = to_double(name, v);
            },
            [lvl](const ScenarioConfig& c) { return format_number(c.speed.injury_multipliers[lvl]); },
        };
    };
    static const std::vector<KeyDef> table = {
        {"population",
         [](ScenarioConfig& c, const std::string& v) { c.population = to_int("population", v); },
         [](const ScenarioConfig& c) { return format_number(c.population); }},
        dbl(&ScenarioConfig::aware_fraction, "aware_fraction"),
        dbl(&ScenarioConfig::panic_fraction, "panic_fraction"),
        boolean(&ScenarioConfig::glass_bottles, "glass_bottles"),
        boolean(&ScenarioConfig::real_exits, "real_exits"),
        dbl(&ScenarioConfig::female_fraction, "female_fraction"),
        dbl(&ScenarioConfig::adult_fraction, "adult_fraction"),
        dbl(&ScenarioConfig::elderly_fraction, "elderly_fraction"),
        dbl(&ScenarioConfig::children_fraction, "children_fraction"),
        {"injury_weight",
         [](ScenarioConfig& c, const std::string& v) { c.injury.injury_weight = to_double("injury_weight", v); },
         [](const ScenarioConfig& c) { return format_number(c.injury.injury_weight); }},
        {"speed_enabled",
         [](ScenarioConfig& c, const std::string& v) { c.speed.enabled = to_bool("speed_enabled", v); },
         [](const ScenarioConfig& c) { return from_bool(c.speed.enabled); }},
        dbl(&ScenarioConfig::scale, "scale"),
        dbl(&ScenarioConfig::slipping_chance, "slipping_chance"),
        dbl(&ScenarioConfig::people_dim, "people_dim"),
        {"wall_thickness",
         [](ScenarioConfig& c, const std::string& v) {
             c.wall_thickness = static_cast<int>(to_int("wall_thickness", v));
         },
         [](const ScenarioConfig& c) { return format_number(static_cast<std::int64_t>(c.wall_thickness)); }},
        {"map_path",
         [](ScenarioConfig& c, const std::string& v) { c.map_path = v; },
         [](const ScenarioConfig& c) { return c.map_path; }},
        {"alarm_tick",
         [](ScenarioConfig& c, const std::string& v) { c.alarm_tick = to_int("alarm_tick", v); },
         [](const ScenarioConfig& c) { return format_number(c.alarm_tick); }},
        {"max_ticks",
         [](ScenarioConfig& c, const std::string& v) { c.max_ticks = to_int("max_ticks", v); },
         [](const ScenarioConfig& c) { return format_number(c.max_ticks); }},
        dbl(&ScenarioConfig::gate_restriction_factor, "gate_restriction_factor"),
        {"injury.crowding_threshold",
         [](ScenarioConfig& c, const std::string& v) {
             c.injury.crowding_threshold = to_double("injury.crowding_threshold", v);
         },
         [](const ScenarioConfig& c) { return format_number(c.injury.crowding_threshold); }},
        {"speed.adult",
         [](ScenarioConfig& c, const std::string& v) { c.speed.adult = to_double("speed.adult", v); },
         [](const ScenarioConfig& c) { return format_number(c.speed.adult); }},
        {"speed.elderly",
         [](ScenarioConfig& c, const std::string& v) { c.speed.elderly = to_double("speed.elderly", v); },
         [](const ScenarioConfig& c) { return format_number(c.speed.elderly); }},
        {"speed.child",
         [](ScenarioConfig& c, const std::string& v) { c.speed.child = to_double("speed.child", v); },
         [](const ScenarioConfig& c) { return format_number(c.speed.child); }},
        {"speed.female_multiplier",
         [](ScenarioConfig& c, const std::string& v) {
             c.speed.female_multiplier = to_double("speed.female_multiplier", v);
         },
         [](const ScenarioConfig& c) { return format_number(c.speed.female_multiplier); }},
        speed_mult(0, "speed.healthy"),
        speed_mult(1, "speed.minor"),
        speed_mult(2, "speed.moderate"),
        speed_mult(3, "speed.serious"),
        speed_mult(4, "speed.severe"),
        speed_mult(5, "speed.critical"),
    };
    return table;
}

const KeyDef* find_key(const std::string& key) {
    for (const auto& def : key_table())
        if (key == def.name) return &def;
    return nullptr;
}

void check_percent(const char* name, double v) {
    if (v < 0.0 || v > 100.0)
        throw ConfigError(std::string(name) + " must be within [0, 100], got " + format_number(v));
}

} // namespace

void set_scenario_key(ScenarioConfig& config, const std::string& key, const std::string& value) {
    const KeyDef* def = find_key(key);
    if (!def) throw ConfigError("unknown config key '" + key + "'");
    def->set(config, value);
}

std::string get_scenario_key(const ScenarioConfig& config, const std::string& key) {
    const KeyDef* def = find_key(key);
    if (!def) throw ConfigError("unknown config key '" + key + "'");
    return def->get(config);
}

const std::vector<std::string>& scenario_keys() {
    static const std::vector<std::string> keys = [] {
        std::vector<std::string> out;
        for (const auto& def : key_table()) out.push_back(def.name);
        return out;
    }();
    return keys;
}

void validate_scenario(const ScenarioConfig& c) {
    if (c.population < 0) throw ConfigError("population must be >= 0");
    check_percent("aware_fraction", c.aware_fraction);
    check_percent("panic_fraction", c.panic_fraction);
    check_percent("female_fraction", c.female_fraction);
    check_percent("adult_fraction", c.adult_fraction);
    check_percent("elderly_fraction", c.elderly_fraction);
    check_percent("children_fraction", c.children_fraction);
    check_percent("slipping_chance", c.slipping_chance);
    const double age_sum = c.adult_fraction + c.elderly_fraction + c.children_fraction;
    if (std::abs(age_sum - 100.0) > 1e-9)
        throw ConfigError("adult/elderly/children fractions must sum to 100, got " +
                          format_number(age_sum));
    if (c.scale <= 0.0) throw ConfigError("scale must be > 0");
    if (c.people_dim <= 0.0) throw ConfigError("people_dim must be > 0");
    if (c.people_dim > c.scale)
        throw ConfigError("people_dim must not exceed scale (a person has to fit on a patch)");
    if (c.wall_thickness < 0) throw ConfigError("wall_thickness must be >= 0");
    if (c.alarm_tick < 0) throw ConfigError("alarm_tick must be >= 0");
    if (c.max_ticks < 1) throw ConfigError("max_ticks must be >= 1");
    if (c.gate_restriction_factor <= 0.0 || c.gate_restriction_factor > 1.0)
        throw ConfigError("gate_restriction_factor must be in (0, 1]");
    if (c.injury.injury_weight < 0.0 || c.injury.injury_weight > 1.0)
        throw ConfigError("injury_weight must be in [0, 1]");
    if (c.injury.crowding_threshold <= 0.0 || c.injury.crowding_threshold > 1.0)
        throw ConfigError("injury.crowding_threshold must be in (0, 1]");
    if (c.speed.adult < 0.0 || c.speed.elderly < 0.0 || c.speed.child < 0.0)
        throw ConfigError("speeds must be >= 0");
    if (c.speed.female_multiplier < 0.0 || c.speed.female_multiplier > 1.0)
        throw ConfigError("speed.female_multiplier must be in [0, 1]");
    const auto& mult = c.speed.injury_multipliers;
    for (int i = 0; i < kHealthLevels; ++i) {
        if (mult[i] < 0.0 || mult[i] > 1.0)
            throw ConfigError("injury speed multipliers must be in [0, 1]");
        if (i > 0 && mult[i] > mult[i - 1])
            throw ConfigError("injury speed multipliers must be non-increasing");
    }
    if (mult[level(HealthLevel::Fatal)] != 0.0)
        throw ConfigError("the Fatal speed multiplier is fixed at 0");
}

ScenarioConfig parse_scenario(const std::string& text, const std::string& base_dir) {
    ScenarioConfig config;
    std::set<std::string> seen;
    std::istringstream in(text);
    std::string line;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        const std::size_t hash = line.find('#');
        if (hash != std::string::npos) line.resize(hash);
        line = trim(line);
        if (line.empty()) continue;
        const std::size_t eq = line.find('=');
        if (eq == std::string::npos)
            throw ConfigError("line " + std::to_string(lineno) + ": expected 'key = value'");
        const std::string key = trim(line.substr(0, eq));
        const std::string value = trim(line.substr(eq + 1));
        try {
            set_scenario_key(config, key, value);
        } catch (const ConfigError& e) {
            throw ConfigError("line " + std::to_string(lineno) + ": " + e.what());
        }
        seen.insert(key);
    }
    if (!seen.count("population")) throw ConfigError("missing required key 'population'");
    if (!config.map_path.empty() && !base_dir.empty()) {
        std::filesystem::path p(config.map_path);
        if (p.is_relative()) config.map_path = (std::filesystem::path(base_dir) / p).string();
    }
    validate_scenario(config);
    return config;
}

ScenarioConfig load_scenario_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw IoError("cannot open scenario file: " + path);
    std::ostringstream buf;
    buf << in.rdbuf();
    if (in.bad()) throw IoError("cannot read scenario file: " + path);
    return parse_scenario(buf.str(), std::filesystem::path(path).parent_path().string());
}

std::string serialize_scenario(const ScenarioConfig& config) {
    std::string out;
    for (const auto& def : key_table()) {
        out += def.name;
        out += " = ";
        out += def.get(config);
        out += '\n';
    }
    return out;
}

ScenarioConfig desk_scale(ScenarioConfig config) {
    config.population /= 10;
    return config;
}

} // namespace evacsim
