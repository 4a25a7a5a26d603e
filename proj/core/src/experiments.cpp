#include "evacsim/experiments.hpp"

#include <atomic>
#include <charconv>
#include <filesystem>
#include <fstream>
#include <set>
#include <sstream>
#include <thread>

#include "evacsim/csv.hpp"
#include "evacsim/errors.hpp"

namespace evacsim {

namespace {

std::string trim(const std::string& s) {
    std::size_t b = s.find_first_not_of(" \t");
    if (b == std::string::npos) return "";
    std::size_t e = s.find_last_not_of(" \t");
    return s.substr(b, e - b + 1);
}

} // namespace

std::vector<PlannedRun> expand_experiment(const ExperimentSpec& spec) {
    if (spec.values.empty()) throw ConfigError("experiment '" + spec.name + "' has no axis values");
    if (spec.repeats_per_value < 1)
        throw ConfigError("experiment '" + spec.name + "' needs repeats >= 1");
    std::vector<PlannedRun> plan;
    std::uint64_t i = 0;
    for (const std::string& value : spec.values) {
        for (int repeat = 0; repeat < spec.repeats_per_value; ++repeat, ++i) {
            PlannedRun run;
            run.value = value;
            run.repeat = repeat;
            run.seed = spec.base_seed + i;
            run.config = spec.base;
            try {
                set_scenario_key(run.config, spec.axis, value);
            } catch (const ConfigError& e) {
                throw ConfigError("experiment '" + spec.name + "' axis: " + e.what());
            }
            validate_scenario(run.config);
            plan.push_back(std::move(run));
        }
    }
    return plan;
}

ExperimentResult run_experiment(const ExperimentSpec& spec, int parallelism) {
    const std::vector<PlannedRun> plan = expand_experiment(spec);
    ExperimentResult result;
    result.spec = spec;
    result.runs.resize(plan.size());

    const auto execute = [&](std::size_t i) {
        RunRecord& rec = result.runs[i];
        rec.value = plan[i].value;
        rec.repeat = plan[i].repeat;
        rec.seed = plan[i].seed;
        try {
            rec.result = simulate(plan[i].config, plan[i].seed);
        } catch (const Error& e) {
            rec.error = e.what();
        }
    };

    const int workers = std::max(1, std::min<int>(parallelism, static_cast<int>(plan.size())));
    if (workers == 1) {
        for (std::size_t i = 0; i < plan.size(); ++i) execute(i);
    } else {
        std::atomic<std::size_t> next{0};
        std::vector<std::thread> pool;
        pool.reserve(static_cast<std::size_t>(workers));
        for (int w = 0; w < workers; ++w) {
            pool.emplace_back([&] {
                for (;;) {
                    const std::size_t i = next.fetch_add(1);
                    if (i >= result.runs.size()) return;
                    execute(i);
                }
            });
        }
        for (std::thread& t : pool) t.join();
    }

    // one aggregate row per axis value, in the order the values were given
    for (const std::string& value : spec.values) {
        AggregateRow row;
        row.value = value;
        double duration = 0.0, victims = 0.0, injured = 0.0, healthy = 0.0;
        for (const RunRecord& rec : result.runs) {
            if (rec.value != value || !rec.result) continue;
            ++row.runs;
            duration += static_cast<double>(rec.result->evac_duration_s);
            victims += static_cast<double>(rec.result->victims);
            injured += static_cast<double>(rec.result->injured);
            healthy += static_cast<double>(rec.result->injury_histogram[level(HealthLevel::Healthy)]);
        }
        if (row.runs > 0) {
            row.mean_evac_duration_s = duration / row.runs;
            row.mean_victims = victims / row.runs;
            row.mean_injured = injured / row.runs;
            row.mean_healthy = healthy / row.runs;
        }
        result.summary.push_back(std::move(row));
    }
    return result;
}

std::string summary_csv_text(const ExperimentResult& result) {
    std::string out = "value,runs,mean_evac_duration_s,mean_victims,mean_injured,mean_healthy\n";
    for (const AggregateRow& row : result.summary) {
        out += row.value;
        out += ',';
        out += format_number(static_cast<std::int64_t>(row.runs));
        out += ',';
        out += format_number(row.mean_evac_duration_s);
        out += ',';
        out += format_number(row.mean_victims);
        out += ',';
        out += format_number(row.mean_injured);
        out += ',';
        out += format_number(row.mean_healthy);
        out += '\n';
    }
    return out;
}

void write_experiment(const ExperimentResult& result, const std::string& out_dir) {
    namespace fs = std::filesystem;
    const fs::path root = fs::path(out_dir) / result.spec.name;
    std::error_code ec;
    fs::create_directories(root / "runs", ec);
    if (ec) throw IoError("cannot create " + (root / "runs").string() + ": " + ec.message());

    for (const RunRecord& rec : result.runs) {
        if (!rec.result) continue;  // failed runs leave no files, just the record
        const std::string name = rec.value + "_" + format_number(static_cast<std::int64_t>(rec.repeat));
        write_run_csv(*rec.result, (root / "runs" / (name + ".csv")).string());
    }

    std::ofstream summary(root / "summary.csv", std::ios::binary | std::ios::trunc);
    if (!summary) throw IoError("cannot write " + (root / "summary.csv").string());
    summary << summary_csv_text(result);
    if (!summary) throw IoError("write failed: " + (root / "summary.csv").string());
}

const std::vector<std::string>& builtin_experiment_names() {
    static const std::vector<std::string> names = {
        "descriptive",    "number-of-people", "glass-bottles",
        "mobile-application", "panic-fraction",   "accessible-exits",
    };
    return names;
}

ExperimentSpec builtin_experiment(const std::string& name, std::uint64_t base_seed) {
    ExperimentSpec spec;
    spec.name = name;
    spec.base = ScenarioConfig{};  // the baseline square scenario
    spec.base_seed = base_seed;
    if (name == "descriptive") {
        spec.axis = "population";
        spec.values = {"30000"};
        spec.repeats_per_value = 10;
    } else if (name == "number-of-people") {
        spec.axis = "population";
        spec.values = {"30000", "27500", "25000", "22500", "20000"};
        spec.repeats_per_value = 1;
    } else if (name == "glass-bottles") {
        spec.axis = "glass_bottles";
        spec.values = {"on", "off"};
        spec.repeats_per_value = 3;
    } else if (name == "mobile-application") {
        spec.axis = "aware_fraction";
        spec.values = {"50", "60", "70", "80", "90", "100"};
        spec.repeats_per_value = 1;
    } else if (name == "panic-fraction") {
        spec.axis = "panic_fraction";
        spec.values = {"0", "10", "20", "30", "40", "50"};
        spec.repeats_per_value = 1;
    } else if (name == "accessible-exits") {
        spec.axis = "real_exits";
        spec.values = {"on", "off"};
        spec.repeats_per_value = 3;
    } else {
        std::string known;
        for (const auto& n : builtin_experiment_names()) known += " " + n;
        throw ConfigError("unknown experiment '" + name + "'; builtin:" + known);
    }
    return spec;
}

ExperimentSpec parse_experiment_spec(const std::string& text, const std::string& base_dir) {
    ExperimentSpec spec;
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
        seen.insert(key);
        if (key == "name") {
            spec.name = value;
        } else if (key == "axis") {
            spec.axis = value;
        } else if (key == "values") {
            spec.values.clear();
            std::size_t start = 0;
            for (std::size_t i = 0; i <= value.size(); ++i) {
                if (i == value.size() || value[i] == ',') {
                    const std::string v = trim(value.substr(start, i - start));
                    if (!v.empty()) spec.values.push_back(v);
                    start = i + 1;
                }
            }
        } else if (key == "repeats") {
            try {
                spec.repeats_per_value = std::stoi(value);
            } catch (...) {
                throw ConfigError("line " + std::to_string(lineno) + ": bad repeats '" + value + "'");
            }
        } else if (key == "seed") {
            try {
                spec.base_seed = std::stoull(value);
            } catch (...) {
                throw ConfigError("line " + std::to_string(lineno) + ": bad seed '" + value + "'");
            }
        } else if (key == "base") {
            std::filesystem::path p(value);
            if (p.is_relative() && !base_dir.empty()) p = std::filesystem::path(base_dir) / p;
            spec.base = load_scenario_file(p.string());
        } else {
            throw ConfigError("line " + std::to_string(lineno) + ": unknown experiment key '" + key +
                              "'");
        }
    }
    if (spec.name.empty()) throw ConfigError("experiment spec needs a name");
    if (spec.axis.empty()) throw ConfigError("experiment spec needs an axis");
    if (spec.values.empty()) throw ConfigError("experiment spec needs values");
    return spec;
}

ExperimentSpec load_experiment_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw IoError("cannot open experiment file: " + path);
    std::ostringstream buf;
    buf << in.rdbuf();
    if (in.bad()) throw IoError("cannot read experiment file: " + path);
    return parse_experiment_spec(buf.str(), std::filesystem::path(path).parent_path().string());
}

ExperimentSpec desk_scale(ExperimentSpec spec) {
    spec.base = desk_scale(std::move(spec.base));
    if (spec.axis == "population") {
        for (std::string& value : spec.values) {
            std::int64_t v = 0;
            auto [p, ec] = std::from_chars(value.data(), value.data() + value.size(), v);
            if (ec != std::errc{} || p != value.data() + value.size())
                throw ConfigError("cannot desk-scale population value '" + value + "'");
            value = format_number(v / 10);
        }
    }
    return spec;
}

} // namespace evacsim
