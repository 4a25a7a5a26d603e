#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "evacsim/engine.hpp"
#include "evacsim/scenario.hpp"

namespace evacsim {

/// A one-axis parameter sweep: run the base scenario once per (value, repeat)
/// pair, with consecutive seeds.
struct ExperimentSpec {
    std::string name;
    ScenarioConfig base;
    std::string axis;                 // a scenario config key
    std::vector<std::string> values;  // applied through set_scenario_key
    int repeats_per_value = 1;
    std::uint64_t base_seed = 42;
};

struct PlannedRun {
    std::string value;
    int repeat = 0;
    std::uint64_t seed = 0;
    ScenarioConfig config;
};

/// The concrete run list: values in order, repeats within a value, seed
/// base_seed + i in expansion order.  Pure.  Throws ConfigError for an
/// unknown axis, empty values, or non-positive repeats.
std::vector<PlannedRun> expand_experiment(const ExperimentSpec& spec);

struct RunRecord {
    std::string value;
    int repeat = 0;
    std::uint64_t seed = 0;
    std::optional<RunResult> result;  // empty if the run failed
    std::string error;
};

struct AggregateRow {
    std::string value;
    int runs = 0;  // successful runs
    double mean_evac_duration_s = 0.0;
    double mean_victims = 0.0;
    double mean_injured = 0.0;
    double mean_healthy = 0.0;
};

struct ExperimentResult {
    ExperimentSpec spec;
    std::vector<RunRecord> runs;        // expansion order
    std::vector<AggregateRow> summary;  // one row per axis value, values order
};

/// Execute all planned runs on up to `parallelism` worker threads.  The
/// result (and any files later written from it) is identical for any
/// parallelism >= 1; a failed run is recorded and does not stop the rest.
ExperimentResult run_experiment(const ExperimentSpec& spec, int parallelism);

/// Lay the result out under `out_dir`:
///   <out_dir>/<name>/runs/<value>_<repeat>.csv        tick series
///   <out_dir>/<name>/runs/<value>_<repeat>.summary.csv KPIs
///   <out_dir>/<name>/summary.csv                       aggregate table
std::string summary_csv_text(const ExperimentResult& result);
void write_experiment(const ExperimentResult& result, const std::string& out_dir);

/// The six builtin sweeps around the baseline scenario:
///   descriptive, number-of-people, glass-bottles, mobile-application,
///   panic-fraction, accessible-exits.
const std::vector<std::string>& builtin_experiment_names();
ExperimentSpec builtin_experiment(const std::string& name, std::uint64_t base_seed);

/// Flat key=value sweep description:
///   name, axis, values (comma separated), repeats, seed, base (scenario file,
///   optional; bundled baseline when absent).  Relative paths resolve against
///   `base_dir`.
ExperimentSpec parse_experiment_spec(const std::string& text, const std::string& base_dir = "");
ExperimentSpec load_experiment_file(const std::string& path);

/// Population divided by 10, on the base scenario and on population axis
/// values.
ExperimentSpec desk_scale(ExperimentSpec spec);

} // namespace evacsim
