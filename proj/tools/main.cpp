// evacsim: agent-based evacuation of a public square.
//
//   evacsim run <scenario.cfg>      one simulation, CSV + KPI line
//   evacsim sweep <name|spec file>  a parameter sweep (builtin or custom)
//   evacsim validate-map <file>     check a map and print its stats
//   evacsim list-experiments        show the builtin sweeps
//
// Exit codes: 0 ok, 1 validation problem, 2 I/O problem.

#include <cstdio>
#include <filesystem>
#include <string>
#include <thread>

#include <CLI11.hpp>

#include "evacsim/csv.hpp"
#include "evacsim/engine.hpp"
#include "evacsim/errors.hpp"
#include "evacsim/experiments.hpp"

namespace {

struct CliOptions {
    std::string scenario_path;
    std::string sweep_target;
    std::string map_path;
    std::string out_dir = "out";
    std::uint64_t seed = 42;
    int parallelism = static_cast<int>(std::thread::hardware_concurrency());
    std::string scale = "full";
};

int cmd_run(const CliOptions& opt) {
    evacsim::ScenarioConfig config = evacsim::load_scenario_file(opt.scenario_path);
    if (opt.scale == "desk") config = evacsim::desk_scale(std::move(config));
    const evacsim::RunResult result = evacsim::simulate(config, opt.seed);
    const std::string csv_path =
        (std::filesystem::path(opt.out_dir) / "run.csv").string();
    evacsim::write_run_csv(result, csv_path);
    std::printf("evac_duration_s=%lld victims=%lld injured=%lld ticks=%lld truncated=%d\n",
                static_cast<long long>(result.evac_duration_s),
                static_cast<long long>(result.victims), static_cast<long long>(result.injured),
                static_cast<long long>(result.ticks), result.truncated ? 1 : 0);
    std::fprintf(stderr, "wrote %s\n", csv_path.c_str());
    return 0;
}

int cmd_sweep(const CliOptions& opt) {
    evacsim::ExperimentSpec spec;
    if (std::filesystem::exists(opt.sweep_target))
        spec = evacsim::load_experiment_file(opt.sweep_target);
    else
        spec = evacsim::builtin_experiment(opt.sweep_target, opt.seed);
    spec.base_seed = opt.seed;
    if (opt.scale == "desk") spec = evacsim::desk_scale(std::move(spec));

    const int parallelism = opt.parallelism > 0 ? opt.parallelism : 1;
    const evacsim::ExperimentResult result = evacsim::run_experiment(spec, parallelism);
    evacsim::write_experiment(result, opt.out_dir);

    int failed = 0;
    for (const evacsim::RunRecord& rec : result.runs) {
        if (rec.result) continue;
        ++failed;
        std::fprintf(stderr, "run %s_%d (seed %llu) failed: %s\n", rec.value.c_str(), rec.repeat,
                     static_cast<unsigned long long>(rec.seed), rec.error.c_str());
    }
    std::fputs(evacsim::summary_csv_text(result).c_str(), stdout);
    std::fprintf(stderr, "wrote %s (%zu runs, %d failed)\n",
                 (std::filesystem::path(opt.out_dir) / spec.name).string().c_str(),
                 result.runs.size(), failed);
    return 0;
}

int cmd_validate_map(const CliOptions& opt) {
    const evacsim::MapSpec map = evacsim::load_map_file(opt.map_path);
    const evacsim::PatchGrid grid = evacsim::build_grid(map, evacsim::CapacityPolicy{});
    std::int64_t inside = 0;
    for (const evacsim::PatchKind k : grid.kind)
        if (k == evacsim::PatchKind::Inside) ++inside;
    std::printf("map %s: %dx%d, %d gates, %lld interior patches, capacity %d/patch (gates %d)\n",
                opt.map_path.c_str(), grid.width, grid.height, grid.num_gates,
                static_cast<long long>(inside), grid.capacity_inside, grid.capacity_gate);
    if (grid.unreachable_inside > 0)
        std::fprintf(stderr, "warning: %lld interior patches cannot reach any gate\n",
                     static_cast<long long>(grid.unreachable_inside));
    return 0;
}

int cmd_list_experiments() {
    std::printf("descriptive         10 repeats of the baseline scenario\n");
    std::printf("number-of-people    population 30000 down to 20000 in steps of 2500\n");
    std::printf("glass-bottles       broken glass on the ground: on / off, 3 runs each\n");
    std::printf("mobile-application  warned fraction 50%% to 100%% in steps of 10\n");
    std::printf("panic-fraction      panicking fraction 0%% to 50%% in steps of 10\n");
    std::printf("accessible-exits    gate barriers: on / off, 3 runs each\n");
    return 0;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"agent-based evacuation simulator for a public square"};
    app.require_subcommand(1);
    CliOptions opt;

    CLI::App* run = app.add_subcommand("run", "simulate one scenario");
    run->add_option("scenario", opt.scenario_path, "scenario config file")->required();
    run->add_option("--seed", opt.seed, "run seed");
    run->add_option("--out", opt.out_dir, "output directory")->envname("EVACSIM_OUT");
    run->add_option("--scale", opt.scale, "desk (population/10) or full")
        ->check(CLI::IsMember({"desk", "full"}));

    CLI::App* sweep = app.add_subcommand("sweep", "run a parameter sweep");
    sweep->add_option("experiment", opt.sweep_target, "builtin name or spec file")->required();
    sweep->add_option("--seed", opt.seed, "base seed; run i uses seed+i");
    sweep->add_option("--out", opt.out_dir, "output directory")->envname("EVACSIM_OUT");
    sweep->add_option("--parallelism", opt.parallelism, "worker threads (default: host cores)");
    sweep->add_option("--scale", opt.scale, "desk (population/10) or full")
        ->check(CLI::IsMember({"desk", "full"}));

    CLI::App* validate = app.add_subcommand("validate-map", "check a map file");
    validate->add_option("map", opt.map_path, "map file")->required();

    app.add_subcommand("list-experiments", "list builtin sweeps");

    try {
        app.parse(argc, argv);
        if (run->parsed()) return cmd_run(opt);
        if (sweep->parsed()) return cmd_sweep(opt);
        if (validate->parsed()) return cmd_validate_map(opt);
        return cmd_list_experiments();
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 1;
    } catch (const evacsim::IoError& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return 2;
    } catch (const evacsim::Error& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return 1;
    }
}
