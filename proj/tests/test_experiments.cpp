#include <doctest.h>

#include <cstdint>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "evacsim/csv.hpp"
#include "evacsim/errors.hpp"
#include "evacsim/experiments.hpp"

using namespace evacsim;
namespace fs = std::filesystem;

namespace {

std::string slurp(const fs::path& p) {
    std::ifstream in(p, std::ios::binary);
    REQUIRE(in);
    std::ostringstream out;
    out << in.rdbuf();
    return out.str();
}

// A sweep small enough to run inside a unit test.
ExperimentSpec small_sweep() {
    ExperimentSpec spec;
    spec.name = "smoke";
    spec.base.population = 200;
    spec.base.max_ticks = 2000;
    spec.axis = "panic_fraction";
    spec.values = {"0", "30"};
    spec.repeats_per_value = 2;
    spec.base_seed = 7;
    return spec;
}

} // namespace

TEST_CASE("expansion: values outer, repeats inner, consecutive seeds") {
    const std::vector<PlannedRun> plan = expand_experiment(small_sweep());
    REQUIRE(plan.size() == 4);
    CHECK(plan[0].value == "0");
    CHECK(plan[1].value == "0");
    CHECK(plan[2].value == "30");
    CHECK(plan[3].value == "30");
    for (int i = 0; i < 4; ++i) {
        CHECK(plan[i].seed == 7 + static_cast<std::uint64_t>(i));
        CHECK(plan[i].repeat == i % 2);
        CHECK(plan[i].config.population == 200);
    }
    CHECK(plan[0].config.panic_fraction == 0.0);
    CHECK(plan[2].config.panic_fraction == 30.0);
}

TEST_CASE("expansion leaves the spec and base untouched") {
    const ExperimentSpec spec = small_sweep();
    (void)expand_experiment(spec);
    CHECK(spec.base.panic_fraction == 0.0);
    CHECK(expand_experiment(spec).size() == 4);
}

TEST_CASE("expansion rejects nonsense") {
    ExperimentSpec spec = small_sweep();
    spec.axis = "warp_drive";
    CHECK_THROWS_AS(expand_experiment(spec), ConfigError);

    spec = small_sweep();
    spec.values.clear();
    CHECK_THROWS_AS(expand_experiment(spec), ConfigError);

    spec = small_sweep();
    spec.repeats_per_value = 0;
    CHECK_THROWS_AS(expand_experiment(spec), ConfigError);

    spec = small_sweep();
    spec.values = {"wat"};
    CHECK_THROWS_AS(expand_experiment(spec), ConfigError);
}

TEST_CASE("the six builtin sweeps expand to the published grid") {
    const std::vector<std::string>& names = builtin_experiment_names();
    REQUIRE(names.size() == 6);

    ExperimentSpec spec = builtin_experiment("descriptive", 100);
    std::vector<PlannedRun> plan = expand_experiment(spec);
    REQUIRE(plan.size() == 10);
    for (int i = 0; i < 10; ++i) {
        CHECK(plan[i].config.population == 30000);
        CHECK(plan[i].seed == 100 + static_cast<std::uint64_t>(i));
    }

    spec = builtin_experiment("number-of-people", 100);
    plan = expand_experiment(spec);
    REQUIRE(plan.size() == 5);
    const std::vector<std::int64_t> pops = {30000, 27500, 25000, 22500, 20000};
    for (std::size_t i = 0; i < plan.size(); ++i) CHECK(plan[i].config.population == pops[i]);

    spec = builtin_experiment("glass-bottles", 100);
    plan = expand_experiment(spec);
    REQUIRE(plan.size() == 6);
    for (int i = 0; i < 3; ++i) CHECK(plan[i].config.glass_bottles);
    for (int i = 3; i < 6; ++i) CHECK(!plan[i].config.glass_bottles);

    spec = builtin_experiment("mobile-application", 100);
    plan = expand_experiment(spec);
    REQUIRE(plan.size() == 6);
    for (int i = 0; i < 6; ++i) CHECK(plan[i].config.aware_fraction == 50.0 + 10.0 * i);

    spec = builtin_experiment("panic-fraction", 100);
    plan = expand_experiment(spec);
    REQUIRE(plan.size() == 6);
    for (int i = 0; i < 6; ++i) CHECK(plan[i].config.panic_fraction == 10.0 * i);

    spec = builtin_experiment("accessible-exits", 100);
    plan = expand_experiment(spec);
    REQUIRE(plan.size() == 6);
    for (int i = 0; i < 3; ++i) CHECK(plan[i].config.real_exits);
    for (int i = 3; i < 6; ++i) CHECK(!plan[i].config.real_exits);

    CHECK_THROWS_AS(builtin_experiment("nope", 1), ConfigError);
}

TEST_CASE("desk scale divides the crowd by ten") {
    ExperimentSpec spec = desk_scale(builtin_experiment("number-of-people", 1));
    CHECK(spec.base.population == 3000);
    const std::vector<PlannedRun> plan = expand_experiment(spec);
    const std::vector<std::int64_t> pops = {3000, 2750, 2500, 2250, 2000};
    REQUIRE(plan.size() == 5);
    for (std::size_t i = 0; i < plan.size(); ++i) CHECK(plan[i].config.population == pops[i]);

    spec = desk_scale(builtin_experiment("panic-fraction", 1));
    CHECK(spec.base.population == 3000);
    CHECK(spec.values.size() == 6);  // axis values untouched, not a population axis
}

TEST_CASE("a sweep runs the same with 1 or 8 threads") {
    const ExperimentSpec spec = small_sweep();
    const ExperimentResult serial = run_experiment(spec, 1);
    const ExperimentResult parallel = run_experiment(spec, 8);

    REQUIRE(serial.runs.size() == 4);
    REQUIRE(parallel.runs.size() == 4);
    for (std::size_t i = 0; i < serial.runs.size(); ++i) {
        CHECK(serial.runs[i].value == parallel.runs[i].value);
        CHECK(serial.runs[i].seed == parallel.runs[i].seed);
        REQUIRE(serial.runs[i].result.has_value());
        REQUIRE(parallel.runs[i].result.has_value());
        CHECK(*serial.runs[i].result == *parallel.runs[i].result);
    }
    CHECK(summary_csv_text(serial) == summary_csv_text(parallel));

    const fs::path dir = fs::temp_directory_path() / "evacsim_sweep_test";
    fs::remove_all(dir);
    write_experiment(serial, (dir / "a").string());
    write_experiment(parallel, (dir / "b").string());
    const fs::path base_a = dir / "a" / "smoke";
    const fs::path base_b = dir / "b" / "smoke";
    REQUIRE(fs::exists(base_a / "summary.csv"));
    CHECK(slurp(base_a / "summary.csv") == slurp(base_b / "summary.csv"));
    for (const char* leaf : {"0_0.csv", "0_1.csv", "30_0.csv", "30_1.csv"}) {
        CHECK(slurp(base_a / "runs" / leaf) == slurp(base_b / "runs" / leaf));
        CHECK(fs::exists(base_a / "runs" /
                         (std::string(leaf).substr(0, std::string(leaf).size() - 4) +
                          ".summary.csv")));
    }
    fs::remove_all(dir);
}

TEST_CASE("aggregates are plain means over the successful runs") {
    const ExperimentResult result = run_experiment(small_sweep(), 4);
    REQUIRE(result.summary.size() == 2);
    std::size_t next = 0;
    for (const AggregateRow& row : result.summary) {
        CHECK(row.runs == 2);
        double duration = 0, victims = 0, injured = 0, healthy = 0;
        for (int r = 0; r < 2; ++r, ++next) {
            const RunResult& rr = *result.runs[next].result;
            duration += static_cast<double>(rr.evac_duration_s);
            victims += static_cast<double>(rr.victims);
            injured += static_cast<double>(rr.injured);
            healthy += static_cast<double>(rr.injury_histogram[0]);
        }
        CHECK(row.mean_evac_duration_s == doctest::Approx(duration / 2).epsilon(1e-12));
        CHECK(row.mean_victims == doctest::Approx(victims / 2).epsilon(1e-12));
        CHECK(row.mean_injured == doctest::Approx(injured / 2).epsilon(1e-12));
        CHECK(row.mean_healthy == doctest::Approx(healthy / 2).epsilon(1e-12));
    }
}

TEST_CASE("one impossible run does not sink the sweep") {
    ExperimentSpec spec;
    spec.name = "overflow";
    spec.base.population = 50;
    spec.axis = "population";
    spec.values = {"50", "100000000"};  // the second cannot fit on the map
    spec.base_seed = 3;

    const ExperimentResult result = run_experiment(spec, 2);
    REQUIRE(result.runs.size() == 2);
    CHECK(result.runs[0].result.has_value());
    CHECK(!result.runs[1].result.has_value());
    CHECK(!result.runs[1].error.empty());

    REQUIRE(result.summary.size() == 2);
    CHECK(result.summary[0].runs == 1);
    CHECK(result.summary[1].runs == 0);

    const fs::path dir = fs::temp_directory_path() / "evacsim_failed_run_test";
    fs::remove_all(dir);
    write_experiment(result, dir.string());
    CHECK(fs::exists(dir / "overflow" / "runs" / "50_0.csv"));
    CHECK(!fs::exists(dir / "overflow" / "runs" / "100000000_0.csv"));
    CHECK(fs::exists(dir / "overflow" / "summary.csv"));
    fs::remove_all(dir);
}

TEST_CASE("summary csv carries one row per value") {
    const ExperimentResult result = run_experiment(small_sweep(), 2);
    const std::string text = summary_csv_text(result);
    std::istringstream in(text);
    std::string line;
    REQUIRE(std::getline(in, line));
    CHECK(line == "value,runs,mean_evac_duration_s,mean_victims,mean_injured,mean_healthy");
    REQUIRE(std::getline(in, line));
    CHECK(line.rfind("0,2,", 0) == 0);
    REQUIRE(std::getline(in, line));
    CHECK(line.rfind("30,2,", 0) == 0);
    CHECK(!std::getline(in, line));
}

TEST_CASE("experiment spec files parse, with and without a base scenario") {
    const std::string text = "name = my-sweep\n"
                             "axis = aware_fraction\n"
                             "values = 50, 75, 100\n"
                             "repeats = 2\n"
                             "seed = 99\n";
    const ExperimentSpec spec = parse_experiment_spec(text);
    CHECK(spec.name == "my-sweep");
    CHECK(spec.axis == "aware_fraction");
    CHECK(spec.values == std::vector<std::string>{"50", "75", "100"});
    CHECK(spec.repeats_per_value == 2);
    CHECK(spec.base_seed == 99);
    CHECK(spec.base.population == 30000);  // bundled baseline

    CHECK_THROWS_AS(parse_experiment_spec("axis = population\n"), ConfigError);
    CHECK_THROWS_AS(parse_experiment_spec("name = x\nvalues = 1\n"), ConfigError);
    CHECK_THROWS_AS(parse_experiment_spec("name = x\naxis = population\nvalues = 1\n"
                                          "bogus_key = 1\n"),
                    ConfigError);
}

TEST_CASE("experiment spec base= pulls in a scenario file") {
    const fs::path dir = fs::temp_directory_path() / "evacsim_spec_base_test";
    fs::remove_all(dir);
    fs::create_directories(dir);
    {
        std::ofstream out(dir / "base.cfg");
        out << "population = 123\naware_fraction = 80\n";
    }
    {
        std::ofstream out(dir / "sweep.cfg");
        out << "name = based\naxis = panic_fraction\nvalues = 0, 10\nbase = base.cfg\n";
    }
    const ExperimentSpec spec = load_experiment_file((dir / "sweep.cfg").string());
    CHECK(spec.base.population == 123);
    CHECK(spec.base.aware_fraction == 80.0);
    fs::remove_all(dir);
}
