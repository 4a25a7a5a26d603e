#pragma once

#include <array>
#include <cstdint>
#include <functional>
#include <optional>
#include <vector>

#include "evacsim/agents.hpp"
#include "evacsim/metrics.hpp"
#include "evacsim/rng.hpp"
#include "evacsim/scenario.hpp"
#include "evacsim/world.hpp"

namespace evacsim {

/// Complete mutable state of one run.  One tick equals one second.
struct SimState {
    ScenarioConfig config;
    PatchGrid grid;
    std::vector<Agent> agents;            // index == agent id
    std::vector<std::int32_t> active_ids; // agents inside, ascending id
    std::int64_t tick = 0;                // completed ticks
    bool alarm_triggered = false;
    std::optional<std::int64_t> alarm_tick;  // tick the alarm actually fired
    std::int64_t evacuated = 0;
    std::int64_t fatal_in_place = 0;
    std::array<std::int64_t, kHealthLevels> injury_histogram{};
    std::vector<std::int64_t> gate_exits;  // cumulative, per gate
    std::int64_t exits_this_tick = 0;
    Rng rng{0};
    std::vector<std::int32_t> move_order;  // scratch for the per-tick shuffle

    std::int64_t population() const { return static_cast<std::int64_t>(agents.size()); }
    std::int64_t inside_count() const { return population() - evacuated; }
};

/// Build the grid (bundled map if the scenario names none), spawn the
/// population and set initial speeds.  Same config and seed give an identical
/// state.
SimState init_run(const ScenarioConfig& config, std::uint64_t seed);

/// Same, but with the map supplied directly instead of loaded from
/// config.map_path.
SimState init_run(const ScenarioConfig& config, std::uint64_t seed, const MapSpec& map);

/// Advance one second:
///   1. fire the alarm when its tick is reached
///   2. bank movement credit (speed / scale patch steps)
///   3. move agents in a fresh random order; escaping agents slip / walk out /
///      follow the crowd, the rest wander
///   4. crowd-crush injury escalation on the post-movement occupancy
///   5. recompute speeds
/// Fatal agents stay where they fell and keep occupying capacity.
void tick(SimState& state);

struct RunResult {
    std::int64_t ticks = 0;
    std::optional<std::int64_t> alarm_tick;
    std::int64_t evac_duration_s = 0;
    bool truncated = false;  // stopped by max_ticks, not by an empty square
    std::int64_t victims = 0;
    std::int64_t injured = 0;
    std::array<std::int64_t, kHealthLevels> injury_histogram{};
    std::vector<std::int64_t> gate_exits;
    std::vector<TickRecord> series;

    friend bool operator==(const RunResult&, const RunResult&) = default;
};

/// Invoked after every completed tick; used by tests to audit invariants.
using TickObserver = std::function<void(const SimState&)>;

/// Tick until no non-Fatal agent is left inside, or `max_ticks` is reached
/// (the result is then flagged truncated, which is not an error).  Records one
/// TickRecord per tick.
RunResult run_to_completion(SimState& state, std::int64_t max_ticks,
                            const TickObserver& observer = {});

/// Convenience: init_run + run_to_completion(config.max_ticks).
RunResult simulate(const ScenarioConfig& config, std::uint64_t seed,
                   const TickObserver& observer = {});

} // namespace evacsim
