#include "evacsim/engine.hpp"

#include <algorithm>
#include <numeric>

#include "evacsim/behavior.hpp"
#include "evacsim/errors.hpp"
#include "evacsim/health.hpp"

namespace evacsim {

namespace {

// An agent may bank at most one step beyond the one it can take now, so a
// long blockage never turns into a sprint.
constexpr double kCreditCap = 2.0;

// After this many consecutive boxed-in move attempts an escaping agent gives
// up on its current exit and heads for another one.  Ordinary queues churn
// fast enough that this never fires; it is a safety valve for a doorway
// walled off by casualties.
constexpr std::int32_t kGiveUpBlockedTicks = 50;

void reroute_jammed(SimState& state, Agent& a) {
    a.blocked_ticks = 0;
    const std::int32_t gates = state.grid.num_gates;
    if (gates < 2) return;
    std::int32_t pick = static_cast<std::int32_t>(
        state.rng.uniform_int(static_cast<std::uint64_t>(gates - 1)));
    if (pick >= a.destination) ++pick;
    a.destination = pick;
}

} // namespace

SimState init_run(const ScenarioConfig& config, std::uint64_t seed) {
    const MapSpec map = config.map_path.empty() ? bundled_map() : load_map_file(config.map_path);
    return init_run(config, seed, map);
}

SimState init_run(const ScenarioConfig& config, std::uint64_t seed, const MapSpec& map) {
    validate_scenario(config);
    SimState state;
    state.config = config;
    state.rng = Rng(seed);
    const MapSpec effective =
        config.wall_thickness > 0 ? dilate_walls(map, config.wall_thickness) : map;
    state.grid = build_grid(effective, config.capacity_policy());

    SpawnParams spawn;
    spawn.population = config.population;
    spawn.aware_fraction = config.aware_fraction;
    spawn.panic_fraction = config.panic_fraction;
    spawn.female_fraction = config.female_fraction;
    spawn.adult_fraction = config.adult_fraction;
    spawn.elderly_fraction = config.elderly_fraction;
    spawn.children_fraction = config.children_fraction;
    state.agents = spawn_population(state.grid, spawn, state.rng);

    state.active_ids.resize(state.agents.size());
    std::iota(state.active_ids.begin(), state.active_ids.end(), 0);
    for (Agent& a : state.agents) update_speed(a, config.speed);
    state.injury_histogram[level(HealthLevel::Healthy)] = state.population();
    state.gate_exits.assign(static_cast<std::size_t>(state.grid.num_gates), 0);
    return state;
}

void tick(SimState& state) {
    const ScenarioConfig& cfg = state.config;

    if (!state.alarm_triggered && state.tick == cfg.alarm_tick) trigger_alarm(state);

    for (const std::int32_t id : state.active_ids) {
        Agent& a = state.agents[static_cast<std::size_t>(id)];
        a.move_credit = std::min(a.move_credit + a.speed / cfg.scale, kCreditCap);
    }

    state.exits_this_tick = 0;
    state.move_order = state.active_ids;
    state.rng.shuffle(state.move_order);
    for (const std::int32_t id : state.move_order) {
        Agent& a = state.agents[static_cast<std::size_t>(id)];
        if (!a.inside) continue;
        if (a.health == HealthLevel::Fatal) continue;  // Immobile, keeps its patch
        if (!a.escaping) {
            wander(state, a);
            continue;
        }
        if (try_slip(state, a)) {
            a.move_credit = 0.0;  // a fall wastes the tick and the banked momentum
            continue;
        }
        if (state.grid.kind[state.grid.index(a.pos)] == PatchKind::Gate) {
            // stood in the doorway since last tick; stepping off the threshold
            // is not a patch move, so it costs no credit and cannot be blocked
            exit_agent(state, a, state.grid.gate_id[state.grid.index(a.pos)]);
            continue;
        }
        const bool rational = effective_rational(a, state.rng);
        while (a.move_credit >= 1.0) {
            const MoveOutcome out = rational ? move_person(state, a) : follow_crowd(state, a);
            if (out == MoveOutcome::Moved) {
                a.move_credit -= 1.0;
                a.blocked_ticks = 0;
                // reaching a doorway ends the turn; the exit happens next tick
                if (state.grid.kind[state.grid.index(a.pos)] == PatchKind::Gate) break;
                continue;
            }
            if (out == MoveOutcome::Blocked && ++a.blocked_ticks >= kGiveUpBlockedTicks)
                reroute_jammed(state, a);
            break;  // Blocked, or Exited through an adjacent gate
        }
    }
    std::erase_if(state.active_ids, [&](std::int32_t id) {
        return !state.agents[static_cast<std::size_t>(id)].inside;
    });

    for (const std::int32_t id : state.active_ids) {
        Agent& a = state.agents[static_cast<std::size_t>(id)];
        if (a.health == HealthLevel::Fatal) continue;
        const int idx = state.grid.index(a.pos);
        const HealthLevel before = a.health;
        if (update_injury(a, state.grid.occupancy[idx], state.grid.capacity_at(idx), cfg.injury,
                          state.rng)) {
            --state.injury_histogram[level(before)];
            ++state.injury_histogram[level(a.health)];
            if (a.health == HealthLevel::Fatal) ++state.fatal_in_place;
        }
    }

    for (const std::int32_t id : state.active_ids)
        update_speed(state.agents[static_cast<std::size_t>(id)], cfg.speed);

    ++state.tick;
}

RunResult run_to_completion(SimState& state, std::int64_t max_ticks, const TickObserver& observer) {
    RunResult result;
    const auto all_out = [&state] {
        return state.inside_count() - state.fatal_in_place == 0;
    };
    while (!all_out() && state.tick < max_ticks) {
        tick(state);
        result.series.push_back(record_tick(state));
        if (observer) observer(state);
    }
    result.truncated = !all_out();
    result.ticks = state.tick;
    result.alarm_tick = state.alarm_tick;
    result.injury_histogram = state.injury_histogram;
    result.gate_exits = state.gate_exits;
    if (!result.series.empty()) {
        const KpiSummary kpi = kpi_summary(result.series, state.alarm_tick);
        result.victims = kpi.victims;
        result.injured = kpi.injured;
        result.evac_duration_s = kpi.evac_duration_s;
    }
    return result;
}

RunResult simulate(const ScenarioConfig& config, std::uint64_t seed, const TickObserver& observer) {
    SimState state = init_run(config, seed);
    return run_to_completion(state, config.max_ticks, observer);
}

} // namespace evacsim
