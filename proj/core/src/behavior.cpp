#include "evacsim/behavior.hpp"

#include "evacsim/engine.hpp"
#include "evacsim/errors.hpp"

namespace evacsim {

namespace {

// Uniform pick that spends a draw only when there is an actual choice.
std::size_t pick(Rng& rng, std::size_t count) {
    return count > 1 ? static_cast<std::size_t>(rng.uniform_int(count)) : 0;
}

void apply_move(SimState& state, Agent& agent, Coord to) {
    --state.grid.occupancy[state.grid.index(agent.pos)];
    ++state.grid.occupancy[state.grid.index(to)];
    agent.pos = to;
}

} // namespace

MoveOutcome wander(SimState& state, Agent& agent) {
    if (state.rng.bernoulli(0.5)) return MoveOutcome::Stayed;
    std::array<Coord, 8> nbr;
    int n = 0;
    traversable_neighbors(state.grid, agent.pos, nbr, n);
    std::array<Coord, 8> open;
    std::size_t count = 0;
    for (int i = 0; i < n; ++i)
        if (state.grid.has_free_capacity(state.grid.index(nbr[i]))) open[count++] = nbr[i];
    if (count == 0) return MoveOutcome::Blocked;
    apply_move(state, agent, open[pick(state.rng, count)]);
    return MoveOutcome::Moved;
}

void trigger_alarm(SimState& state) {
    if (state.alarm_triggered) throw SimError("alarm already triggered");
    state.alarm_triggered = true;
    state.alarm_tick = state.tick;
    for (const std::int32_t id : state.active_ids) {
        Agent& a = state.agents[static_cast<std::size_t>(id)];
        a.escaping = true;
        if (a.aware)
            a.destination = nearest_gate(state.grid, a.pos).gate;
        else
            a.destination = static_cast<std::int32_t>(
                state.rng.uniform_int(static_cast<std::uint64_t>(state.grid.num_gates)));
        a.move_credit = 0.0;  // the rush starts from rest
    }
}

bool try_slip(SimState& state, Agent& agent) {
    (void)agent;
    if (!state.config.glass_bottles) return false;
    return state.rng.bernoulli(state.config.slipping_chance / 100.0);
}

MoveOutcome move_person(SimState& state, Agent& agent) {
    PatchGrid& grid = state.grid;
    const int idx = grid.index(agent.pos);
    if (grid.kind[idx] == PatchKind::Gate) {
        const int gate = grid.gate_id[idx];
        exit_agent(state, agent, gate);
        return MoveOutcome::Exited;
    }

    std::array<Coord, 8> nbr;
    int n = 0;
    traversable_neighbors(grid, agent.pos, nbr, n);
    const auto& dist = grid.gate_distance[static_cast<std::size_t>(agent.destination)];

    std::array<Coord, 8> open;
    std::array<std::int32_t, 8> open_dist;
    std::size_t count = 0;
    std::int32_t best = kUnreachable;
    for (int i = 0; i < n; ++i) {
        const int nidx = grid.index(nbr[i]);
        if (!grid.has_free_capacity(nidx)) continue;
        open[count] = nbr[i];
        open_dist[count] = dist[nidx];
        best = std::min(best, open_dist[count]);
        ++count;
    }
    if (count == 0) return MoveOutcome::Blocked;

    const std::int32_t here = dist[idx];
    std::array<Coord, 8> cand;
    std::size_t ncand = 0;
    if (best < here) {
        for (std::size_t i = 0; i < count; ++i)
            if (open_dist[i] == best) cand[ncand++] = open[i];
    } else {
        // nothing ahead is free; sometimes slide along the contour
        if (!state.rng.bernoulli(0.5)) return MoveOutcome::Blocked;
        for (std::size_t i = 0; i < count; ++i)
            if (open_dist[i] == here) cand[ncand++] = open[i];
        if (ncand == 0) return MoveOutcome::Blocked;
    }
    apply_move(state, agent, cand[pick(state.rng, ncand)]);
    return MoveOutcome::Moved;
}

MoveOutcome follow_crowd(SimState& state, Agent& agent) {
    PatchGrid& grid = state.grid;
    std::array<Coord, 8> nbr;
    int n = 0;
    traversable_neighbors(grid, agent.pos, nbr, n);

    std::array<Coord, 8> gates;
    std::size_t ngates = 0;
    for (int i = 0; i < n; ++i) {
        const int nidx = grid.index(nbr[i]);
        if (grid.kind[nidx] == PatchKind::Gate && grid.has_free_capacity(nidx)) gates[ngates++] = nbr[i];
    }
    if (ngates > 0) {
        const Coord g = gates[pick(state.rng, ngates)];
        exit_agent(state, agent, grid.gate_id[grid.index(g)]);
        return MoveOutcome::Exited;
    }

    std::array<Coord, 8> open;
    std::size_t count = 0;
    int best = -1;
    for (int i = 0; i < n; ++i) {
        const int nidx = grid.index(nbr[i]);
        if (!grid.has_free_capacity(nidx)) continue;
        best = std::max(best, static_cast<int>(grid.occupancy[nidx]));
        open[count++] = nbr[i];
    }
    if (count == 0) return MoveOutcome::Blocked;
    std::array<Coord, 8> cand;
    std::size_t ncand = 0;
    for (std::size_t i = 0; i < count; ++i)
        if (grid.occupancy[grid.index(open[i])] == best) cand[ncand++] = open[i];
    apply_move(state, agent, cand[pick(state.rng, ncand)]);
    return MoveOutcome::Moved;
}

void exit_agent(SimState& state, Agent& agent, int gate) {
    --state.grid.occupancy[state.grid.index(agent.pos)];
    agent.inside = false;
    ++state.evacuated;
    ++state.gate_exits[static_cast<std::size_t>(gate)];
    ++state.exits_this_tick;
}

} // namespace evacsim
