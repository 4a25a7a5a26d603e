#include <doctest.h>

#include <cmath>
#include <map>

#include "evacsim/behavior.hpp"
#include "evacsim/engine.hpp"
#include "evacsim/errors.hpp"

using namespace evacsim;

namespace {

ScenarioConfig empty_config() {
    ScenarioConfig c;
    c.population = 0;
    return c;
}

// Drop an agent into a hand-built state, bypassing the random spawn.
Agent& add_agent(SimState& state, Coord pos) {
    Agent a;
    a.id = static_cast<std::int32_t>(state.agents.size());
    a.pos = pos;
    a.speed = 1.35;
    state.agents.push_back(a);
    state.active_ids.push_back(a.id);
    ++state.grid.occupancy[state.grid.index(pos)];
    ++state.injury_histogram[level(HealthLevel::Healthy)];
    return state.agents.back();
}

const char* kCorridor = "#########\n"
                        "#.......0\n"
                        "#########\n";

} // namespace

TEST_CASE("wander stays half the time") {
    SimState state = init_run(empty_config(), 21, bundled_map());
    Agent& a = add_agent(state, Coord{100, 40});
    std::int64_t stayed = 0, moved = 0;
    for (int i = 0; i < 10000; ++i) {
        const MoveOutcome out = wander(state, a);
        if (out == MoveOutcome::Stayed) ++stayed;
        if (out == MoveOutcome::Moved) ++moved;
    }
    CHECK(stayed + moved == 10000);
    CHECK(std::abs(stayed - 5000) <= 200);  // 0.5 +- 0.02
}

TEST_CASE("wander with everything full is Blocked, never Moved") {
    const MapSpec map = parse_map("####\n"
                                  "#..0\n"
                                  "####\n");
    SimState state = init_run(empty_config(), 3, map);
    Agent& a = add_agent(state, Coord{1, 1});
    state.grid.occupancy[state.grid.index(2, 1)] = 7;  // the only neighbour
    for (int i = 0; i < 200; ++i) {
        const MoveOutcome out = wander(state, a);
        CHECK((out == MoveOutcome::Stayed || out == MoveOutcome::Blocked));
        CHECK(a.pos == Coord{1, 1});
    }
}

TEST_CASE("wander takes the only open neighbour when it moves") {
    const MapSpec map = parse_map("####\n"
                                  "#..0\n"
                                  "####\n");
    SimState state = init_run(empty_config(), 4, map);
    Agent& a = add_agent(state, Coord{1, 1});
    state.grid.occupancy[state.grid.index(2, 1)] = 6;  // one space left
    bool moved = false;
    for (int i = 0; i < 100 && !moved; ++i) {
        if (wander(state, a) == MoveOutcome::Moved) {
            moved = true;
            CHECK(a.pos == Coord{2, 1});
            CHECK(state.grid.occupancy[state.grid.index(2, 1)] == 7);
            CHECK(state.grid.occupancy[state.grid.index(1, 1)] == 0);
        }
    }
    CHECK(moved);
}

TEST_CASE("alarm routes the aware to their nearest gate") {
    ScenarioConfig c = empty_config();
    c.population = 2000;
    c.aware_fraction = 100;
    SimState state = init_run(c, 17);
    trigger_alarm(state);
    CHECK(state.alarm_triggered);
    CHECK(state.alarm_tick == 0);
    for (const Agent& a : state.agents) {
        CHECK(a.escaping);
        CHECK(a.move_credit == 0.0);
        CHECK(a.destination == nearest_gate(state.grid, a.pos).gate);
    }
}

TEST_CASE("alarm hands the unaware a uniformly random gate") {
    ScenarioConfig c = empty_config();
    c.population = 60000;
    c.aware_fraction = 0;
    SimState state = init_run(c, 23);
    trigger_alarm(state);
    std::map<int, std::int64_t> dest;
    for (const Agent& a : state.agents) ++dest[a.destination];
    REQUIRE(dest.size() == 6);
    for (const auto& [gate, count] : dest) {
        CHECK(gate >= 0);
        CHECK(gate < 6);
        CHECK(std::abs(count - 10000) <= 600);  // 1/6 +- 0.01
    }
}

TEST_CASE("double alarm is rejected, empty alarm is a no-op") {
    SimState state = init_run(empty_config(), 1);
    trigger_alarm(state);
    CHECK(state.alarm_triggered);
    CHECK_THROWS_AS(trigger_alarm(state), SimError);
}

TEST_CASE("slipping needs glass on the ground") {
    ScenarioConfig c = empty_config();
    c.glass_bottles = false;
    c.slipping_chance = 100;
    SimState state = init_run(c, 5, parse_map(kCorridor));
    Agent& a = add_agent(state, Coord{1, 1});
    for (int i = 0; i < 100; ++i) CHECK(!try_slip(state, a));
    // and no random draws were burnt on it
    CHECK(state.rng.next_u64() == Rng(5).next_u64());
}

TEST_CASE("slip frequency matches slipping_chance") {
    ScenarioConfig c = empty_config();
    c.slipping_chance = 1;  // percent per tick
    SimState state = init_run(c, 6, parse_map(kCorridor));
    Agent& a = add_agent(state, Coord{1, 1});
    std::int64_t slips = 0;
    for (int i = 0; i < 100000; ++i) slips += try_slip(state, a);
    CHECK(std::abs(slips - 1000) <= 200);  // 0.01 +- 0.002

    c.slipping_chance = 100;
    SimState certain = init_run(c, 7, parse_map(kCorridor));
    Agent& b = add_agent(certain, Coord{1, 1});
    for (int i = 0; i < 100; ++i) CHECK(try_slip(certain, b));
}

TEST_CASE("move_person walks the corridor and exits through the gate") {
    SimState state = init_run(empty_config(), 8, parse_map(kCorridor));
    Agent& a = add_agent(state, Coord{1, 1});
    a.escaping = true;
    a.destination = 0;

    for (int x = 1; x < 8; ++x) {
        CHECK(move_person(state, a) == MoveOutcome::Moved);
        CHECK(a.pos == Coord{x + 1, 1});
    }
    CHECK(a.pos == Coord{8, 1});
    CHECK(state.grid.kind_at(a.pos) == PatchKind::Gate);
    CHECK(state.grid.occupancy[state.grid.index(8, 1)] == 1);

    // standing in the doorway: the next evaluation leaves
    CHECK(move_person(state, a) == MoveOutcome::Exited);
    CHECK(!a.inside);
    CHECK(state.evacuated == 1);
    CHECK(state.gate_exits[0] == 1);
    CHECK(state.grid.total_occupancy() == 0);
}

TEST_CASE("move_person refuses a full gate") {
    SimState state = init_run(empty_config(), 9, parse_map(kCorridor));
    Agent& a = add_agent(state, Coord{7, 1});
    a.escaping = true;
    a.destination = 0;
    state.grid.occupancy[state.grid.index(8, 1)] = 3;  // gate at restricted capacity

    // the only open neighbour is farther from the gate, so nobody retreats
    for (int i = 0; i < 1000; ++i) {
        REQUIRE(move_person(state, a) == MoveOutcome::Blocked);
        CHECK(a.pos == Coord{7, 1});
    }
}

TEST_CASE("blocked ahead, a sidestep keeps the same gate distance half the time") {
    const MapSpec map = parse_map("#####\n"
                                  "#..0#\n"
                                  "#..##\n"
                                  "#####\n");
    SimState state = init_run(empty_config(), 10, map);
    Agent& a = add_agent(state, Coord{1, 1});
    a.escaping = true;
    a.destination = 0;
    // both distance-1 cells filled; (1,2) keeps distance 2, nothing improves
    state.grid.occupancy[state.grid.index(2, 1)] = 7;
    state.grid.occupancy[state.grid.index(2, 2)] = 7;

    std::int64_t moved = 0, blocked = 0;
    for (int i = 0; i < 2000; ++i) {
        a.pos = Coord{1, 1};
        const MoveOutcome out = move_person(state, a);
        if (out == MoveOutcome::Moved) {
            CHECK(a.pos == Coord{1, 2});
            ++moved;
            --state.grid.occupancy[state.grid.index(1, 2)];
            ++state.grid.occupancy[state.grid.index(1, 1)];
        } else {
            CHECK(out == MoveOutcome::Blocked);
            ++blocked;
        }
    }
    CHECK(moved + blocked == 2000);
    CHECK(std::abs(moved - 1000) <= 135);  // 3 sigma on p = 0.5
}

TEST_CASE("move_person picks uniformly among equally close cells") {
    // gate to the east; (2,1) and (2,3) are both one diagonal step closer
    const MapSpec map = parse_map("#####\n"
                                  "#...#\n"
                                  "#..0#\n"
                                  "#...#\n"
                                  "#####\n");
    SimState state = init_run(empty_config(), 11, map);
    Agent& a = add_agent(state, Coord{1, 2});
    a.escaping = true;
    a.destination = 0;
    state.grid.occupancy[state.grid.index(2, 2)] = 7;  // straight ahead is full

    std::map<int, int> chosen;
    for (int i = 0; i < 2000; ++i) {
        a.pos = Coord{1, 2};
        REQUIRE(move_person(state, a) == MoveOutcome::Moved);
        ++chosen[state.grid.index(a.pos)];
        --state.grid.occupancy[state.grid.index(a.pos)];
        ++state.grid.occupancy[state.grid.index(1, 2)];
    }
    REQUIRE(chosen.size() == 2);
    CHECK(chosen.count(state.grid.index(2, 1)) == 1);
    CHECK(chosen.count(state.grid.index(2, 3)) == 1);
    for (const auto& [idx, count] : chosen) CHECK(std::abs(count - 1000) <= 135);
}

TEST_CASE("follow_crowd exits through an adjacent gate with room") {
    SimState state = init_run(empty_config(), 12, parse_map(kCorridor));
    Agent& a = add_agent(state, Coord{7, 1});
    CHECK(follow_crowd(state, a) == MoveOutcome::Exited);
    CHECK(!a.inside);
    CHECK(state.gate_exits[0] == 1);
    CHECK(state.grid.total_occupancy() == 0);
}

TEST_CASE("follow_crowd ignores a full gate and chases the crowd") {
    const MapSpec map = parse_map("#####\n"
                                  "#...#\n"
                                  "#..0#\n"
                                  "#...#\n"
                                  "#####\n");
    SimState state = init_run(empty_config(), 13, map);
    Agent& a = add_agent(state, Coord{2, 2});
    state.grid.occupancy[state.grid.index(3, 2)] = 3;  // gate full
    state.grid.occupancy[state.grid.index(1, 1)] = 5;  // the biggest crowd
    state.grid.occupancy[state.grid.index(1, 3)] = 2;

    CHECK(follow_crowd(state, a) == MoveOutcome::Moved);
    CHECK(a.pos == Coord{1, 1});
}

TEST_CASE("follow_crowd breaks crowd ties uniformly") {
    const MapSpec map = parse_map("#####\n"
                                  "#...#\n"
                                  "#..0#\n"
                                  "#...#\n"
                                  "#####\n");
    SimState state = init_run(empty_config(), 14, map);
    Agent& a = add_agent(state, Coord{2, 2});
    state.grid.occupancy[state.grid.index(3, 2)] = 3;  // gate full
    state.grid.occupancy[state.grid.index(1, 1)] = 4;
    state.grid.occupancy[state.grid.index(1, 3)] = 4;

    std::map<int, int> chosen;
    for (int i = 0; i < 2000; ++i) {
        a.pos = Coord{2, 2};
        REQUIRE(follow_crowd(state, a) == MoveOutcome::Moved);
        ++chosen[state.grid.index(a.pos)];
        --state.grid.occupancy[state.grid.index(a.pos)];
        ++state.grid.occupancy[state.grid.index(2, 2)];
    }
    REQUIRE(chosen.size() == 2);
    for (const auto& [idx, count] : chosen) CHECK(std::abs(count - 1000) <= 135);
}

TEST_CASE("follow_crowd with every neighbour full is Blocked") {
    const MapSpec map = parse_map("####\n"
                                  "#..0\n"
                                  "####\n");
    SimState state = init_run(empty_config(), 15, map);
    Agent& a = add_agent(state, Coord{1, 1});
    state.grid.occupancy[state.grid.index(2, 1)] = 7;
    CHECK(follow_crowd(state, a) == MoveOutcome::Blocked);
    CHECK(a.pos == Coord{1, 1});
}

TEST_CASE("exits are tallied per gate and per tick") {
    SimState state = init_run(empty_config(), 16, parse_map(kCorridor));
    add_agent(state, Coord{7, 1});
    add_agent(state, Coord{6, 1});
    exit_agent(state, state.agents[0], 0);
    exit_agent(state, state.agents[1], 0);
    CHECK(state.evacuated == 2);
    CHECK(state.exits_this_tick == 2);
    CHECK(state.gate_exits[0] == 2);
    CHECK(state.inside_count() == 0);
}
