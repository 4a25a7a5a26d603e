#pragma once

#include <cstdint>
#include <vector>

#include "evacsim/rng.hpp"
#include "evacsim/world.hpp"

namespace evacsim {

enum class Sex : std::uint8_t { Female, Male };
enum class AgeClass : std::uint8_t { Adult, Elderly, Child };

/// Injury ladder.  Levels only ever go up; Fatal is absorbing.
enum class HealthLevel : std::uint8_t {
    Healthy = 0,
    Minor = 1,
    Moderate = 2,
    Serious = 3,
    Severe = 4,
    Critical = 5,
    Fatal = 6,
};
constexpr int kHealthLevels = 7;
inline int level(HealthLevel h) { return static_cast<int>(h); }

struct Demographics {
    Sex sex = Sex::Male;
    AgeClass age = AgeClass::Adult;
};

struct Agent {
    std::int32_t id = 0;
    Coord pos;
    Demographics demo;
    bool aware = false;
    bool panicking = false;
    double panic_amount = 0.0;  // in (0,1] iff panicking, else 0
    bool escaping = false;
    std::int32_t destination = -1;  // gate id, set iff escaping
    HealthLevel health = HealthLevel::Healthy;
    double speed = 0.0;        // metres per second, see health.hpp
    double move_credit = 0.0;  // banked patch steps
    std::int32_t blocked_ticks = 0;  // consecutive ticks spent fully boxed in
    bool inside = true;
};

struct SpawnParams {
    std::int64_t population = 0;
    double aware_fraction = 50.0;  // percentages
    double panic_fraction = 0.0;
    double female_fraction = 50.0;
    double adult_fraction = 80.0;
    double elderly_fraction = 10.0;
    double children_fraction = 10.0;
};

/// Place `population` agents uniformly over the reachable interior, never
/// exceeding patch capacity, and roll the demographic attributes per agent.
/// Updates grid occupancy.  Throws SimError if the interior cannot hold the
/// population.  Draw order per agent: position, aware, panicking,
/// panic_amount (panicking only), sex, age class.
std::vector<Agent> spawn_population(PatchGrid& grid, const SpawnParams& params, Rng& rng);

/// Per-tick rationality decision for an escaping agent: panicking agents act
/// rationally with probability 1 - panic_amount, everyone else always does.
/// Draws from rng only for panicking agents.
bool effective_rational(const Agent& agent, Rng& rng);

} // namespace evacsim
