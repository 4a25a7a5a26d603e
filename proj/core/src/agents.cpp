#include "evacsim/agents.hpp"

#include <string>

#include "evacsim/errors.hpp"

namespace evacsim {

std::vector<Agent> spawn_population(PatchGrid& grid, const SpawnParams& params, Rng& rng) {
    std::vector<Agent> agents;
    if (params.population == 0) return agents;

    // One slot per free unit of capacity on reachable interior patches; a
    // uniform draw over slots is then uniform over patches (equal capacities).
    std::vector<std::int32_t> slots;
    for (int y = 0; y < grid.height; ++y) {
        for (int x = 0; x < grid.width; ++x) {
            const int idx = grid.index(x, y);
            if (grid.kind[idx] != PatchKind::Inside) continue;
            if (grid.combined_distance[idx] == kUnreachable) continue;
            for (int s = 0; s < grid.capacity_inside; ++s) slots.push_back(idx);
        }
    }
    if (params.population > static_cast<std::int64_t>(slots.size()))
        throw SimError("population " + std::to_string(params.population) +
                       " exceeds interior capacity " + std::to_string(slots.size()));

    agents.reserve(static_cast<std::size_t>(params.population));
    for (std::int64_t i = 0; i < params.population; ++i) {
        // partial Fisher-Yates: draw the i-th slot from the untouched tail
        const std::size_t j =
            static_cast<std::size_t>(i) + rng.uniform_int(slots.size() - static_cast<std::size_t>(i));
        std::swap(slots[static_cast<std::size_t>(i)], slots[j]);
        const int idx = slots[static_cast<std::size_t>(i)];

        Agent a;
        a.id = static_cast<std::int32_t>(i);
        a.pos = Coord{idx % grid.width, idx / grid.width};
        a.aware = rng.bernoulli(params.aware_fraction / 100.0);
        a.panicking = rng.bernoulli(params.panic_fraction / 100.0);
        if (a.panicking) a.panic_amount = 1.0 - rng.next_double();  // (0, 1]
        a.demo.sex = rng.bernoulli(params.female_fraction / 100.0) ? Sex::Female : Sex::Male;
        const double age = rng.next_double() * 100.0;
        if (age < params.adult_fraction)
            a.demo.age = AgeClass::Adult;
        else if (age < params.adult_fraction + params.elderly_fraction)
            a.demo.age = AgeClass::Elderly;
        else
            a.demo.age = AgeClass::Child;
        ++grid.occupancy[idx];
        agents.push_back(a);
    }
    return agents;
}

bool effective_rational(const Agent& agent, Rng& rng) {
    if (!agent.panicking) return true;
    return rng.bernoulli(1.0 - agent.panic_amount);
}

} // namespace evacsim
