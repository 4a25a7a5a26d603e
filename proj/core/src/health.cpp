#include "evacsim/health.hpp"

namespace evacsim {

double escalation_probability(const InjuryModelParams& params, double load) {
    if (load <= params.crowding_threshold) return 0.0;
    if (params.crowding_threshold >= 1.0) return 0.0;
    return params.injury_weight * (load - params.crowding_threshold) /
           (1.0 - params.crowding_threshold);
}

bool update_injury(Agent& agent, int occupancy, int capacity, const InjuryModelParams& params,
                   Rng& rng) {
    if (agent.health == HealthLevel::Fatal) return false;
    if (capacity <= 0) return false;
    const double load = static_cast<double>(occupancy) / capacity;
    const double p = escalation_probability(params, load);
    if (p <= 0.0) return false;
    if (!rng.bernoulli(p)) return false;
    agent.health = static_cast<HealthLevel>(level(agent.health) + 1);
    return true;
}

double base_speed(const Demographics& demo, const SpeedModelParams& params) {
    double speed = params.adult;
    if (demo.age == AgeClass::Elderly) speed = params.elderly;
    if (demo.age == AgeClass::Child) speed = params.child;
    if (demo.sex == Sex::Female) speed *= params.female_multiplier;
    return speed;
}

void update_speed(Agent& agent, const SpeedModelParams& params) {
    if (agent.health == HealthLevel::Fatal) {
        agent.speed = 0.0;
        return;
    }
    if (!params.enabled) {
        agent.speed = params.adult;  // uniform walking speed, demographics off
        return;
    }
    agent.speed = base_speed(agent.demo, params) * params.injury_multipliers[level(agent.health)];
}

} // namespace evacsim
