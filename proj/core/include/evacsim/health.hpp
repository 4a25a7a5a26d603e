#pragma once

#include <array>

#include "evacsim/agents.hpp"
#include "evacsim/rng.hpp"

namespace evacsim {

/// Crowd-crush injury model.  A patch filled beyond crowding_threshold can
/// escalate each occupant's injury by one level per tick with probability
///   injury_weight * (load - threshold) / (1 - threshold),
/// which reaches exactly injury_weight at load 1.
struct InjuryModelParams {
    double injury_weight = 0.1365;
    double crowding_threshold = 0.7;

    friend bool operator==(const InjuryModelParams&, const InjuryModelParams&) = default;
};

double escalation_probability(const InjuryModelParams& params, double load);

/// One escalation attempt for `agent` standing on a patch with the given
/// occupancy and capacity.  Fatal agents never change.  Returns true if the
/// level went up.
bool update_injury(Agent& agent, int occupancy, int capacity, const InjuryModelParams& params,
                   Rng& rng);

/// Walking speeds in metres per second.  Base speed depends on age class with
/// a female multiplier; injuries scale it down, Fatal to zero.  When
/// `enabled` is false everybody walks at the adult base speed regardless of
/// demographics and injuries (Fatal still stops).
struct SpeedModelParams {
    bool enabled = true;
    double adult = 1.35;
    double elderly = 0.9;
    double child = 1.1;
    double female_multiplier = 0.9;
    // Healthy .. Fatal; must be non-increasing, within [0,1], Fatal == 0.
    std::array<double, kHealthLevels> injury_multipliers{1.0, 0.9, 0.75, 0.5, 0.3, 0.1, 0.0};

    friend bool operator==(const SpeedModelParams&, const SpeedModelParams&) = default;
};

double base_speed(const Demographics& demo, const SpeedModelParams& params);

/// Recompute agent.speed from demographics and current health.
void update_speed(Agent& agent, const SpeedModelParams& params);

} // namespace evacsim
