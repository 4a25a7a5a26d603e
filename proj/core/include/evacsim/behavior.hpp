#pragma once

#include <cstdint>

#include "evacsim/agents.hpp"

namespace evacsim {

struct SimState;

enum class MoveOutcome : std::uint8_t {
    Moved,
    Stayed,   // wander chose to stand still
    Blocked,  // wanted to move, no admissible patch
    Slipped,
    Exited,
    Immobile,  // Fatal agents only
};

/// Pre-alarm milling about: stay put with probability 0.5, otherwise step to a
/// uniformly chosen traversable neighbour with free capacity (Blocked if all
/// full).
MoveOutcome wander(SimState& state, Agent& agent);

/// Fire the alarm: every agent starts escaping.  Warned agents head for their
/// nearest gate (lowest id on ties); the rest pick a gate uniformly at
/// random.  Movement credit is zeroed so the stampede starts from rest.
/// Throws SimError if the alarm already fired.
void trigger_alarm(SimState& state);

/// Slipping check for one escaping agent.  Only possible when the scenario
/// has glass bottles on the ground; draws from the run stream only then.
bool try_slip(SimState& state, Agent& agent);

/// One rational evacuation step: standing on a gate exits; otherwise move to
/// the admissible neighbour closest to the destination gate (uniform tie
/// break).  When no neighbour improves the distance, a sidestep to an
/// equal-distance patch is allowed with probability 0.5, else Blocked.
MoveOutcome move_person(SimState& state, Agent& agent);

/// One panicked step: exit through any adjacent gate with free capacity,
/// otherwise push towards the most crowded admissible neighbour (uniform tie
/// break); Blocked when everything around is full.
MoveOutcome follow_crowd(SimState& state, Agent& agent);

/// Remove an agent from the square through `gate` and update the exit
/// bookkeeping.
void exit_agent(SimState& state, Agent& agent, int gate);

} // namespace evacsim
