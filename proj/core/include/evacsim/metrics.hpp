#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <vector>

#include "evacsim/agents.hpp"

namespace evacsim {

struct SimState;

/// One CSV row: state of the square after a completed tick.
struct TickRecord {
    std::int64_t tick = 0;       // 1-based tick index
    double avg_speed = 0.0;      // mean speed of non-Fatal agents still inside
    std::int64_t evac_speed = 0; // people who exited during this tick
    std::int64_t inside_count = 0;
    // Histogram over everyone ever spawned; evacuees keep their exit health.
    std::array<std::int64_t, kHealthLevels> injury_counts{};

    friend bool operator==(const TickRecord&, const TickRecord&) = default;
};

/// Snapshot the state after a tick.  Call exactly once per tick, after the
/// speed update.
TickRecord record_tick(const SimState& state);

struct KpiSummary {
    std::int64_t victims = 0;  // Fatal
    std::int64_t injured = 0;  // Minor..Critical
    std::int64_t evac_duration_s = 0;  // last tick minus alarm tick
    std::array<std::int64_t, kHealthLevels> final_histogram{};
};

/// Headline numbers from a recorded series.  Throws SimError on an empty
/// series.  alarm_tick empty means the alarm never fired (duration 0).
KpiSummary kpi_summary(const std::vector<TickRecord>& series,
                       std::optional<std::int64_t> alarm_tick);

} // namespace evacsim
