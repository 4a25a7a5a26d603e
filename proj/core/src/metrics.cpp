#include "evacsim/metrics.hpp"

#include "evacsim/engine.hpp"
#include "evacsim/errors.hpp"

namespace evacsim {

TickRecord record_tick(const SimState& state) {
    TickRecord rec;
    rec.tick = state.tick;
    rec.evac_speed = state.exits_this_tick;
    rec.inside_count = state.inside_count();
    rec.injury_counts = state.injury_histogram;

    double sum = 0.0;
    std::int64_t walkers = 0;
    for (const std::int32_t id : state.active_ids) {
        const Agent& a = state.agents[static_cast<std::size_t>(id)];
        if (a.health == HealthLevel::Fatal) continue;
        sum += a.speed;
        ++walkers;
    }
    rec.avg_speed = walkers > 0 ? sum / static_cast<double>(walkers) : 0.0;
    return rec;
}

KpiSummary kpi_summary(const std::vector<TickRecord>& series,
                       std::optional<std::int64_t> alarm_tick) {
    if (series.empty()) throw SimError("cannot summarise an empty tick series");
    const TickRecord& last = series.back();
    KpiSummary kpi;
    kpi.final_histogram = last.injury_counts;
    kpi.victims = last.injury_counts[level(HealthLevel::Fatal)];
    for (int lvl = level(HealthLevel::Minor); lvl <= level(HealthLevel::Critical); ++lvl)
        kpi.injured += last.injury_counts[lvl];
    if (alarm_tick && last.tick > *alarm_tick) kpi.evac_duration_s = last.tick - *alarm_tick;
    return kpi;
}

} // namespace evacsim
