#pragma once

#include <string>
#include <vector>

#include "evacsim/engine.hpp"
#include "evacsim/numfmt.hpp"

namespace evacsim {

extern const char* const kRunCsvHeader;  // tick,avg_speed,...,fatal

/// Per-tick series as CSV text (header + one row per tick).
std::string run_csv_text(const RunResult& result);

/// KPI footer as CSV text (key,value rows).
std::string run_summary_text(const RunResult& result);

/// Write `<path>` with the tick series and `<path minus .csv>.summary.csv`
/// with the KPIs.  Creates parent directories.  Throws IoError.
void write_run_csv(const RunResult& result, const std::string& path);

/// Read back a tick-series CSV written by write_run_csv.  Used by tests and
/// aggregate checks.  Throws IoError / ConfigError on malformed input.
std::vector<TickRecord> read_run_csv(const std::string& path);

} // namespace evacsim
