#include "evacsim/csv.hpp"

#include <charconv>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "evacsim/errors.hpp"

namespace evacsim {

std::string format_number(double value) {
    char buf[64];
    auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, value, std::chars_format::general, 6);
    (void)ec;
    return std::string(buf, ptr);
}

std::string format_number(std::int64_t value) {
    char buf[32];
    auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, value);
    (void)ec;
    return std::string(buf, ptr);
}

const char* const kRunCsvHeader =
    "tick,avg_speed,evac_speed,inside_count,healthy,minor,moderate,serious,severe,critical,fatal";

std::string run_csv_text(const RunResult& result) {
    std::string out(kRunCsvHeader);
    out += '\n';
    for (const TickRecord& rec : result.series) {
        out += format_number(rec.tick);
        out += ',';
        out += format_number(rec.avg_speed);
        out += ',';
        out += format_number(rec.evac_speed);
        out += ',';
        out += format_number(rec.inside_count);
        for (const std::int64_t count : rec.injury_counts) {
            out += ',';
            out += format_number(count);
        }
        out += '\n';
    }
    return out;
}

std::string run_summary_text(const RunResult& result) {
    std::string out("key,value\n");
    const auto kv = [&out](const char* key, std::int64_t value) {
        out += key;
        out += ',';
        out += format_number(value);
        out += '\n';
    };
    kv("ticks", result.ticks);
    kv("alarm_tick", result.alarm_tick.value_or(-1));
    kv("evac_duration_s", result.evac_duration_s);
    kv("truncated", result.truncated ? 1 : 0);
    kv("victims", result.victims);
    kv("injured", result.injured);
    kv("healthy", result.injury_histogram[level(HealthLevel::Healthy)]);
    std::int64_t exits = 0;
    for (const std::int64_t g : result.gate_exits) exits += g;
    kv("exits_total", exits);
    for (std::size_t g = 0; g < result.gate_exits.size(); ++g)
        kv(("gate_exits_" + format_number(static_cast<std::int64_t>(g))).c_str(),
           result.gate_exits[g]);
    return out;
}

namespace {

std::string summary_path_for(const std::string& path) {
    static const std::string ext = ".csv";
    if (path.size() > ext.size() && path.compare(path.size() - ext.size(), ext.size(), ext) == 0)
        return path.substr(0, path.size() - ext.size()) + ".summary.csv";
    return path + ".summary.csv";
}

void write_text_file(const std::string& path, const std::string& text) {
    const std::filesystem::path parent = std::filesystem::path(path).parent_path();
    std::error_code ec;
    if (!parent.empty()) std::filesystem::create_directories(parent, ec);
    if (ec) throw IoError("cannot create directory " + parent.string() + ": " + ec.message());
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) throw IoError("cannot open for writing: " + path);
    out << text;
    if (!out) throw IoError("write failed: " + path);
}

} // namespace

void write_run_csv(const RunResult& result, const std::string& path) {
    write_text_file(path, run_csv_text(result));
    write_text_file(summary_path_for(path), run_summary_text(result));
}

std::vector<TickRecord> read_run_csv(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw IoError("cannot open csv: " + path);
    std::string line;
    if (!std::getline(in, line)) throw ConfigError("empty csv: " + path);
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line != kRunCsvHeader) throw ConfigError("unexpected csv header in " + path);

    std::vector<TickRecord> rows;
    int lineno = 1;
    while (std::getline(in, line)) {
        ++lineno;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.empty()) continue;
        std::array<std::string, 11> fields;
        std::size_t field = 0, start = 0;
        for (std::size_t i = 0; i <= line.size(); ++i) {
            if (i == line.size() || line[i] == ',') {
                if (field >= fields.size())
                    throw ConfigError(path + ":" + format_number(static_cast<std::int64_t>(lineno)) +
                                      ": too many columns");
                fields[field++] = line.substr(start, i - start);
                start = i + 1;
            }
        }
        if (field != fields.size())
            throw ConfigError(path + ":" + format_number(static_cast<std::int64_t>(lineno)) +
                              ": expected 11 columns");
        const auto to_i64 = [&](const std::string& s) {
            std::int64_t v = 0;
            auto [p, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
            if (ec != std::errc{} || p != s.data() + s.size())
                throw ConfigError(path + ": bad integer '" + s + "'");
            return v;
        };
        TickRecord rec;
        rec.tick = to_i64(fields[0]);
        {
            double v = 0.0;
            auto [p, ec] = std::from_chars(fields[1].data(), fields[1].data() + fields[1].size(), v);
            if (ec != std::errc{} || p != fields[1].data() + fields[1].size())
                throw ConfigError(path + ": bad number '" + fields[1] + "'");
            rec.avg_speed = v;
        }
        rec.evac_speed = to_i64(fields[2]);
        rec.inside_count = to_i64(fields[3]);
        for (int lvl = 0; lvl < kHealthLevels; ++lvl)
            rec.injury_counts[lvl] = to_i64(fields[4 + lvl]);
        rows.push_back(rec);
    }
    return rows;
}

} // namespace evacsim
