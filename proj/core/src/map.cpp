#include "evacsim/map.hpp"

#include <fstream>
#include <sstream>

#include "evacsim/errors.hpp"

namespace evacsim {

namespace {

bool legal_char(char c) {
    return c == '#' || c == '.' || c == 'O' || c == ' ' || (c >= '0' && c <= '9');
}

} // namespace

MapSpec parse_map(const std::string& text) {
    MapSpec map;
    std::string line;
    std::istringstream in(text);
    std::size_t width = 0;
    int row = 0;
    while (std::getline(in, line)) {
        if (!line.empty() && line.back() == '\r') line.pop_back();
        for (std::size_t col = 0; col < line.size(); ++col) {
            if (!legal_char(line[col]))
                throw MapError("illegal map character '" + std::string(1, line[col]) +
                               "' at row " + std::to_string(row) + ", col " + std::to_string(col));
        }
        width = std::max(width, line.size());
        map.rows.push_back(line);
        ++row;
    }
    // drop trailing blank lines, then pad to a rectangle
    while (!map.rows.empty() && map.rows.back().empty()) map.rows.pop_back();
    if (map.rows.empty() || width == 0) throw MapError("map is empty");
    for (auto& r : map.rows) r.resize(width, ' ');
    return map;
}

std::string serialize_map(const MapSpec& map) {
    std::string out;
    out.reserve((map.width() + 1) * map.height());
    for (const auto& r : map.rows) {
        out += r;
        out += '\n';
    }
    return out;
}

MapSpec load_map_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw IoError("cannot open map file: " + path);
    std::ostringstream buf;
    buf << in.rdbuf();
    if (in.bad()) throw IoError("cannot read map file: " + path);
    return parse_map(buf.str());
}

MapSpec dilate_walls(const MapSpec& map, int layers) {
    MapSpec out = map;
    const int w = out.width(), h = out.height();
    for (int layer = 0; layer < layers; ++layer) {
        MapSpec prev = out;
        for (int y = 0; y < h; ++y) {
            for (int x = 0; x < w; ++x) {
                const char c = prev.rows[y][x];
                if (c != '.' && c != 'O') continue;  // gates and outside stay
                bool near_wall = false;
                for (int dy = -1; dy <= 1 && !near_wall; ++dy) {
                    for (int dx = -1; dx <= 1; ++dx) {
                        if (dx == 0 && dy == 0) continue;
                        const int nx = x + dx, ny = y + dy;
                        if (nx < 0 || nx >= w || ny < 0 || ny >= h) continue;
                        if (prev.rows[ny][nx] == '#') {
                            near_wall = true;
                            break;
                        }
                    }
                }
                if (near_wall) out.rows[y][x] = '#';
            }
        }
    }
    return out;
}

MapSpec bundled_map() { return parse_map(bundled_map_text()); }

} // namespace evacsim
