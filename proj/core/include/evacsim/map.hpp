#pragma once

#include <string>
#include <vector>

namespace evacsim {

/// Rectangular character map of the square.
///   '#' wall   '.' walkable interior   'O' obstacle   ' ' outside
///   '0'..'9'   numbered exit gate
/// Rows are stored top to bottom; every row has the same length.
struct MapSpec {
    std::vector<std::string> rows;

    int width() const { return rows.empty() ? 0 : static_cast<int>(rows.front().size()); }
    int height() const { return static_cast<int>(rows.size()); }
};

/// Parse map text.  Shorter lines are right-padded with spaces (outside).
/// Throws MapError on an illegal character (reported with row/col) or if the
/// text contains no cells at all.
MapSpec parse_map(const std::string& text);

/// Canonical text form: padded rows joined with '\n', trailing newline.
std::string serialize_map(const MapSpec& map);

/// Read and parse a map file.  Throws IoError if unreadable.
MapSpec load_map_file(const std::string& path);

/// Grow walls outward by `layers` rings.  Interior and obstacle cells next to
/// a wall become wall; gates and outside cells are left alone so openings
/// survive the dilation.
MapSpec dilate_walls(const MapSpec& map, int layers);

/// The map compiled into the library: the 200x150 square with six perimeter
/// gates and the central statue.  Used whenever a scenario names no map file.
const char* bundled_map_text();
MapSpec bundled_map();

/// Same square with the north-west gate sealed (gates renumbered 0..4).
/// Shipped as data/maps/san_carlo_no_north.map for sensitivity runs.

} // namespace evacsim
