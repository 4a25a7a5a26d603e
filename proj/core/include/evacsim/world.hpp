#pragma once

#include <array>
#include <cstdint>
#include <limits>
#include <vector>

#include "evacsim/map.hpp"

namespace evacsim {

enum class PatchKind : std::uint8_t { Inside, Wall, Gate, Obstacle, Outside };

struct Coord {
    int x = 0;
    int y = 0;
    friend bool operator==(const Coord&, const Coord&) = default;
};

/// How many people fit on a patch.  A patch is scale x scale metres and a
/// person occupies people_dim x people_dim; restricted gates (barriers in
/// place, real_exits = true) lose half their capacity.
struct CapacityPolicy {
    double scale = 2.0;        // metres per patch edge
    double people_dim = 0.75;  // metres per person edge
    bool real_exits = true;    // true: barriers restrict the gates
    double gate_restriction_factor = 0.5;

    friend bool operator==(const CapacityPolicy&, const CapacityPolicy&) = default;
};

constexpr std::int32_t kUnreachable = std::numeric_limits<std::int32_t>::max();

/// Immutable lattice (kinds, capacities, distance fields) plus the per-run
/// occupancy counters.  Everything except `occupancy` is fixed after
/// build_grid; an engine owns its grid copy and is the only writer of
/// occupancy.
struct PatchGrid {
    int width = 0;
    int height = 0;
    CapacityPolicy policy;
    std::vector<PatchKind> kind;       // row-major, size width*height
    std::vector<std::int8_t> gate_id;  // -1 unless kind == Gate
    std::vector<std::uint16_t> occupancy;
    int num_gates = 0;
    int capacity_inside = 0;
    int capacity_gate = 0;

    /// gate_distance[g][idx]: fewest patch steps (8-connected, diagonals count
    /// 1) from idx to any patch of gate g; kUnreachable if no path.
    std::vector<std::vector<std::int32_t>> gate_distance;
    /// combined_distance[idx] = min over gates.
    std::vector<std::int32_t> combined_distance;

    /// Interior cells with no path to any gate (spawning skips them).
    std::int64_t unreachable_inside = 0;

    int index(int x, int y) const { return y * width + x; }
    int index(Coord c) const { return c.y * width + c.x; }
    bool in_bounds(Coord c) const { return c.x >= 0 && c.x < width && c.y >= 0 && c.y < height; }
    PatchKind kind_at(Coord c) const { return kind[index(c)]; }
    bool traversable(Coord c) const {
        const PatchKind k = kind_at(c);
        return k == PatchKind::Inside || k == PatchKind::Gate;
    }
    int capacity_at(int idx) const {
        switch (kind[idx]) {
        case PatchKind::Inside: return capacity_inside;
        case PatchKind::Gate: return capacity_gate;
        default: return 0;
        }
    }
    bool has_free_capacity(int idx) const { return occupancy[idx] < capacity_at(idx); }

    std::int64_t total_occupancy() const;

    bool operator==(const PatchGrid&) const = default;
};

/// max(1, floor((scale / people_dim)^2)) for interior patches; gates get the
/// restricted value when real_exits is set.  Walls, obstacles and outside
/// cells hold nobody.
int patch_capacity(const CapacityPolicy& policy, PatchKind kind);

/// Build the lattice from a parsed map: assign kinds and capacities, then run
/// one multi-source BFS per gate (8-connected, unit cost) to fill the distance
/// fields.  Throws MapError if the map has no gate, a gap in the gate
/// numbering, or a gate whose cells are not one connected piece.  Interior
/// cells that cannot reach any gate are counted in `unreachable_inside`.
PatchGrid build_grid(const MapSpec& map, const CapacityPolicy& policy);

/// The up-to-8 in-bounds traversable neighbours of c, in row-major order
/// (NW, N, NE, W, E, SW, S, SE).
void traversable_neighbors(const PatchGrid& grid, Coord c, std::array<Coord, 8>& out, int& count);

struct NearestGate {
    int gate = -1;
    std::int32_t distance = kUnreachable;
};

/// Gate with the smallest distance from c; ties go to the lowest gate id.
NearestGate nearest_gate(const PatchGrid& grid, Coord c);

} // namespace evacsim
