#include "evacsim/world.hpp"

#include <cmath>
#include <deque>
#include <numeric>

#include "evacsim/errors.hpp"

namespace evacsim {

namespace {

// Row-major scan order of the 3x3 neighbourhood.
constexpr int kDx[8] = {-1, 0, 1, -1, 1, -1, 0, 1};
constexpr int kDy[8] = {-1, -1, -1, 0, 0, 1, 1, 1};

PatchKind kind_of_char(char c) {
    switch (c) {
    case '#': return PatchKind::Wall;
    case '.': return PatchKind::Inside;
    case 'O': return PatchKind::Obstacle;
    case ' ': return PatchKind::Outside;
    default: return PatchKind::Gate;  // parse_map only lets digits through
    }
}

// Multi-source BFS over traversable patches; 8-connected, every step costs 1.
void fill_distance(const PatchGrid& grid, const std::vector<int>& sources,
                   std::vector<std::int32_t>& dist) {
    dist.assign(static_cast<std::size_t>(grid.width) * grid.height, kUnreachable);
    std::deque<int> queue;
    for (int idx : sources) {
        dist[idx] = 0;
        queue.push_back(idx);
    }
    while (!queue.empty()) {
        const int idx = queue.front();
        queue.pop_front();
        const int x = idx % grid.width, y = idx / grid.width;
        const std::int32_t next = dist[idx] + 1;
        for (int n = 0; n < 8; ++n) {
            const Coord c{x + kDx[n], y + kDy[n]};
            if (!grid.in_bounds(c) || !grid.traversable(c)) continue;
            const int nidx = grid.index(c);
            if (dist[nidx] <= next) continue;
            dist[nidx] = next;
            queue.push_back(nidx);
        }
    }
}

// Every cell of a gate must be one 8-connected piece.
void check_gate_connected(const PatchGrid& grid, int gate, const std::vector<int>& cells) {
    std::vector<char> seen(cells.size(), 0);
    std::deque<std::size_t> queue{0};
    seen[0] = 1;
    std::size_t reached = 1;
    while (!queue.empty()) {
        const int idx = cells[queue.front()];
        queue.pop_front();
        const int x = idx % grid.width, y = idx / grid.width;
        for (std::size_t j = 0; j < cells.size(); ++j) {
            if (seen[j]) continue;
            const int ox = cells[j] % grid.width, oy = cells[j] / grid.width;
            if (std::abs(ox - x) <= 1 && std::abs(oy - y) <= 1) {
                seen[j] = 1;
                ++reached;
                queue.push_back(j);
            }
        }
    }
    if (reached != cells.size())
        throw MapError("gate " + std::to_string(gate) + " is not a connected set of cells");
}

} // namespace

int patch_capacity(const CapacityPolicy& policy, PatchKind kind) {
    const double per_side = policy.scale / policy.people_dim;
    const int regular = std::max(1, static_cast<int>(std::floor(per_side * per_side)));
    switch (kind) {
    case PatchKind::Inside: return regular;
    case PatchKind::Gate:
        if (!policy.real_exits) return regular;
        return std::max(1, static_cast<int>(std::floor(policy.gate_restriction_factor * regular)));
    default: return 0;
    }
}

std::int64_t PatchGrid::total_occupancy() const {
    return std::accumulate(occupancy.begin(), occupancy.end(), std::int64_t{0});
}

PatchGrid build_grid(const MapSpec& map, const CapacityPolicy& policy) {
    PatchGrid grid;
    grid.width = map.width();
    grid.height = map.height();
    grid.policy = policy;
    const std::size_t cells = static_cast<std::size_t>(grid.width) * grid.height;
    grid.kind.resize(cells);
    grid.gate_id.assign(cells, -1);
    grid.occupancy.assign(cells, 0);
    grid.capacity_inside = patch_capacity(policy, PatchKind::Inside);
    grid.capacity_gate = patch_capacity(policy, PatchKind::Gate);

    std::vector<std::vector<int>> gate_cells(10);
    for (int y = 0; y < grid.height; ++y) {
        for (int x = 0; x < grid.width; ++x) {
            const char c = map.rows[y][x];
            const int idx = grid.index(x, y);
            grid.kind[idx] = kind_of_char(c);
            if (grid.kind[idx] == PatchKind::Gate) {
                const int id = c - '0';
                grid.gate_id[idx] = static_cast<std::int8_t>(id);
                gate_cells[id].push_back(idx);
            }
        }
    }

    int num_gates = 0;
    while (num_gates < 10 && !gate_cells[num_gates].empty()) ++num_gates;
    if (num_gates == 0) throw MapError("map has no gate");
    for (int g = num_gates; g < 10; ++g) {
        if (!gate_cells[g].empty())
            throw MapError("gate ids must be contiguous from 0; found gate " + std::to_string(g) +
                           " but not gate " + std::to_string(num_gates));
    }
    grid.num_gates = num_gates;
    for (int g = 0; g < num_gates; ++g) check_gate_connected(grid, g, gate_cells[g]);

    grid.gate_distance.resize(num_gates);
    for (int g = 0; g < num_gates; ++g) fill_distance(grid, gate_cells[g], grid.gate_distance[g]);
    grid.combined_distance.assign(cells, kUnreachable);
    for (std::size_t i = 0; i < cells; ++i) {
        for (int g = 0; g < num_gates; ++g)
            grid.combined_distance[i] = std::min(grid.combined_distance[i], grid.gate_distance[g][i]);
        if (grid.kind[i] == PatchKind::Inside && grid.combined_distance[i] == kUnreachable)
            ++grid.unreachable_inside;
    }
    return grid;
}

void traversable_neighbors(const PatchGrid& grid, Coord c, std::array<Coord, 8>& out, int& count) {
    count = 0;
    for (int n = 0; n < 8; ++n) {
        const Coord nc{c.x + kDx[n], c.y + kDy[n]};
        if (grid.in_bounds(nc) && grid.traversable(nc)) out[count++] = nc;
    }
}

NearestGate nearest_gate(const PatchGrid& grid, Coord c) {
    NearestGate best;
    const int idx = grid.index(c);
    for (int g = 0; g < grid.num_gates; ++g) {
        const std::int32_t d = grid.gate_distance[g][idx];
        if (d < best.distance) {
            best.distance = d;
            best.gate = g;
        }
    }
    return best;
}

} // namespace evacsim
