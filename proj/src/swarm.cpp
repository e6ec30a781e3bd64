#include "trigather/swarm.hpp"

#include <algorithm>
#include <stdexcept>

namespace trigather {

GlobalState::GlobalState(std::vector<Coord> robots) : robots_(std::move(robots)) {
    for (const Coord c : robots_) {
        if (!valid_vertex(c))
            throw std::invalid_argument("odd-parity vertex " + to_string(c));
        ++occupancy_[c];
    }
}

void GlobalState::add_robot(Coord c) {
    if (!valid_vertex(c)) throw std::invalid_argument("odd-parity vertex " + to_string(c));
    robots_.push_back(c);
    ++occupancy_[c];
}

void GlobalState::displace(std::size_t robot_id, Direction d) {
    if (robot_id >= robots_.size()) throw std::out_of_range("invalid robot id");
    set_position(robot_id, neighbor(robots_[robot_id], d));
}

void GlobalState::set_position(std::size_t robot_id, Coord to) {
    if (robot_id >= robots_.size()) throw std::out_of_range("invalid robot id");
    if (!valid_vertex(to)) throw std::invalid_argument("odd-parity vertex " + to_string(to));
    const Coord from = robots_[robot_id];
    auto it = occupancy_.find(from);
    if (--it->second == 0) occupancy_.erase(it);
    ++occupancy_[to];
    robots_[robot_id] = to;
}

std::vector<Coord> canonical_positions(const GlobalState& state) {
    std::vector<Coord> sorted(state.positions().begin(), state.positions().end());
    std::sort(sorted.begin(), sorted.end());
    return sorted;
}

GlobalState apply_move(const GlobalState& state, std::size_t robot_id, Direction d) {
    GlobalState next = state;
    next.displace(robot_id, d);
    return next;
}

View neighborhood_view(const GlobalState& state, Coord c) {
    View v;
    for (const Direction d : kAllDirections)
        set_view_bit(v, d, state.occupied(neighbor(c, d)));
    return v;
}

VisibilityGraph visibility_graph(const GlobalState& state) {
    VisibilityGraph g;
    g.vertices.reserve(state.occupancy().size());
    for (const auto& [c, n] : state.occupancy()) g.vertices.push_back(c);
    std::sort(g.vertices.begin(), g.vertices.end());
    for (const Coord c : g.vertices)
        for (const Direction d : kAllDirections) {
            const Coord other = neighbor(c, d);
            if (c < other && state.occupied(other)) g.edges.emplace_back(c, other);
        }
    return g;
}

bool is_connected(const GlobalState& state) {
    if (state.empty()) throw std::invalid_argument("empty swarm");
    const auto& occ = state.occupancy();
    std::vector<Coord> stack{occ.begin()->first};
    std::unordered_map<Coord, bool, CoordHash> seen{{stack.front(), true}};
    while (!stack.empty()) {
        const Coord c = stack.back();
        stack.pop_back();
        for (const Direction d : kAllDirections) {
            const Coord other = neighbor(c, d);
            if (state.occupied(other) && !seen[other]) {
                seen[other] = true;
                stack.push_back(other);
            }
        }
    }
    std::size_t reached = 0;
    for (const auto& [c, flag] : seen) reached += flag ? 1 : 0;
    return reached == occ.size();
}

bool is_gathered(const GlobalState& state) {
    return state.occupancy().size() <= 1;
}

Extents extents(const GlobalState& state) {
    if (state.empty()) throw std::invalid_argument("empty swarm");
    Extents e{state.position(0).y, state.position(0).y, state.position(0).x,
              state.position(0).x};
    for (const Coord c : state.positions()) {
        e.y_top = std::max(e.y_top, c.y);
        e.y_bottom = std::min(e.y_bottom, c.y);
        e.x_min = std::min(e.x_min, c.x);
        e.x_max = std::max(e.x_max, c.x);
    }
    return e;
}

GlobalState mirror_state(const GlobalState& state, std::int64_t axis_x) {
    std::vector<Coord> mirrored;
    mirrored.reserve(state.size());
    for (const Coord c : state.positions()) mirrored.push_back(mirror_coord(c, axis_x));
    return GlobalState(std::move(mirrored));
}

} // namespace trigather
