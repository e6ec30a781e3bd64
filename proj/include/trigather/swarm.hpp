#pragma once

#include <cstdint>
#include <span>
#include <unordered_map>
#include <utility>
#include <vector>

#include "trigather/grid.hpp"
#include "trigather/rules.hpp"

namespace trigather {

/// A multiset of robot positions. Robots carry internal ids 0..n-1 used only
/// for trace attribution and scheduler fairness; the rules never read them.
class GlobalState {
public:
    GlobalState() = default;
    explicit GlobalState(std::vector<Coord> robots);

    std::size_t size() const { return robots_.size(); }
    bool empty() const { return robots_.empty(); }
    Coord position(std::size_t robot_id) const { return robots_[robot_id]; }
    std::span<const Coord> positions() const { return robots_; }

    bool occupied(Coord c) const { return occupancy_.contains(c); }
    std::int64_t count(Coord c) const {
        const auto it = occupancy_.find(c);
        return it == occupancy_.end() ? 0 : it->second;
    }
    const std::unordered_map<Coord, std::int64_t, CoordHash>& occupancy() const {
        return occupancy_;
    }

    void add_robot(Coord c);

    /// Moves one robot along an edge, in place. The destination may already
    /// be occupied; positions are a multiset.
    void displace(std::size_t robot_id, Direction d);

    /// Puts a robot at an arbitrary vertex. Trace replay applies recorded
    /// destinations directly so that monitors can judge forged traces too.
    void set_position(std::size_t robot_id, Coord to);

    friend bool operator==(const GlobalState&, const GlobalState&) = default;

private:
    std::vector<Coord> robots_;
    std::unordered_map<Coord, std::int64_t, CoordHash> occupancy_;
};

/// Positions sorted as a canonical multiset key (robot identity quotiented
/// out; the rules are id-blind so this is sound).
std::vector<Coord> canonical_positions(const GlobalState& state);

/// Pure copy-and-move; `displace` is its in-place core.
GlobalState apply_move(const GlobalState& state, std::size_t robot_id, Direction d);

/// What the robot at `c` sees in `state`: one boolean per adjacent vertex.
View neighborhood_view(const GlobalState& state, Coord c);

struct VisibilityGraph {
    std::vector<Coord> vertices;                 // distinct occupied vertices
    std::vector<std::pair<Coord, Coord>> edges;  // unordered, first < second
};

VisibilityGraph visibility_graph(const GlobalState& state);

/// Connectivity of the graph induced by occupied vertices (co-located robots
/// collapse onto one vertex).
bool is_connected(const GlobalState& state);

bool is_gathered(const GlobalState& state);

struct Extents {
    std::int64_t y_top;
    std::int64_t y_bottom;
    std::int64_t x_min;
    std::int64_t x_max;
};

Extents extents(const GlobalState& state);

GlobalState mirror_state(const GlobalState& state, std::int64_t axis_x);

} // namespace trigather
