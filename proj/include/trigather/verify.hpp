#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <unordered_map>
#include <vector>

#include "trigather/engine.hpp"
#include "trigather/grid.hpp"

namespace trigather {

struct Violation {
    std::int64_t event_index = -1; // -1 when not tied to a single event
    std::string description;
};

struct MonitorReport {
    std::string monitor;
    bool passed = true;
    std::optional<Violation> first_violation;
    std::map<std::string, double> statistics;

    void fail(std::int64_t event_index, std::string description) {
        if (!passed) return;
        passed = false;
        first_violation = Violation{event_index, std::move(description)};
    }
};

/// Visibility graph stays connected after every event.
MonitorReport check_connectivity(const Trace& trace);

/// No robot ever leaves the tight polygon of the initial state (nor, a
/// fortiori, the loose one).
MonitorReport check_polygon(const Trace& trace);

/// The two bottom slant keys are constant across the whole trace, so the
/// predicted gathering vertex never changes.
MonitorReport check_slants(const Trace& trace);

/// Left layer never moves left, right layer never moves right.
MonitorReport check_layers(const Trace& trace);

/// The top layer drops by at least one doubled unit per completed round.
/// Asserted for fresh-view schedulers; informational for async-stale traces.
MonitorReport check_round_progress(const Trace& trace);

/// Outcome is gathered at the predicted vertex; for fresh-view schedulers
/// rounds stay within 2n (async traces report the ratio without asserting).
MonitorReport check_convergence(const Trace& trace);

/// The sum over robots of (y - Q.y) never increases, and strictly decreases
/// at every move event.
MonitorReport check_potential(const Trace& trace);

/// Every monitor above, in a fixed order.
std::vector<MonitorReport> run_all_monitors(const Trace& trace);

struct CoordVecHash {
    std::size_t operator()(const std::vector<Coord>& v) const {
        std::uint64_t h = 0x51ED270B30C93E5Bull;
        for (const Coord c : v) h = mix64(h ^ CoordHash{}(c));
        return static_cast<std::size_t>(h);
    }
};

/// Exhaustive reachable-state graph under single-robot fresh-view moves,
/// with robot identity quotiented out (states are sorted multisets).
struct StateGraph {
    struct Edge {
        Coord mover;
        Direction move;
        std::size_t target;
    };

    Algorithm algorithm = Algorithm::Gsgs;
    std::vector<std::vector<Coord>> nodes; // canonical sorted multisets
    std::vector<std::vector<Edge>> edges;  // out-edges per node
    std::size_t initial_node = 0;
    std::unordered_map<std::vector<Coord>, std::size_t, CoordVecHash> node_index;

    std::size_t edge_count() const;
    std::optional<std::size_t> find_node(const std::vector<Coord>& canonical) const;
};

/// BFS over all single-robot moves from the initial state. Throws when the
/// node cap is exceeded, reporting the partial node/edge counts.
StateGraph build_state_graph(const GlobalState& initial, Algorithm a,
                             std::size_t node_cap = 1'000'000);

/// Checks, over the whole graph: (a) every non-gathered state has an enabled
/// robot, (b) an enabled robot stays enabled under any interleaving of other
/// robots' moves, (c) every maximal path ends gathered at the predicted
/// vertex. For the revised rule set it additionally checks that no two
/// adjacent robots are simultaneously enabled.
MonitorReport check_lattice_linearity(const StateGraph& graph);

/// Every state visited by a trace (typically async-stale) is a node of the
/// fresh-view reachable graph of the same initial state.
MonitorReport check_stale_equivalence(const StateGraph& graph, const Trace& trace);

/// All connected robot configurations of up to max_n robots whose support
/// fits in a radius ball, deduplicated up to translation. Multiplicities are
/// included: stacked robots are placements too.
std::vector<std::vector<Coord>> enumerate_connected_configs(std::size_t max_n,
                                                            std::int64_t radius);

} // namespace trigather
