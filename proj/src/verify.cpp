#include "trigather/verify.hpp"

#include <algorithm>
#include <stdexcept>
#include <unordered_set>

namespace trigather {

namespace {

/// Replays a trace by applying recorded destinations, validating only that
/// each event names the robot where the trace last left it. Semantic rules
/// are judged by the monitors, so forged traces replay too.
class TraceReplayer {
public:
    explicit TraceReplayer(const Trace& trace) : trace_(trace), state_(trace.initial_state) {}

    const GlobalState& state() const { return state_; }

    void apply(std::size_t i) {
        const TraceEvent& ev = trace_.events[i];
        if (ev.robot_id >= state_.size())
            throw std::invalid_argument("malformed trace: event " + std::to_string(i) +
                                        " names robot " + std::to_string(ev.robot_id));
        if (!(state_.position(ev.robot_id) == ev.from))
            throw std::invalid_argument("malformed trace: event " + std::to_string(i) +
                                        " does not start at the robot's position");
        if (ev.to) state_.set_position(ev.robot_id, *ev.to);
    }

private:
    const Trace& trace_;
    GlobalState state_;
};

/// Multiset of integer keys with O(log) updates and O(1) extrema.
class ExtremaTracker {
public:
    void add(std::int64_t k) { ++hist_[k]; }
    void remove(std::int64_t k) {
        auto it = hist_.find(k);
        if (--it->second == 0) hist_.erase(it);
    }
    std::int64_t min() const { return hist_.begin()->first; }
    std::int64_t max() const { return hist_.rbegin()->first; }

private:
    std::map<std::int64_t, std::int64_t> hist_;
};

bool fresh_view_scheduler(Scheduler s) { return s != Scheduler::AsyncStale; }

} // namespace

MonitorReport check_connectivity(const Trace& trace) {
    MonitorReport r{.monitor = "connectivity"};
    TraceReplayer rp(trace);
    if (!is_connected(rp.state())) r.fail(-1, "initial state is disconnected");
    std::size_t checked = 0;
    for (std::size_t i = 0; i < trace.events.size() && r.passed; ++i) {
        rp.apply(i);
        ++checked;
        if (!is_connected(rp.state()))
            r.fail(static_cast<std::int64_t>(i), "visibility graph disconnected after event " +
                                                     std::to_string(i));
    }
    r.statistics["eventsChecked"] = static_cast<double>(checked);
    return r;
}

MonitorReport check_polygon(const Trace& trace) {
    MonitorReport r{.monitor = "polygon"};
    const BoundingPolygon poly = bounding_polygon(trace.initial_state.positions());
    for (const Coord c : trace.initial_state.positions())
        if (!polygon_contains(poly, c))
            r.fail(-1, "initial robot " + to_string(c) + " outside its own polygon");
    TraceReplayer rp(trace);
    for (std::size_t i = 0; i < trace.events.size() && r.passed; ++i) {
        rp.apply(i);
        const auto& to = trace.events[i].to;
        if (!to) continue;
        if (!polygon_contains(poly, *to))
            r.fail(static_cast<std::int64_t>(i),
                   "robot stepped out of the tight polygon at " + to_string(*to));
        else if (!loose_polygon_contains(poly, *to))
            r.fail(static_cast<std::int64_t>(i),
                   "robot stepped out of the loose polygon at " + to_string(*to));
    }
    r.statistics["events"] = static_cast<double>(trace.events.size());
    return r;
}

MonitorReport check_slants(const Trace& trace) {
    MonitorReport r{.monitor = "slants"};
    ExtremaTracker neg_keys, pos_keys;
    for (const Coord c : trace.initial_state.positions()) {
        const auto k = slant_keys(c);
        neg_keys.add(k.neg_key);
        pos_keys.add(k.pos_key);
    }
    const std::int64_t neg_min = neg_keys.min();
    const std::int64_t pos_min = pos_keys.min();
    TraceReplayer rp(trace);
    for (std::size_t i = 0; i < trace.events.size() && r.passed; ++i) {
        rp.apply(i);
        const TraceEvent& ev = trace.events[i];
        if (!ev.to) continue;
        const auto from_k = slant_keys(ev.from);
        const auto to_k = slant_keys(*ev.to);
        neg_keys.remove(from_k.neg_key);
        neg_keys.add(to_k.neg_key);
        pos_keys.remove(from_k.pos_key);
        pos_keys.add(to_k.pos_key);
        if (neg_keys.min() != neg_min || pos_keys.min() != pos_min)
            r.fail(static_cast<std::int64_t>(i),
                   "a bottom slant changed after event " + std::to_string(i));
    }
    // Constant slant keys pin the predicted gathering vertex at every event.
    r.statistics["negKeyMin"] = static_cast<double>(neg_min);
    r.statistics["posKeyMin"] = static_cast<double>(pos_min);
    return r;
}

MonitorReport check_layers(const Trace& trace) {
    MonitorReport r{.monitor = "layers"};
    // Per-event monotonicity of the extreme layers holds for fresh views. A
    // stale snapshot may lawfully send a robot onto a column vacated after
    // the snapshot was taken, so async traces are held to the weaker bound:
    // never beyond the initial layers.
    const bool monotone = fresh_view_scheduler(trace.config.scheduler);
    ExtremaTracker xs;
    for (const Coord c : trace.initial_state.positions()) xs.add(c.x);
    const std::int64_t x_min_initial = xs.min();
    const std::int64_t x_max_initial = xs.max();
    std::int64_t x_min = x_min_initial;
    std::int64_t x_max = x_max_initial;
    std::uint64_t retreats = 0;
    TraceReplayer rp(trace);
    for (std::size_t i = 0; i < trace.events.size() && r.passed; ++i) {
        rp.apply(i);
        const TraceEvent& ev = trace.events[i];
        if (!ev.to) continue;
        xs.remove(ev.from.x);
        xs.add(ev.to->x);
        if (ev.to->x < x_min_initial)
            r.fail(static_cast<std::int64_t>(i), "robot left of the initial left layer "
                                                 "after event " + std::to_string(i));
        if (ev.to->x > x_max_initial)
            r.fail(static_cast<std::int64_t>(i), "robot right of the initial right layer "
                                                 "after event " + std::to_string(i));
        if (xs.min() < x_min || xs.max() > x_max) {
            ++retreats;
            if (monotone)
                r.fail(static_cast<std::int64_t>(i),
                       "a layer moved outward after event " + std::to_string(i));
        }
        x_min = xs.min();
        x_max = xs.max();
    }
    r.statistics["monotoneAsserted"] = monotone ? 1.0 : 0.0;
    r.statistics["layerRetreats"] = static_cast<double>(retreats);
    return r;
}

MonitorReport check_round_progress(const Trace& trace) {
    MonitorReport r{.monitor = "round-progress"};
    const bool asserted = fresh_view_scheduler(trace.config.scheduler);
    const std::size_t n = trace.initial_state.size();

    // Round segments come from the engine-assigned indices; the monitor
    // re-validates their shape: indices count up from zero, every segment
    // but the last activates all n robots, and the trace's round total
    // matches.
    std::uint64_t expected_round = 0;
    std::vector<char> covered(n, 0);
    std::size_t covered_count = 0;
    std::uint64_t complete_segments = 0;
    bool trailing_partial = false;

    ExtremaTracker ys;
    for (const Coord c : trace.initial_state.positions()) ys.add(c.y);
    std::int64_t round_start_top = ys.max();
    std::int64_t min_drop = std::numeric_limits<std::int64_t>::max();

    auto close_segment = [&](std::size_t last_event, bool complete) {
        if (complete) {
            ++complete_segments;
            const std::int64_t drop = round_start_top - ys.max();
            min_drop = std::min(min_drop, drop);
            if (asserted && drop < 1)
                r.fail(static_cast<std::int64_t>(last_event),
                       "top layer did not drop during round " +
                           std::to_string(expected_round));
        } else {
            trailing_partial = true;
        }
        round_start_top = ys.max();
        std::fill(covered.begin(), covered.end(), 0);
        covered_count = 0;
    };

    TraceReplayer rp(trace);
    for (std::size_t i = 0; i < trace.events.size() && r.passed; ++i) {
        const TraceEvent& ev = trace.events[i];
        if (ev.round_index != expected_round) {
            if (ev.round_index != expected_round + 1 || covered_count != n) {
                r.fail(static_cast<std::int64_t>(i),
                       "round indices are not a complete greedy cover at event " +
                           std::to_string(i));
                break;
            }
            close_segment(i - 1, true);
            ++expected_round;
        }
        rp.apply(i);
        if (ev.robot_id < n && !covered[ev.robot_id]) {
            covered[ev.robot_id] = 1;
            ++covered_count;
        }
        if (ev.to) {
            ys.remove(ev.from.y);
            ys.add(ev.to->y);
        }
    }
    if (r.passed && !trace.events.empty())
        close_segment(trace.events.size() - 1, covered_count == n);

    const std::uint64_t recomputed = complete_segments + (trailing_partial ? 1 : 0);
    if (r.passed && recomputed != trace.rounds)
        r.fail(-1, "round accounting mismatch: trace says " + std::to_string(trace.rounds) +
                       ", events say " + std::to_string(recomputed));

    r.statistics["completedRounds"] = static_cast<double>(complete_segments);
    r.statistics["asserted"] = asserted ? 1.0 : 0.0;
    if (min_drop != std::numeric_limits<std::int64_t>::max())
        r.statistics["minTopLayerDrop"] = static_cast<double>(min_drop);
    return r;
}

MonitorReport check_convergence(const Trace& trace) {
    MonitorReport r{.monitor = "convergence"};
    const std::size_t n = trace.initial_state.size();
    const BoundingPolygon poly = bounding_polygon(trace.initial_state.positions());
    const PolygonMetrics metrics = polygon_metrics(poly);
    const auto budget = static_cast<std::uint64_t>(2 * n);

    if (trace.outcome != Outcome::Gathered)
        r.fail(-1, "outcome is " + to_string(trace.outcome) + ", not gathered");
    else if (!is_gathered(trace.final_state))
        r.fail(-1, "final state is not gathered");
    else if (!(trace.final_state.position(0) == poly.gather))
        r.fail(-1, "gathered at " + to_string(trace.final_state.position(0)) +
                       " instead of " + to_string(poly.gather));

    if (metrics.total_depth > static_cast<std::int64_t>(budget))
        r.fail(-1, "polygon depth " + std::to_string(metrics.total_depth) +
                       " exceeds 2n = " + std::to_string(budget));

    const bool asserted = fresh_view_scheduler(trace.config.scheduler);
    if (asserted && trace.rounds > budget)
        r.fail(-1, "took " + std::to_string(trace.rounds) + " rounds, budget 2n = " +
                       std::to_string(budget));
    // The looser historical budget is implied by 2n but tracked anyway.
    if (asserted && 2 * trace.rounds > static_cast<std::uint64_t>(5 * (n + 1)))
        r.fail(-1, "took " + std::to_string(trace.rounds) + " rounds, above 2.5(n+1)");

    r.statistics["rounds"] = static_cast<double>(trace.rounds);
    r.statistics["roundBudget"] = static_cast<double>(budget);
    r.statistics["roundsOverBudget"] =
        budget == 0 ? 0.0 : static_cast<double>(trace.rounds) / static_cast<double>(budget);
    r.statistics["totalDepth"] = static_cast<double>(metrics.total_depth);
    r.statistics["roundBoundAsserted"] = asserted ? 1.0 : 0.0;
    return r;
}

MonitorReport check_potential(const Trace& trace) {
    MonitorReport r{.monitor = "potential"};
    std::uint64_t moves = 0;
    for (std::size_t i = 0; i < trace.events.size() && r.passed; ++i) {
        const TraceEvent& ev = trace.events[i];
        if (!ev.to) continue;
        ++moves;
        if (ev.to->y >= ev.from.y)
            r.fail(static_cast<std::int64_t>(i),
                   "move did not lower the robot at event " + std::to_string(i));
    }
    r.statistics["moves"] = static_cast<double>(moves);
    return r;
}

std::vector<MonitorReport> run_all_monitors(const Trace& trace) {
    return {check_connectivity(trace), check_polygon(trace),   check_slants(trace),
            check_layers(trace),       check_round_progress(trace),
            check_potential(trace),    check_convergence(trace)};
}

std::size_t StateGraph::edge_count() const {
    std::size_t total = 0;
    for (const auto& out : edges) total += out.size();
    return total;
}

std::optional<std::size_t> StateGraph::find_node(const std::vector<Coord>& canonical) const {
    const auto it = node_index.find(canonical);
    if (it == node_index.end()) return std::nullopt;
    return it->second;
}

StateGraph build_state_graph(const GlobalState& initial, Algorithm a, std::size_t node_cap) {
    StateGraph g;
    g.algorithm = a;
    auto intern = [&](std::vector<Coord> canonical) {
        const auto it = g.node_index.find(canonical);
        if (it != g.node_index.end()) return it->second;
        const std::size_t id = g.nodes.size();
        g.node_index.emplace(canonical, id);
        g.nodes.push_back(std::move(canonical));
        g.edges.emplace_back();
        return id;
    };
    g.initial_node = intern(canonical_positions(initial));

    for (std::size_t id = 0; id < g.nodes.size(); ++id) {
        const std::vector<Coord> node = g.nodes[id]; // copy: nodes may reallocate
        const GlobalState gs(node);
        for (std::size_t k = 0; k < node.size(); ++k) {
            if (k > 0 && node[k] == node[k - 1]) continue; // one probe per vertex
            const Coord mover = node[k];
            const auto mv = move_of(classify(neighborhood_view(gs, mover), a));
            if (!mv) continue;
            std::vector<Coord> next = node;
            next[k] = neighbor(mover, *mv);
            std::sort(next.begin(), next.end());
            const std::size_t target = intern(std::move(next));
            if (g.nodes.size() > node_cap)
                throw std::runtime_error("state graph node cap exceeded: " +
                                         std::to_string(g.nodes.size()) + " nodes, " +
                                         std::to_string(g.edge_count()) + " edges so far");
            g.edges[id].push_back(StateGraph::Edge{mover, *mv, target});
        }
    }
    return g;
}

MonitorReport check_lattice_linearity(const StateGraph& graph) {
    MonitorReport r{.monitor = "lattice-linearity"};
    const Coord q = predict_gathering_point(graph.nodes[graph.initial_node]);

    auto enabled_at = [&](const GlobalState& gs, Coord c) {
        return move_enabled(neighborhood_view(gs, c), graph.algorithm);
    };
    auto sum_y = [](const std::vector<Coord>& node) {
        std::int64_t s = 0;
        for (const Coord c : node) s += c.y;
        return s;
    };

    std::size_t persistence_states = 0;
    std::size_t adjacency_checks = 0;

    for (std::size_t id = 0; id < graph.nodes.size() && r.passed; ++id) {
        const auto& node = graph.nodes[id];
        const GlobalState gs(node);
        const bool gathered = is_gathered(gs);

        // (a) progress, and closure of the gathered states.
        if (gathered) {
            if (!graph.edges[id].empty())
                r.fail(-1, "gathered state has an outgoing move (node " + std::to_string(id) + ")");
            else if (!(node.front() == q))
                r.fail(-1, "terminal state gathered at " + to_string(node.front()) +
                               " instead of " + to_string(q));
        } else if (graph.edges[id].empty()) {
            r.fail(-1, "non-gathered state is deadlocked (node " + std::to_string(id) + ")");
        }

        // Every move strictly lowers the total height, so the graph is
        // acyclic and (c) reduces to the sink checks above.
        for (const auto& edge : graph.edges[id])
            if (sum_y(graph.nodes[edge.target]) >= sum_y(node))
                r.fail(-1, "move failed to lower the swarm (node " + std::to_string(id) + ")");

        // Revised rule set: an enabled robot freezes its whole neighborhood.
        if (graph.algorithm == Algorithm::Revised) {
            for (std::size_t i = 0; i < node.size() && r.passed; ++i) {
                if (i > 0 && node[i] == node[i - 1]) continue;
                if (!enabled_at(gs, node[i])) continue;
                for (const Direction d : kAllDirections) {
                    const Coord other = neighbor(node[i], d);
                    ++adjacency_checks;
                    if (gs.occupied(other) && enabled_at(gs, other))
                        r.fail(-1, "adjacent robots both enabled at " + to_string(node[i]) +
                                       " and " + to_string(other));
                }
            }
        }

        // (b) an enabled robot stays enabled while any other robots move.
        for (std::size_t i = 0; i < node.size() && r.passed; ++i) {
            if (i > 0 && node[i] == node[i - 1]) continue;
            const Coord pinned = node[i];
            if (!enabled_at(gs, pinned)) continue;

            std::unordered_set<std::vector<Coord>, CoordVecHash> seen{node};
            std::vector<std::vector<Coord>> stack{node};
            while (!stack.empty() && r.passed) {
                const std::vector<Coord> cur = stack.back();
                stack.pop_back();
                ++persistence_states;
                const GlobalState cur_state(cur);
                if (!enabled_at(cur_state, pinned)) {
                    r.fail(-1, "robot at " + to_string(pinned) +
                                   " lost enabledness while others moved (node " +
                                   std::to_string(id) + ")");
                    break;
                }
                for (std::size_t k = 0; k < cur.size(); ++k) {
                    if (k > 0 && cur[k] == cur[k - 1]) continue;
                    const Coord mover = cur[k];
                    const std::int64_t movable =
                        cur_state.count(mover) - (mover == pinned ? 1 : 0);
                    if (movable <= 0) continue;
                    const auto mv =
                        move_of(classify(neighborhood_view(cur_state, mover), graph.algorithm));
                    if (!mv) continue;
                    std::vector<Coord> next = cur;
                    next[k] = neighbor(mover, *mv);
                    std::sort(next.begin(), next.end());
                    if (seen.insert(next).second) stack.push_back(next);
                }
            }
        }
    }

    r.statistics["nodes"] = static_cast<double>(graph.nodes.size());
    r.statistics["edges"] = static_cast<double>(graph.edge_count());
    r.statistics["persistenceStates"] = static_cast<double>(persistence_states);
    r.statistics["adjacencyChecks"] = static_cast<double>(adjacency_checks);
    return r;
}

std::vector<std::vector<Coord>> enumerate_connected_configs(std::size_t max_n,
                                                            std::int64_t radius) {
    // Supports grow one adjacent vertex at a time; every connected set has a
    // connected subset one smaller, so the growth covers all of them. Sets
    // are canonicalized by translating the lexicographically first vertex to
    // the origin.
    auto canonical = [](std::vector<Coord> set) {
        std::sort(set.begin(), set.end());
        const Coord base = set.front();
        for (Coord& c : set) c = {c.x - base.x, c.y - base.y};
        return set;
    };
    auto fits_ball = [&](const std::vector<Coord>& set) {
        for (const Coord center : set) {
            bool ok = true;
            for (const Coord c : set)
                if (grid_distance(center, c) > radius) {
                    ok = false;
                    break;
                }
            if (ok) return true;
        }
        return false;
    };

    std::vector<std::vector<Coord>> supports{{Coord{0, 0}}};
    std::unordered_set<std::vector<Coord>, CoordVecHash> seen{supports.front()};
    std::size_t level_begin = 0;
    for (std::size_t size = 1; size < max_n; ++size) {
        const std::size_t level_end = supports.size();
        for (std::size_t i = level_begin; i < level_end; ++i) {
            const std::vector<Coord> base = supports[i];
            for (const Coord v : base)
                for (const Direction d : kAllDirections) {
                    const Coord u = neighbor(v, d);
                    if (std::find(base.begin(), base.end(), u) != base.end()) continue;
                    std::vector<Coord> grown = base;
                    grown.push_back(u);
                    grown = canonical(std::move(grown));
                    if (!fits_ball(grown)) continue;
                    if (seen.insert(grown).second) supports.push_back(std::move(grown));
                }
        }
        level_begin = level_end;
    }

    // Distribute multiplicities: every support of size k yields one config
    // per way of assigning counts >= 1 with total <= max_n.
    std::vector<std::vector<Coord>> configs;
    for (const auto& support : supports) {
        std::vector<std::size_t> counts(support.size(), 1);
        std::size_t total = support.size();
        auto emit = [&] {
            std::vector<Coord> config;
            config.reserve(total);
            for (std::size_t i = 0; i < support.size(); ++i)
                for (std::size_t k = 0; k < counts[i]; ++k) config.push_back(support[i]);
            configs.push_back(std::move(config));
        };
        auto distribute = [&](auto&& self, std::size_t pos) -> void {
            if (pos == support.size()) {
                emit();
                return;
            }
            for (counts[pos] = 1; total <= max_n; ++counts[pos], ++total) {
                self(self, pos + 1);
            }
            total -= counts[pos] - 1;
            counts[pos] = 1;
        };
        distribute(distribute, 0);
    }
    return configs;
}

MonitorReport check_stale_equivalence(const StateGraph& graph, const Trace& trace) {
    MonitorReport r{.monitor = "stale-containment"};
    if (canonical_positions(trace.initial_state) != graph.nodes[graph.initial_node]) {
        r.fail(-1, "trace and graph start from different states");
        return r;
    }
    TraceReplayer rp(trace);
    std::size_t visited = 0;
    for (std::size_t i = 0; i < trace.events.size() && r.passed; ++i) {
        rp.apply(i);
        if (!trace.events[i].to) continue;
        ++visited;
        if (!graph.find_node(canonical_positions(rp.state())))
            r.fail(static_cast<std::int64_t>(i),
                   "async execution reached a state outside the fresh-view graph");
    }
    r.statistics["statesChecked"] = static_cast<double>(visited);
    r.statistics["graphNodes"] = static_cast<double>(graph.nodes.size());
    return r;
}

} // namespace trigather
