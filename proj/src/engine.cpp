#include "trigather/engine.hpp"

#include <algorithm>
#include <numeric>
#include <stdexcept>

#include "trigather/rng.hpp"

namespace trigather {

std::string to_string(Scheduler s) {
    switch (s) {
    case Scheduler::Synchronous: return "synchronous";
    case Scheduler::Central:     return "central";
    case Scheduler::Distributed: return "distributed";
    case Scheduler::AsyncStale:  return "async-stale";
    }
    return "synchronous";
}

std::string to_string(RefreshPolicy p) {
    return p == RefreshPolicy::OnMove ? "on-move" : "on-evaluate";
}

std::string to_string(Algorithm a) { return a == Algorithm::Gsgs ? "gsgs" : "revised"; }

std::string to_string(Outcome o) {
    switch (o) {
    case Outcome::Gathered: return "gathered";
    case Outcome::StepCap:  return "step-cap";
    case Outcome::Stuck:    return "stuck";
    }
    return "stuck";
}

namespace {

/// Incrementally maintained fresh-view classification per occupied vertex.
/// A move only changes occupancy at its two endpoints, so at most fourteen
/// vertices need reclassifying, and the global silence test is O(1).
class EnabledIndex {
public:
    EnabledIndex(const GlobalState& state, Algorithm a) : algorithm_(a) {
        for (const auto& [c, n] : state.occupancy())
            cells_.try_emplace(c, Entry{n, Classification::Idle});
        for (const auto& [c, e] : cells_) reclassify(c);
    }

    bool silent() const { return enabled_cells_ == 0; }

    bool occupied(Coord c) const { return cells_.contains(c); }

    Classification at(Coord c) const { return cells_.at(c).cls; }

    View view(Coord c) const {
        View v;
        for (const Direction d : kAllDirections)
            set_view_bit(v, d, cells_.contains(neighbor(c, d)));
        return v;
    }

    void apply(Coord from, Coord to) {
        auto it = cells_.find(from);
        if (--it->second.count == 0) {
            if (move_enabled(it->second.cls)) --enabled_cells_;
            cells_.erase(it);
        }
        auto [jt, inserted] = cells_.try_emplace(to, Entry{0, Classification::Idle});
        ++jt->second.count;
        reclassify(from);
        reclassify(to);
        for (const Direction d : kAllDirections) {
            reclassify(neighbor(from, d));
            reclassify(neighbor(to, d));
        }
    }

private:
    struct Entry {
        std::int64_t count;
        Classification cls;
    };

    void reclassify(Coord c) {
        auto it = cells_.find(c);
        if (it == cells_.end()) return;
        const bool was = move_enabled(it->second.cls);
        it->second.cls = classify(view(c), algorithm_);
        const bool now = move_enabled(it->second.cls);
        if (was != now) enabled_cells_ += now ? 1 : -1;
    }

    std::unordered_map<Coord, Entry, CoordHash> cells_;
    Algorithm algorithm_;
    std::int64_t enabled_cells_ = 0;
};

struct PendingActivation {
    std::uint32_t id;
    Coord from;
    View view;
    Classification cls;
};

} // namespace

bool silent_check(const GlobalState& state, Algorithm a) {
    for (const auto& [c, n] : state.occupancy())
        if (move_enabled(neighborhood_view(state, c), a)) return false;
    return true;
}

std::vector<std::size_t> round_boundaries(std::span<const std::uint32_t> activation_ids,
                                          std::size_t robot_count) {
    std::vector<std::size_t> boundaries;
    std::vector<char> covered(robot_count, 0);
    std::size_t covered_count = 0;
    for (std::size_t i = 0; i < activation_ids.size(); ++i) {
        const std::uint32_t id = activation_ids[i];
        if (id < robot_count && !covered[id]) {
            covered[id] = 1;
            if (++covered_count == robot_count) {
                boundaries.push_back(i);
                std::fill(covered.begin(), covered.end(), 0);
                covered_count = 0;
            }
        }
    }
    return boundaries;
}

Trace run(const GlobalState& initial, const RunConfig& requested) {
    if (initial.empty()) throw std::invalid_argument("empty swarm");
    if (!is_connected(initial)) throw std::invalid_argument("disconnected swarm");

    RunConfig cfg = requested;
    const std::size_t n = initial.size();
    if (cfg.max_steps == 0) cfg.max_steps = default_max_steps(n);
    if (!(cfg.distributed_select_prob > 0.0 && cfg.distributed_select_prob <= 1.0))
        throw std::invalid_argument("distributed selection probability must be in (0,1]");

    Trace trace;
    trace.config = cfg;
    trace.initial_state = initial;

    GlobalState state = initial;
    EnabledIndex index(state, cfg.algorithm);

    // Round accounting: greedy activation cover, closing only at step
    // boundaries. A simultaneous step is atomic for rounds: its activations
    // all evaluate the same pre-step state, so letting a round boundary
    // split a step would credit the new round with evaluations of the old
    // round's state.
    std::vector<char> covered(n, 0);
    std::size_t covered_count = 0;
    std::uint64_t round = 0;
    auto note_activation = [&](TraceEvent& ev) {
        ev.round_index = round;
        if (!covered[ev.robot_id]) {
            covered[ev.robot_id] = 1;
            ++covered_count;
        }
    };
    auto close_round_if_covered = [&] {
        if (covered_count == n) {
            ++round;
            std::fill(covered.begin(), covered.end(), 0);
            covered_count = 0;
        }
    };

    // Per-vertex occupancy timeline for stale reads. An entry (k, v) means
    // the vertex's occupancy became v in the state reached after k events.
    const bool async = cfg.scheduler == Scheduler::AsyncStale;
    std::unordered_map<Coord, std::vector<std::pair<std::uint64_t, bool>>, CoordHash> history;
    if (async)
        for (const auto& [c, cnt] : state.occupancy()) history[c].emplace_back(0, true);
    auto history_occupied = [&](Coord c, std::uint64_t at_time) -> bool {
        const auto it = history.find(c);
        if (it == history.end()) return false;
        const auto& timeline = it->second;
        auto jt = std::upper_bound(
            timeline.begin(), timeline.end(), at_time,
            [](std::uint64_t t, const std::pair<std::uint64_t, bool>& e) { return t < e.first; });
        return jt == timeline.begin() ? false : std::prev(jt)->second;
    };

    auto apply_event_move = [&](std::uint32_t id, Direction d, std::uint64_t event_index) {
        const Coord from = state.position(id);
        const Coord to = neighbor(from, d);
        const bool to_was_occupied = state.occupied(to);
        state.displace(id, d);
        index.apply(from, to);
        if (async) {
            if (!state.occupied(from)) history[from].emplace_back(event_index + 1, false);
            if (!to_was_occupied) history[to].emplace_back(event_index + 1, true);
        }
    };

    // Central/async fairness: shuffled round-robin epochs. Every epoch is a
    // fresh random permutation of all robot ids, so each robot is activated
    // exactly once per epoch.
    std::vector<std::uint32_t> epoch_order(n);
    std::size_t epoch_pos = n;
    std::uint64_t epoch_index = 0;
    auto next_robot = [&]() {
        if (epoch_pos == n) {
            std::iota(epoch_order.begin(), epoch_order.end(), 0u);
            auto rng = derive_stream(cfg.seed, StreamTag::EpochShuffle, epoch_index++);
            rng.shuffle(epoch_order);
            epoch_pos = 0;
        }
        return epoch_order[epoch_pos++];
    };

    std::vector<std::uint64_t> last_snapshot(n, 0);
    std::uint64_t step_index = 0;
    bool hit_cap = false;

    auto run_batch_step = [&](const std::vector<std::uint32_t>& selected) {
        // All selected robots evaluate the same pre-step state; their moves
        // are then applied one event at a time, in id order, so that replay
        // is a plain left fold over the event list.
        const std::uint64_t step_start = trace.events.size();
        std::vector<PendingActivation> pending;
        pending.reserve(selected.size());
        for (const std::uint32_t id : selected) {
            const Coord p = state.position(id);
            pending.push_back({id, p, index.view(p), index.at(p)});
        }
        for (const PendingActivation& act : pending) {
            TraceEvent ev;
            ev.t = trace.events.size();
            ev.robot_id = act.id;
            ev.view_used = act.view;
            ev.view_times.fill(step_start);
            ev.classification = act.cls;
            ev.from = act.from;
            const auto mv = move_of(act.cls);
            if (mv) ev.to = neighbor(act.from, *mv);
            note_activation(ev);
            trace.events.push_back(ev);
            if (mv) apply_event_move(act.id, *mv, ev.t);
        }
        close_round_if_covered();
    };

    while (true) {
        if (index.silent()) break;
        if (trace.events.size() >= cfg.max_steps) {
            hit_cap = true;
            break;
        }
        switch (cfg.scheduler) {
        case Scheduler::Synchronous: {
            std::vector<std::uint32_t> all(n);
            std::iota(all.begin(), all.end(), 0u);
            run_batch_step(all);
            break;
        }
        case Scheduler::Distributed: {
            auto rng = derive_stream(cfg.seed, StreamTag::DistributedSelect, step_index++);
            std::vector<std::uint32_t> selected;
            do {
                selected.clear();
                for (std::uint32_t id = 0; id < n; ++id)
                    if (rng.next_double() < cfg.distributed_select_prob) selected.push_back(id);
            } while (selected.empty());
            run_batch_step(selected);
            break;
        }
        case Scheduler::Central: {
            const std::uint32_t id = next_robot();
            const Coord p = state.position(id);
            TraceEvent ev;
            ev.t = trace.events.size();
            ev.robot_id = id;
            ev.view_used = index.view(p);
            ev.view_times.fill(ev.t);
            ev.classification = index.at(p);
            ev.from = p;
            const auto mv = move_of(ev.classification);
            if (mv) ev.to = neighbor(p, *mv);
            note_activation(ev);
            trace.events.push_back(ev);
            if (mv) apply_event_move(id, *mv, ev.t);
            close_round_if_covered();
            break;
        }
        case Scheduler::AsyncStale: {
            const std::uint32_t id = next_robot();
            const std::uint64_t t = trace.events.size();
            const Coord p = state.position(id);
            std::uint64_t lower = last_snapshot[id];
            if (cfg.max_staleness != kUnboundedStaleness && t > cfg.max_staleness)
                lower = std::max(lower, t - cfg.max_staleness);
            auto rng = derive_stream(cfg.seed, StreamTag::StaleSample, t);
            TraceEvent ev;
            ev.t = t;
            ev.robot_id = id;
            ev.from = p;
            // One read time for the whole snapshot: the view is a real past
            // state of the neighborhood. Sampling the six locations at
            // independent times lets a robot act on a neighborhood that
            // never existed and demonstrably disconnects swarms.
            const std::uint64_t read_time = lower + rng.next_below(t - lower + 1);
            ev.view_times.fill(read_time);
            for (std::size_t i = 0; i < kAllDirections.size(); ++i)
                set_view_bit(ev.view_used, kAllDirections[i],
                             history_occupied(neighbor(p, kAllDirections[i]), read_time));
            // The robot classifies on the stale snapshot but moves in the
            // current state; its own position is always current.
            ev.classification = classify(ev.view_used, cfg.algorithm);
            const auto mv = move_of(ev.classification);
            if (mv) ev.to = neighbor(p, *mv);
            note_activation(ev);
            trace.events.push_back(ev);
            if (mv) apply_event_move(id, *mv, t);
            close_round_if_covered();
            if (mv)
                last_snapshot[id] = t + 1;
            else if (cfg.refresh_policy == RefreshPolicy::OnEvaluate)
                last_snapshot[id] = t;
            break;
        }
        }
    }

    trace.final_state = state;
    trace.rounds = round + (covered_count > 0 ? 1 : 0);
    trace.outcome = is_gathered(state)   ? Outcome::Gathered
                    : hit_cap            ? Outcome::StepCap
                                         : Outcome::Stuck;
    return trace;
}

} // namespace trigather
