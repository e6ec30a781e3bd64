#pragma once

#include <array>
#include <cstdint>
#include <limits>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "trigather/rules.hpp"
#include "trigather/swarm.hpp"

namespace trigather {

enum class Scheduler : std::uint8_t {
    Synchronous, // every robot evaluates the pre-step state; enabled ones move as a batch
    Central,     // one robot per step, shuffled round-robin epochs, fresh view
    Distributed, // random subset per step, pre-step views, batch moves
    AsyncStale,  // one robot per step, per-location stale occupancy samples
};

enum class RefreshPolicy : std::uint8_t {
    OnMove,     // a robot's staleness window restarts only when it moves
    OnEvaluate, // the window restarts at every activation
};

std::string to_string(Scheduler s);
std::string to_string(RefreshPolicy p);
std::string to_string(Algorithm a);

/// Sentinel for an unbounded staleness window.
inline constexpr std::uint64_t kUnboundedStaleness =
    std::numeric_limits<std::uint64_t>::max();

struct RunConfig {
    Algorithm algorithm = Algorithm::Gsgs;
    Scheduler scheduler = Scheduler::Synchronous;
    std::uint64_t seed = 0;
    std::uint64_t max_staleness = kUnboundedStaleness; // Δ, in events
    RefreshPolicy refresh_policy = RefreshPolicy::OnEvaluate;
    std::uint64_t max_steps = 0; // event cap; 0 = pick the default for n
    double distributed_select_prob = 0.5; // in (0, 1]
};

/// Default event cap: 2n rounds of n activations each, times a safety factor
/// of 32 for stale-view stutter.
constexpr std::uint64_t default_max_steps(std::size_t n) {
    const auto nn = static_cast<std::uint64_t>(n);
    return 64 * nn * (2 * nn + 1);
}

struct TraceEvent {
    std::uint64_t t = 0;       // event index
    std::uint32_t robot_id = 0;
    View view_used;            // the view the robot classified on
    // Event-time indices the six view components were read from, direction
    // order as in kAllDirections. Fresh views read everything at the
    // evaluation time; async-stale snapshots read all six at one sampled
    // past time, so the entries are always equal per event.
    std::array<std::uint64_t, 6> view_times{};
    Classification classification = Classification::Idle;
    Coord from;
    std::optional<Coord> to;   // set iff the classification moves
    std::uint64_t round_index = 0;
};

enum class Outcome : std::uint8_t { Gathered, StepCap, Stuck };

std::string to_string(Outcome o);

struct Trace {
    RunConfig config;
    GlobalState initial_state;
    std::vector<TraceEvent> events;
    GlobalState final_state;
    std::uint64_t rounds = 0;
    Outcome outcome = Outcome::Stuck;
};

/// Executes the configured algorithm until no robot is enabled on a fresh
/// view, or the event cap is hit. Throws std::invalid_argument on an empty
/// or disconnected input.
Trace run(const GlobalState& state, const RunConfig& cfg);

/// Greedy partition of an activation sequence into minimal contiguous
/// segments that activate every robot id at least once. Returns the index of
/// each completed segment's last event.
std::vector<std::size_t> round_boundaries(std::span<const std::uint32_t> activation_ids,
                                          std::size_t robot_count);

/// True iff no robot is move-enabled on a fresh view of `state`.
bool silent_check(const GlobalState& state, Algorithm a);

} // namespace trigather
