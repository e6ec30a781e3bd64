#include <doctest.h>

#include <stdexcept>

#include <algorithm>

#include "trigather/gen.hpp"
#include "trigather/rng.hpp"
#include "trigather/verify.hpp"

using namespace trigather;

namespace {

// Hand-built traces for negative controls. Events chain correctly (so replay
// succeeds) but deliberately break the property under test.
Trace forge(const GlobalState& initial,
            const std::vector<std::pair<std::uint32_t, std::optional<Direction>>>& acts,
            Scheduler scheduler = Scheduler::Central) {
    Trace t;
    t.config.algorithm = Algorithm::Gsgs;
    t.config.scheduler = scheduler;
    t.config.max_steps = default_max_steps(initial.size());
    t.initial_state = initial;
    GlobalState s = initial;
    std::vector<std::uint32_t> ids;
    for (std::size_t i = 0; i < acts.size(); ++i) {
        const auto& [id, dir] = acts[i];
        TraceEvent ev;
        ev.t = i;
        ev.robot_id = id;
        ev.from = s.position(id);
        ev.view_used = neighborhood_view(s, ev.from);
        ev.view_times.fill(i);
        if (dir) {
            ev.to = neighbor(ev.from, *dir);
            ev.classification = *dir == Direction::Down        ? Classification::Downward
                                : *dir == Direction::DownLeft  ? Classification::DownslantLeft
                                : *dir == Direction::DownRight ? Classification::DownslantRight
                                                               : Classification::Idle;
            s.set_position(id, *ev.to);
        } else {
            ev.classification = Classification::Idle;
        }
        ids.push_back(id);
        t.events.push_back(ev);
    }
    const auto boundaries = round_boundaries(ids, initial.size());
    std::size_t next_boundary = 0;
    std::uint64_t round = 0;
    for (std::size_t i = 0; i < t.events.size(); ++i) {
        t.events[i].round_index = round;
        if (next_boundary < boundaries.size() && boundaries[next_boundary] == i) {
            ++round;
            ++next_boundary;
        }
    }
    t.rounds = round + (t.events.size() > (boundaries.empty() ? 0 : boundaries.back() + 1) ||
                                (boundaries.empty() && !t.events.empty())
                            ? 1
                            : 0);
    t.final_state = s;
    t.outcome = is_gathered(s) ? Outcome::Gathered : Outcome::Stuck;
    return t;
}

Trace run_gathering(const GlobalState& state, Scheduler sched, Algorithm alg,
                    std::uint64_t seed) {
    const Trace t = run(state, {.algorithm = alg, .scheduler = sched, .seed = seed});
    REQUIRE(t.outcome == Outcome::Gathered);
    return t;
}

} // namespace

TEST_SUITE_BEGIN("verify");

TEST_CASE("all monitors pass on real traces") {
    const GlobalState fig = reference_instance();
    for (const Scheduler sched : {Scheduler::Synchronous, Scheduler::Central,
                                  Scheduler::Distributed, Scheduler::AsyncStale}) {
        for (const Algorithm alg : {Algorithm::Gsgs, Algorithm::Revised}) {
            CAPTURE(to_string(sched));
            CAPTURE(to_string(alg));
            const Trace t = run_gathering(fig, sched, alg, 13);
            for (const MonitorReport& r : run_all_monitors(t)) {
                CAPTURE(r.monitor);
                CHECK(r.passed);
            }
        }
    }
}

TEST_CASE("monitors pass on trivial traces") {
    const Trace single =
        run_gathering(GlobalState({{4, -8}}), Scheduler::Central, Algorithm::Gsgs, 5);
    for (const MonitorReport& r : run_all_monitors(single)) CHECK(r.passed);

    const Trace column = run_gathering(GlobalState({{0, 0}, {0, -2}}), Scheduler::Synchronous,
                                       Algorithm::Revised, 5);
    for (const MonitorReport& r : run_all_monitors(column)) CHECK(r.passed);
}

TEST_CASE("connectivity monitor flags a detached leaf") {
    const GlobalState chain({{0, 0}, {1, -1}, {2, -2}});
    const Trace forged = forge(chain, {{0, Direction::DownLeft}});
    const MonitorReport r = check_connectivity(forged);
    REQUIRE(!r.passed);
    CHECK(r.first_violation->event_index == 0);
}

TEST_CASE("slant monitor flags a lowered slant") {
    const GlobalState column({{0, 0}, {0, -2}});
    const Trace forged = forge(column, {{1, Direction::DownLeft}});
    const MonitorReport r = check_slants(forged);
    REQUIRE(!r.passed);
    CHECK(r.first_violation->event_index == 0);
    // A raised slant (the only bottom-slant robot stepping off it) also trips.
    const GlobalState ell({{0, 0}, {1, -1}});
    const Trace raised = forge(ell, {{1, Direction::Down}});
    CHECK(!check_slants(raised).passed);
}

TEST_CASE("layer monitor flags sideways escapes") {
    const GlobalState column({{0, 0}, {0, -2}});
    CHECK(!check_layers(forge(column, {{1, Direction::DownRight}})).passed);
    CHECK(!check_layers(forge(column, {{1, Direction::DownLeft}})).passed);
    CHECK(check_layers(forge(column, {{0, Direction::Down}})).passed);
}

TEST_CASE("polygon monitor flags the documented escape") {
    const GlobalState fig = reference_instance();
    // Robot 4 sits at (1,-11); one step down-left lands on (0,-12), outside
    // the tight polygon (x + y < -10) but inside the loose one.
    REQUIRE(fig.position(4) == Coord{1, -11});
    const Trace forged = forge(fig, {{4, Direction::DownLeft}});
    const MonitorReport r = check_polygon(forged);
    REQUIRE(!r.passed);
    CHECK(r.first_violation->event_index == 0);
    CHECK(r.first_violation->description.find("tight") != std::string::npos);
}

TEST_CASE("round-progress monitor wants the top layer moving") {
    const GlobalState column({{0, 0}, {0, -2}});
    // A full round of idle activations completes without lowering the top.
    const Trace forged = forge(column, {{0, std::nullopt}, {1, std::nullopt}});
    const MonitorReport r = check_round_progress(forged);
    REQUIRE(!r.passed);
    CHECK(r.first_violation->event_index == 1);

    // The same activations under an async config are informational only.
    Trace async_forged = forged;
    async_forged.config.scheduler = Scheduler::AsyncStale;
    const MonitorReport informational = check_round_progress(async_forged);
    CHECK(informational.passed);
    CHECK(informational.statistics.at("asserted") == 0.0);
}

TEST_CASE("round accounting mismatches are rejected") {
    const GlobalState column({{0, 0}, {0, -2}});
    Trace t = run_gathering(column, Scheduler::Central, Algorithm::Gsgs, 3);
    t.rounds += 1;
    CHECK(!check_round_progress(t).passed);
}

TEST_CASE("convergence monitor checks outcome, vertex and budget") {
    const GlobalState column({{0, 0}, {0, -2}});
    const Trace never_moved = forge(column, {{0, std::nullopt}});
    CHECK(!check_convergence(never_moved).passed); // outcome is stuck

    Trace t = run_gathering(column, Scheduler::Central, Algorithm::Gsgs, 3);
    Trace wrong_budget = t;
    wrong_budget.rounds = 2 * column.size() + 1;
    CHECK(!check_convergence(wrong_budget).passed);
    CHECK(check_convergence(t).passed);
}

TEST_CASE("potential monitor rejects non-lowering moves") {
    const GlobalState column({{0, 0}, {0, -2}});
    const Trace forged = forge(column, {{1, Direction::Up}});
    const MonitorReport r = check_potential(forged);
    REQUIRE(!r.passed);
    CHECK(r.first_violation->event_index == 0);
}

TEST_CASE("malformed traces are rejected by replay") {
    const GlobalState column({{0, 0}, {0, -2}});
    Trace t = run_gathering(column, Scheduler::Central, Algorithm::Gsgs, 3);
    REQUIRE(!t.events.empty());
    t.events.front().from = Coord{8, 8}; // no robot there
    CHECK_THROWS_AS(check_connectivity(t), std::invalid_argument);
}

TEST_CASE("state graph of the two-robot column") {
    const StateGraph g = build_state_graph(GlobalState({{0, 0}, {0, -2}}), Algorithm::Gsgs);
    CHECK(g.nodes.size() == 2);
    CHECK(g.edge_count() == 1);
    CHECK(check_lattice_linearity(g).passed);
}

TEST_CASE("state graph of a single robot") {
    const StateGraph g = build_state_graph(GlobalState({{2, -4}}), Algorithm::Gsgs);
    CHECK(g.nodes.size() == 1);
    CHECK(g.edge_count() == 0);
    CHECK(check_lattice_linearity(g).passed);
}

TEST_CASE("state graph of the three-robot diagonal chain") {
    const GlobalState chain({{0, 0}, {1, -1}, {2, -2}});
    for (const Algorithm alg : {Algorithm::Gsgs, Algorithm::Revised}) {
        const StateGraph g = build_state_graph(chain, alg);
        const Coord q = predict_gathering_point(chain.positions());
        CHECK(q == Coord{2, -2});
        bool found_terminal = false;
        for (std::size_t i = 0; i < g.nodes.size(); ++i) {
            if (!g.edges[i].empty()) continue;
            found_terminal = true;
            CHECK(g.nodes[i] == std::vector<Coord>{{2, -2}, {2, -2}, {2, -2}});
        }
        CHECK(found_terminal);
        CHECK(check_lattice_linearity(g).passed);
    }
}

TEST_CASE("lattice check catches a deadlocked non-gathered sink") {
    // A disconnected pair: both robots are terminating, nothing can move.
    const StateGraph g = build_state_graph(GlobalState({{0, 0}, {4, 0}}), Algorithm::Gsgs);
    const MonitorReport r = check_lattice_linearity(g);
    REQUIRE(!r.passed);
    CHECK(r.first_violation->description.find("deadlocked") != std::string::npos);
}

TEST_CASE("node cap aborts the graph build") {
    const GlobalState fig = reference_instance();
    CHECK_THROWS_AS(build_state_graph(fig, Algorithm::Gsgs, 10), std::runtime_error);
}

TEST_CASE("stale executions stay inside the fresh-view graph") {
    SplitMix64 rng(61);
    for (int trial = 0; trial < 10; ++trial) {
        const GlobalState state =
            random_connected({.n = 2 + static_cast<std::size_t>(rng.next_below(3)),
                              .seed = rng.next(),
                              .allow_multiplicity = trial % 2 == 0,
                              .spread = 0.5});
        for (const Algorithm alg : {Algorithm::Gsgs, Algorithm::Revised}) {
            const StateGraph g = build_state_graph(state, alg);
            RunConfig cfg{.algorithm = alg, .scheduler = Scheduler::AsyncStale,
                          .seed = rng.next()};
            const Trace t = run(state, cfg);
            const MonitorReport r = check_stale_equivalence(g, t);
            CAPTURE(r.passed ? "" : r.first_violation->description.c_str());
            CHECK(r.passed);
        }
    }
}

TEST_CASE("stale containment flags foreign states") {
    const GlobalState column({{0, 0}, {0, -2}});
    const StateGraph g = build_state_graph(column, Algorithm::Gsgs);
    Trace forged = forge(column, {{1, Direction::DownLeft}});
    forged.config.scheduler = Scheduler::AsyncStale;
    const MonitorReport r = check_stale_equivalence(g, forged);
    REQUIRE(!r.passed);
    CHECK(r.first_violation->event_index == 0);
}

TEST_CASE("configuration enumeration counts") {
    // Triangular-lattice clusters up to translation: 1, 3, 11, 44 supports of
    // sizes 1..4; multiplicity assignments on top give 110 configurations.
    const auto configs = enumerate_connected_configs(4, 3);
    CHECK(configs.size() == 110);
    std::size_t supports_of_4 = 0;
    for (const auto& config : configs) {
        CHECK(config.size() <= 4);
        CHECK(is_connected(GlobalState(config)));
        std::vector<Coord> support = config;
        support.erase(std::unique(support.begin(), support.end()), support.end());
        if (support.size() == 4) ++supports_of_4;
    }
    CHECK(supports_of_4 == 44);

    CHECK(enumerate_connected_configs(1, 3).size() == 1);
    // One vertex with 1 or 2 robots, plus the three distinct edges.
    CHECK(enumerate_connected_configs(2, 3).size() == 5);
}

TEST_SUITE_END();
