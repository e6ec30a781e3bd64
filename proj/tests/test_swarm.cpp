#include <doctest.h>

#include <stdexcept>

#include "trigather/gen.hpp"
#include "trigather/rng.hpp"
#include "trigather/swarm.hpp"

using namespace trigather;

TEST_SUITE_BEGIN("swarm");

TEST_CASE("occupancy queries are boolean") {
    const GlobalState fig = reference_instance();
    CHECK(fig.occupied({0, -2}));
    CHECK(!fig.occupied({0, -6}));

    const GlobalState stacked({{0, 0}, {0, 0}});
    CHECK(stacked.occupied({0, 0}));
    CHECK(stacked.count({0, 0}) == 2);
    CHECK(stacked.size() == 2);
}

TEST_CASE("odd-parity robots are rejected") {
    CHECK_THROWS_AS(GlobalState({{1, 2}}), std::invalid_argument);
}

TEST_CASE("neighborhood views against the reference instance") {
    const GlobalState fig = reference_instance();

    const View top = neighborhood_view(fig, {5, -1});
    CHECK(top.down_left);  // (4,-2)
    CHECK(top.down_right); // (6,-2)
    CHECK(!top.down);
    CHECK(!top.up_left);
    CHECK(!top.up_right);
    CHECK(!top.up);

    const View inner = neighborhood_view(fig, {4, -8});
    CHECK(inner.up);         // (4,-6)
    CHECK(inner.down_right); // (5,-9)
    CHECK(!inner.down);
    CHECK(!inner.down_left);
    CHECK(!inner.up_left);
    CHECK(!inner.up_right);

    const GlobalState single({{3, -3}});
    CHECK(neighborhood_view(single, {3, -3}) == View{});
}

TEST_CASE("views are insensitive to multiplicity") {
    SplitMix64 rng(99);
    for (int trial = 0; trial < 30; ++trial) {
        GenSpec spec{.n = 2 + static_cast<std::size_t>(rng.next_below(12)),
                     .seed = rng.next(),
                     .allow_multiplicity = false,
                     .spread = 0.3};
        const GlobalState state = random_connected(spec);
        GlobalState duplicated = state;
        duplicated.add_robot(state.position(rng.next_below(state.size())));
        for (const auto& [c, count] : state.occupancy())
            CHECK(neighborhood_view(state, c) == neighborhood_view(duplicated, c));
    }
}

TEST_CASE("visibility graph and connectivity") {
    CHECK(is_connected(reference_instance()));
    CHECK(!is_connected(GlobalState({{0, 0}, {4, 0}})));
    CHECK(is_connected(GlobalState({{0, 0}, {1, -1}, {2, -2}})));
    CHECK(is_connected(GlobalState({{2, -4}})));

    const VisibilityGraph g = visibility_graph(GlobalState({{0, 0}, {1, -1}, {2, -2}}));
    CHECK(g.vertices.size() == 3);
    CHECK(g.edges.size() == 2);

    // Stacked robots collapse onto one vertex.
    const VisibilityGraph stacked = visibility_graph(GlobalState({{0, 0}, {0, 0}, {1, -1}}));
    CHECK(stacked.vertices.size() == 2);
    CHECK(stacked.edges.size() == 1);
}

TEST_CASE("connectivity is mirror covariant") {
    SplitMix64 rng(4);
    for (int trial = 0; trial < 30; ++trial) {
        GenSpec spec{.n = 1 + static_cast<std::size_t>(rng.next_below(20)),
                     .seed = rng.next(),
                     .allow_multiplicity = trial % 2 == 0,
                     .spread = rng.next_double()};
        const GlobalState state = random_connected(spec);
        CHECK(is_connected(state) == is_connected(mirror_state(state, 3)));
    }
}

TEST_CASE("gathering detection") {
    std::vector<Coord> many(29, Coord{6, -16});
    CHECK(is_gathered(GlobalState(std::move(many))));
    CHECK(!is_gathered(GlobalState({{0, 0}, {0, -2}})));
    CHECK(is_gathered(GlobalState({{5, -9}})));
}

TEST_CASE("extents") {
    const Extents fig = extents(reference_instance());
    CHECK(fig.y_top == -1);
    CHECK(fig.y_bottom == -13);
    CHECK(fig.x_min == 0);
    CHECK(fig.x_max == 10);

    const Extents single = extents(GlobalState({{4, -8}}));
    CHECK(single.y_top == -8);
    CHECK(single.y_bottom == -8);
    CHECK(single.x_min == 4);
    CHECK(single.x_max == 4);

    const Extents pair = extents(GlobalState({{0, 0}, {1, -1}}));
    CHECK(pair.y_top == 0);
    CHECK(pair.y_bottom == -1);
    CHECK(pair.x_min == 0);
    CHECK(pair.x_max == 1);
}

TEST_CASE("apply_move keeps everything else fixed") {
    const GlobalState column({{0, 0}, {0, -2}});
    const GlobalState moved = apply_move(column, 0, Direction::Down);
    CHECK(moved.position(0) == Coord{0, -2});
    CHECK(moved.position(1) == Coord{0, -2});
    CHECK(moved.count({0, -2}) == 2);
    CHECK(is_gathered(moved));
    CHECK(column.position(0) == Coord{0, 0}); // original untouched

    // Reversing the move restores the multiset.
    const GlobalState back = apply_move(moved, 0, Direction::Up);
    CHECK(canonical_positions(back) == canonical_positions(column));

    const GlobalState fig = reference_instance();
    const std::size_t top_robot = 14; // (5,-1) in the fixture ordering
    REQUIRE(fig.position(top_robot) == Coord{5, -1});
    CHECK(apply_move(fig, top_robot, Direction::DownRight).position(top_robot) ==
          Coord{6, -2});
    CHECK_THROWS_AS(apply_move(fig, 99, Direction::Down), std::out_of_range);
}

TEST_CASE("apply_move changes exactly one robot") {
    SplitMix64 rng(17);
    for (int trial = 0; trial < 30; ++trial) {
        GenSpec spec{.n = 2 + static_cast<std::size_t>(rng.next_below(15)),
                     .seed = rng.next(),
                     .allow_multiplicity = true,
                     .spread = 0.5};
        const GlobalState state = random_connected(spec);
        const auto id = static_cast<std::size_t>(rng.next_below(state.size()));
        const auto dir = kAllDirections[rng.next_below(6)];
        const GlobalState moved = apply_move(state, id, dir);
        REQUIRE(moved.size() == state.size());
        for (std::size_t i = 0; i < state.size(); ++i) {
            if (i == id)
                CHECK(moved.position(i) == neighbor(state.position(i), dir));
            else
                CHECK(moved.position(i) == state.position(i));
        }
    }
}

TEST_SUITE_END();
