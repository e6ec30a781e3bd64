#include "trigather/gen.hpp"

#include <stdexcept>

#include "trigather/rng.hpp"

namespace trigather {

GlobalState reference_instance() {
    return GlobalState({
        {0, -2},  {0, -4},  {1, -5},  {1, -7},  {1, -11}, {2, -4},
        {2, -12}, {3, -3},  {3, -5},  {3, -13}, {4, -2},  {4, -6},
        {4, -8},  {4, -12}, {5, -1},  {5, -9},  {5, -11}, {5, -13},
        {6, -2},  {6, -10}, {7, -3},  {7, -11}, {8, -2},  {8, -10},
        {8, -12}, {9, -1},  {9, -9},  {9, -13}, {10, -2},
    });
}

GlobalState random_connected(const GenSpec& spec) {
    if (spec.n < 1) throw std::invalid_argument("robot count must be at least 1");
    auto rng = derive_stream(spec.seed, StreamTag::GenGrowth, 0);

    GlobalState state;
    state.add_robot({0, 0});
    // Distinct occupied vertices, newest last. Entries sealed off by later
    // placements are dropped lazily when picked.
    std::vector<Coord> frontier{{0, 0}};

    auto has_free_neighbor = [&](Coord c) {
        for (const Direction d : kAllDirections)
            if (!state.occupied(neighbor(c, d))) return true;
        return false;
    };

    while (state.size() < spec.n) {
        if (spec.allow_multiplicity && rng.next_double() < 0.1) {
            const auto pick = static_cast<std::size_t>(rng.next_below(state.size()));
            state.add_robot(state.position(pick));
            continue;
        }
        Coord base;
        for (;;) {
            const std::size_t slot =
                rng.next_double() < spec.spread
                    ? frontier.size() - 1 // grow from the newest open vertex
                    : static_cast<std::size_t>(rng.next_below(frontier.size()));
            base = frontier[slot];
            if (has_free_neighbor(base)) break;
            frontier.erase(frontier.begin() + static_cast<std::ptrdiff_t>(slot));
        }
        std::array<Direction, 6> free{};
        std::size_t free_count = 0;
        for (const Direction d : kAllDirections)
            if (!state.occupied(neighbor(base, d))) free[free_count++] = d;
        const Coord placed = neighbor(base, free[rng.next_below(free_count)]);
        state.add_robot(placed);
        frontier.push_back(placed);
    }
    return state;
}

} // namespace trigather
