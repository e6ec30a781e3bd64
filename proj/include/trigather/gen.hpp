#pragma once

#include <cstdint>

#include "trigather/swarm.hpp"

namespace trigather {

struct GenSpec {
    std::size_t n = 1;
    std::uint64_t seed = 0;
    bool allow_multiplicity = false;
    double spread = 0.0; // 0 = uniform growth, 1 = strongly frontier-biased
};

/// The 29-robot reference instance used throughout the tests: a connected
/// swarm whose predicted gathering vertex is (6,-16).
GlobalState reference_instance();

/// Seeded growth process starting at the origin; the visibility graph is
/// connected by construction. With allow_multiplicity, one placement in ten
/// stacks a robot on an existing position instead of growing.
GlobalState random_connected(const GenSpec& spec);

} // namespace trigather
