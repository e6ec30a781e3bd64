#pragma once

#include <cstdint>
#include <optional>
#include <string>

#include "trigather/grid.hpp"

namespace trigather {

/// What a robot sees: one occupancy bit per adjacent vertex. Multiplicity is
/// not observable and a robot never observes companions at its own vertex.
/// All 64 values are legal inputs to the classifiers.
struct View {
    bool down = false;       // the vertex directly below
    bool down_left = false;
    bool down_right = false;
    bool up_left = false;
    bool up_right = false;
    bool up = false;         // the vertex directly above

    friend bool operator==(const View&, const View&) = default;
};

constexpr bool view_bit(const View& v, Direction d) {
    switch (d) {
    case Direction::Down:      return v.down;
    case Direction::DownLeft:  return v.down_left;
    case Direction::DownRight: return v.down_right;
    case Direction::UpLeft:    return v.up_left;
    case Direction::UpRight:   return v.up_right;
    case Direction::Up:        return v.up;
    }
    return false;
}

constexpr View& set_view_bit(View& v, Direction d, bool value) {
    switch (d) {
    case Direction::Down:      v.down = value; break;
    case Direction::DownLeft:  v.down_left = value; break;
    case Direction::DownRight: v.down_right = value; break;
    case Direction::UpLeft:    v.up_left = value; break;
    case Direction::UpRight:   v.up_right = value; break;
    case Direction::Up:        v.up = value; break;
    }
    return v;
}

/// Packs a view into 6 bits, direction order as in kAllDirections.
constexpr std::uint8_t pack_view(const View& v) {
    std::uint8_t bits = 0;
    for (std::size_t i = 0; i < kAllDirections.size(); ++i)
        bits = static_cast<std::uint8_t>(bits | (view_bit(v, kAllDirections[i]) ? 1u << i : 0u));
    return bits;
}

constexpr View unpack_view(std::uint8_t bits) {
    View v;
    for (std::size_t i = 0; i < kAllDirections.size(); ++i)
        set_view_bit(v, kAllDirections[i], (bits >> i) & 1u);
    return v;
}

constexpr View mirror_view(const View& v) {
    View m = v;
    m.down_left = v.down_right;
    m.down_right = v.down_left;
    m.up_left = v.up_right;
    m.up_right = v.up_left;
    return m;
}

enum class Algorithm : std::uint8_t { Gsgs, Revised };

/// Classifier outcomes. The first block is the original rule set, the second
/// the revised one; move_of maps each to its move (or none).
enum class Classification : std::uint8_t {
    // Original algorithm.
    Downward,
    DownslantLeft,
    DownslantRight,
    NonExtreme,
    Staying,
    Terminating,
    Idle,
    // Revised algorithm.
    DownwardII,
    DownslantLeftII,
    DownslantRightII,
    NoGuard,
};

std::string to_string(Classification c);
std::optional<Classification> classification_from_string(const std::string& name);

/// True iff every listed position is occupied in the view.
template <typename... Dirs>
constexpr bool at(const View& v, Dirs... dirs) {
    return (view_bit(v, dirs) && ...);
}

/// True iff exactly the listed positions are occupied.
template <typename... Dirs>
constexpr bool only_at(const View& v, Dirs... dirs) {
    View expected{};
    (set_view_bit(expected, dirs, true), ...);
    return v == expected;
}

/// A robot is extreme when nothing sits on top of it and it does not have
/// occupied lower-or-upper diagonals on both sides at once.
constexpr bool extreme(const View& v) {
    const bool left = v.down_left || v.up_left;
    const bool right = v.down_right || v.up_right;
    return !v.up && !(left && right);
}

/// Original rule set. Guards are evaluated in definition order; exhaustive
/// enumeration (see tests) confirms they are mutually exclusive, so the
/// order never decides.
constexpr Classification classify_gsgs(const View& v) {
    if (extreme(v)) {
        if (only_at(v)) return Classification::Terminating;
        if (only_at(v, Direction::UpRight) || only_at(v, Direction::UpLeft) ||
            only_at(v, Direction::Down, Direction::UpRight) ||
            only_at(v, Direction::Down, Direction::UpLeft))
            return Classification::Staying;
        if (v.down && !v.up_left && !v.up_right) return Classification::Downward;
        if (v.down_right) return Classification::DownslantRight;
        if (v.down_left) return Classification::DownslantLeft;
        return Classification::Idle;
    }
    if (v.down_left && v.down_right && !v.up_left && !v.up_right && !v.up)
        return Classification::NonExtreme;
    return Classification::Idle;
}

/// Revised rule set: the two configurations whose neighbors could also be
/// enabled are dropped, leaving seven enabled views.
constexpr Classification classify_revised(const View& v) {
    if ((v.down && !v.up_left && !v.up && !v.up_right) ||
        only_at(v, Direction::DownLeft, Direction::DownRight))
        return Classification::DownwardII;
    if (only_at(v, Direction::DownLeft)) return Classification::DownslantLeftII;
    if (only_at(v, Direction::DownRight)) return Classification::DownslantRightII;
    return Classification::NoGuard;
}

constexpr Classification classify(const View& v, Algorithm a) {
    return a == Algorithm::Gsgs ? classify_gsgs(v) : classify_revised(v);
}

/// The move a classification prescribes; disabled classifications map to none.
constexpr std::optional<Direction> move_of(Classification c) {
    switch (c) {
    case Classification::Downward:
    case Classification::NonExtreme:
    case Classification::DownwardII:
        return Direction::Down;
    case Classification::DownslantLeft:
    case Classification::DownslantLeftII:
        return Direction::DownLeft;
    case Classification::DownslantRight:
    case Classification::DownslantRightII:
        return Direction::DownRight;
    default:
        return std::nullopt;
    }
}

constexpr bool move_enabled(Classification c) { return move_of(c).has_value(); }

constexpr bool move_enabled(const View& v, Algorithm a) {
    return move_enabled(classify(v, a));
}

constexpr Classification mirror_classification(Classification c) {
    switch (c) {
    case Classification::DownslantLeft:    return Classification::DownslantRight;
    case Classification::DownslantRight:   return Classification::DownslantLeft;
    case Classification::DownslantLeftII:  return Classification::DownslantRightII;
    case Classification::DownslantRightII: return Classification::DownslantLeftII;
    default:                               return c;
    }
}

} // namespace trigather
