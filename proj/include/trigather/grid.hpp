#pragma once

#include <array>
#include <cstdint>
#include <functional>
#include <span>
#include <string>

#include "trigather/rng.hpp"

namespace trigather {

/// A vertex of the infinite triangular grid, in doubled integer coordinates:
/// one column step is Δx = 1, one vertical edge is Δy = 2, one diagonal edge
/// is Δ(x, y) = (±1, ±1). A pair (x, y) is a vertex iff x + y is even, which
/// makes all six neighbor offsets integral and all geometry exact.
struct Coord {
    std::int64_t x = 0;
    std::int64_t y = 0;

    friend bool operator==(const Coord&, const Coord&) = default;
    friend auto operator<=>(const Coord&, const Coord&) = default;
};

inline bool valid_vertex(Coord c) { return ((c.x + c.y) & 1) == 0; }

std::string to_string(Coord c);

struct CoordHash {
    std::size_t operator()(Coord c) const {
        return static_cast<std::size_t>(
            mix64(static_cast<std::uint64_t>(c.x) * 0x9E3779B97F4A7C15ull ^
                  static_cast<std::uint64_t>(c.y)));
    }
};

/// The six grid directions, named by where they lead. Robots agree on the
/// vertical axis only, so "left"/"right" are observer conventions.
enum class Direction : std::uint8_t {
    Down = 0,      // (0, -2)
    DownLeft = 1,  // (-1, -1)
    DownRight = 2, // (+1, -1)
    UpLeft = 3,    // (-1, +1)
    UpRight = 4,   // (+1, +1)
    Up = 5,        // (0, +2)
};

inline constexpr std::array<Direction, 6> kAllDirections = {
    Direction::Down,   Direction::DownLeft, Direction::DownRight,
    Direction::UpLeft, Direction::UpRight,  Direction::Up,
};

constexpr Coord offset_of(Direction d) {
    switch (d) {
    case Direction::Down:      return {0, -2};
    case Direction::DownLeft:  return {-1, -1};
    case Direction::DownRight: return {+1, -1};
    case Direction::UpLeft:    return {-1, +1};
    case Direction::UpRight:   return {+1, +1};
    case Direction::Up:        return {0, +2};
    }
    return {0, 0};
}

constexpr Coord neighbor(Coord c, Direction d) {
    const Coord o = offset_of(d);
    return {c.x + o.x, c.y + o.y};
}

/// Reflection about the vertical line x = axis_x. Swarms cannot distinguish
/// left from right, so mirrored inputs must behave identically.
constexpr Coord mirror_coord(Coord c, std::int64_t axis_x) {
    return {2 * axis_x - c.x, c.y};
}

constexpr Direction mirror_direction(Direction d) {
    switch (d) {
    case Direction::DownLeft:  return Direction::DownRight;
    case Direction::DownRight: return Direction::DownLeft;
    case Direction::UpLeft:    return Direction::UpRight;
    case Direction::UpRight:   return Direction::UpLeft;
    default:                   return d;
    }
}

/// Edge-count distance between two vertices. In the axial frame spanned by
/// the DownRight and Up steps the lattice is a standard hex grid.
constexpr std::int64_t grid_distance(Coord a, Coord b) {
    const std::int64_t dq = b.x - a.x;
    const std::int64_t dr = (b.x + b.y - a.x - a.y) / 2;
    const std::int64_t aq = dq < 0 ? -dq : dq;
    const std::int64_t ar = dr < 0 ? -dr : dr;
    if ((dq >= 0) == (dr >= 0)) return aq > ar ? aq : ar;
    return aq + ar;
}

/// Keys of the two slant families through a vertex. A negative slant is the
/// level set x + y = const (smaller keys lie further left), a positive slant
/// is the level set y - x = const (smaller keys lie further right/down). Both
/// keys of a valid vertex are even.
struct SlantKeys {
    std::int64_t neg_key; // x + y
    std::int64_t pos_key; // y - x
};

constexpr SlantKeys slant_keys(Coord c) { return {c.x + c.y, c.y - c.x}; }

/// A point of the plane with half-integer coordinates, stored as twice its
/// value. Polygon corners need not be grid vertices.
struct GeoPoint {
    std::int64_t x2 = 0;
    std::int64_t y2 = 0;

    static constexpr GeoPoint at_vertex(Coord c) { return {2 * c.x, 2 * c.y}; }

    friend bool operator==(const GeoPoint&, const GeoPoint&) = default;
};

std::string to_string(GeoPoint p);

/// Axis-extents-and-slants bounding polygon of a swarm. The five half-plane
/// constants fully determine containment; the corner points are derived and
/// kept for reporting/rendering.
///
///   top_left(A) ---- top_right(D)        y <= y_top
///   |                          |          x >= x_min, x <= x_max
///   left_slant_corner(Bp)      |          x + y >= neg_key_min
///    \                 right_slant_corner(Cp)
///     \               /                   y - x >= pos_key_min
///      gather(Q)
///
/// The looser polygon keeps the bottom layer: bottom_left(B), bottom_right(C)
/// and apex(P) where the slants through B and C cross.
struct BoundingPolygon {
    std::int64_t y_top = 0;
    std::int64_t y_bottom = 0;
    std::int64_t x_min = 0;
    std::int64_t x_max = 0;
    std::int64_t neg_key_min = 0; // min over robots of x + y
    std::int64_t pos_key_min = 0; // min over robots of y - x

    GeoPoint top_left;           // A
    GeoPoint top_right;          // D
    GeoPoint bottom_left;        // B
    GeoPoint bottom_right;       // C
    GeoPoint apex;               // P
    GeoPoint left_slant_corner;  // B'
    GeoPoint right_slant_corner; // C'
    Coord gather;                // Q, always a grid vertex
};

/// Depth/width measurements of the tight polygon, in doubled units.
struct PolygonMetrics {
    std::int64_t h_left = 0;     // depth of the A-B' segment (0 when width is 0)
    std::int64_t h_right = 0;    // depth of the C'-D segment
    std::int64_t width = 0;      // column steps between left and right layers
    std::int64_t total_depth = 0; // y_top - Q.y
};

/// Builds the bounding polygon of a nonempty set of robot positions.
/// Throws std::invalid_argument on an empty span.
BoundingPolygon bounding_polygon(std::span<const Coord> robots);

/// The vertex where the swarm provably gathers: the crossing of the lowest
/// negative slant and the lowest positive slant through robots.
Coord predict_gathering_point(std::span<const Coord> robots);

/// Containment in the tight polygon, by the five half-plane constants.
constexpr bool polygon_contains(const BoundingPolygon& p, Coord c) {
    return c.y <= p.y_top && c.x >= p.x_min && c.x <= p.x_max &&
           c.x + c.y >= p.neg_key_min && c.y - c.x >= p.pos_key_min;
}

/// Containment in the looser polygon: layer extents plus the slants through
/// the bottom corners. The apex region dips below the bottom layer, so there
/// is no lower y bound.
constexpr bool loose_polygon_contains(const BoundingPolygon& p, Coord c) {
    return c.y <= p.y_top && c.x >= p.x_min && c.x <= p.x_max &&
           c.x + c.y >= p.x_min + p.y_bottom && c.y - c.x >= p.y_bottom - p.x_max;
}

PolygonMetrics polygon_metrics(const BoundingPolygon& p);

} // namespace trigather
