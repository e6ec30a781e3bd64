#include "trigather/grid.hpp"

#include <stdexcept>

namespace trigather {

std::string to_string(Coord c) {
    return "(" + std::to_string(c.x) + "," + std::to_string(c.y) + ")";
}

std::string to_string(GeoPoint p) {
    auto half = [](std::int64_t v2) -> std::string {
        if (v2 % 2 == 0) return std::to_string(v2 / 2);
        const std::int64_t a = v2 < 0 ? -v2 : v2;
        return std::string(v2 < 0 ? "-" : "") + std::to_string(a / 2) + ".5";
    };
    return "(" + half(p.x2) + "," + half(p.y2) + ")";
}

BoundingPolygon bounding_polygon(std::span<const Coord> robots) {
    if (robots.empty()) throw std::invalid_argument("empty swarm");

    BoundingPolygon p;
    p.y_top = p.y_bottom = robots[0].y;
    p.x_min = p.x_max = robots[0].x;
    auto keys0 = slant_keys(robots[0]);
    p.neg_key_min = keys0.neg_key;
    p.pos_key_min = keys0.pos_key;
    for (const Coord c : robots) {
        p.y_top = std::max(p.y_top, c.y);
        p.y_bottom = std::min(p.y_bottom, c.y);
        p.x_min = std::min(p.x_min, c.x);
        p.x_max = std::max(p.x_max, c.x);
        const auto k = slant_keys(c);
        p.neg_key_min = std::min(p.neg_key_min, k.neg_key);
        p.pos_key_min = std::min(p.pos_key_min, k.pos_key);
    }

    p.top_left = GeoPoint{2 * p.x_min, 2 * p.y_top};
    p.top_right = GeoPoint{2 * p.x_max, 2 * p.y_top};
    p.bottom_left = GeoPoint{2 * p.x_min, 2 * p.y_bottom};
    p.bottom_right = GeoPoint{2 * p.x_max, 2 * p.y_bottom};
    // P: crossing of the negative slant through B and the positive slant
    // through C; may land between vertices, hence the half-unit storage.
    p.apex = GeoPoint{p.x_min + p.x_max, 2 * p.y_bottom + p.x_min - p.x_max};
    p.left_slant_corner = GeoPoint{2 * p.x_min, 2 * (p.neg_key_min - p.x_min)};
    p.right_slant_corner = GeoPoint{2 * p.x_max, 2 * (p.pos_key_min + p.x_max)};
    // Both slant keys are even (robots sit on vertices), so Q is a vertex.
    p.gather = Coord{(p.neg_key_min - p.pos_key_min) / 2,
                     (p.neg_key_min + p.pos_key_min) / 2};
    return p;
}

Coord predict_gathering_point(std::span<const Coord> robots) {
    return bounding_polygon(robots).gather;
}

PolygonMetrics polygon_metrics(const BoundingPolygon& p) {
    PolygonMetrics m;
    m.width = p.x_max - p.x_min;
    m.h_left = m.width == 0 ? 0 : p.y_top - p.left_slant_corner.y2 / 2;
    m.h_right = p.y_top - p.right_slant_corner.y2 / 2;
    m.total_depth = p.y_top - p.gather.y;
    return m;
}

} // namespace trigather
