#include "trigather/render.hpp"

#include <algorithm>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>

namespace trigather {

namespace {

// Screen mapping: one column step is 30px, one doubled y unit 26px (close to
// the lattice's true sqrt(3)/2 aspect while keeping every coordinate integral
// so output bytes are stable).
constexpr std::int64_t kColPx = 30;
constexpr std::int64_t kRowPx = 26;

std::int64_t px(std::int64_t x) { return kColPx * x; }
std::int64_t py(std::int64_t y) { return -kRowPx * y; }

std::int64_t px_half(std::int64_t x2) { return kColPx * x2 / 2; }
std::int64_t py_half(std::int64_t y2) { return -kRowPx * y2 / 2; }

void line(std::ostringstream& out, std::int64_t x1, std::int64_t y1, std::int64_t x2,
          std::int64_t y2, const char* style) {
    out << "<line x1=\"" << x1 << "\" y1=\"" << y1 << "\" x2=\"" << x2 << "\" y2=\"" << y2
        << "\" " << style << "/>\n";
}

} // namespace

std::string render_frame_svg(const GlobalState& state, const BoundingPolygon& poly) {
    // Patch: the polygon's extents plus a margin of two columns.
    const std::int64_t gx_min = poly.x_min - 2;
    const std::int64_t gx_max = poly.x_max + 2;
    const std::int64_t gy_min = std::min(poly.y_bottom, poly.gather.y) - 2;
    const std::int64_t gy_max = poly.y_top + 2;

    const std::int64_t left = px(gx_min), right = px(gx_max);
    const std::int64_t top = py(gy_max), bottom = py(gy_min);

    std::ostringstream out;
    out << "<svg xmlns=\"http://www.w3.org/2000/svg\" viewBox=\"" << (left - 15) << " "
        << (top - 15) << " " << (right - left + 30) << " " << (bottom - top + 30) << "\">\n";
    out << "<rect x=\"" << (left - 15) << "\" y=\"" << (top - 15) << "\" width=\""
        << (right - left + 30) << "\" height=\"" << (bottom - top + 30)
        << "\" fill=\"white\"/>\n";

    const char* grid_style = "stroke=\"#cccccc\" stroke-width=\"1\"";
    for (std::int64_t x = gx_min; x <= gx_max; ++x)
        line(out, px(x), top, px(x), bottom, grid_style);
    // Negative slants: level sets x + y = c, even c across the patch.
    for (std::int64_t c = gx_min + gy_min; c <= gx_max + gy_max; ++c) {
        if ((c & 1) != 0) continue;
        line(out, px(gx_min), py(c - gx_min), px(gx_max), py(c - gx_max), grid_style);
    }
    // Positive slants: level sets y - x = c.
    for (std::int64_t c = gy_min - gx_max; c <= gy_max - gx_min; ++c) {
        if ((c & 1) != 0) continue;
        line(out, px(gx_min), py(c + gx_min), px(gx_max), py(c + gx_max), grid_style);
    }

    // Tight polygon A -> B' -> Q -> C' -> D, closed along the top layer.
    out << "<path d=\"M " << px_half(poly.top_left.x2) << " " << py_half(poly.top_left.y2)
        << " L " << px_half(poly.left_slant_corner.x2) << " "
        << py_half(poly.left_slant_corner.y2) << " L " << px(poly.gather.x) << " "
        << py(poly.gather.y) << " L " << px_half(poly.right_slant_corner.x2) << " "
        << py_half(poly.right_slant_corner.y2) << " L " << px_half(poly.top_right.x2) << " "
        << py_half(poly.top_right.y2)
        << " Z\" fill=\"none\" stroke=\"red\" stroke-width=\"2\" stroke-dasharray=\"6 4\"/>\n";

    // Predicted gathering vertex.
    out << "<rect x=\"" << (px(poly.gather.x) - 7) << "\" y=\"" << (py(poly.gather.y) - 7)
        << "\" width=\"14\" height=\"14\" fill=\"green\"/>\n";

    std::vector<Coord> vertices;
    vertices.reserve(state.occupancy().size());
    for (const auto& [c, count] : state.occupancy()) vertices.push_back(c);
    std::sort(vertices.begin(), vertices.end());
    for (const Coord c : vertices) {
        out << "<circle cx=\"" << px(c.x) << "\" cy=\"" << py(c.y)
            << "\" r=\"6\" fill=\"black\"/>\n";
        const std::int64_t count = state.count(c);
        if (count > 1)
            out << "<text x=\"" << (px(c.x) + 8) << "\" y=\"" << (py(c.y) - 8)
                << "\" font-size=\"12\" fill=\"blue\">x" << count << "</text>\n";
    }
    out << "</svg>\n";
    return out.str();
}

std::vector<std::string> render_trace(const Trace& trace, const RenderOptions& options) {
    namespace fs = std::filesystem;
    std::error_code ec;
    fs::create_directories(options.out_dir, ec);
    if (!fs::is_directory(options.out_dir))
        throw std::runtime_error("cannot create output directory: " + options.out_dir);

    const BoundingPolygon poly = bounding_polygon(trace.initial_state.positions());
    const std::uint64_t every = options.every == 0 ? 1 : options.every;

    std::vector<std::string> written;
    std::size_t frame = 0;
    auto emit = [&](const GlobalState& state) {
        char name[32];
        std::snprintf(name, sizeof name, "frame_%06zu.svg", frame++);
        const std::string path = (fs::path(options.out_dir) / name).string();
        std::ofstream out(path, std::ios::binary);
        if (!out) throw std::runtime_error("cannot write frame: " + path);
        out << render_frame_svg(state, poly);
        written.push_back(path);
    };

    GlobalState state = trace.initial_state;
    emit(state);
    for (std::size_t i = 0; i < trace.events.size(); ++i) {
        const TraceEvent& ev = trace.events[i];
        if (ev.to) state.set_position(ev.robot_id, *ev.to);
        const bool last = i + 1 == trace.events.size();
        if ((i + 1) % every == 0 && !last) emit(state);
        if (last) emit(state);
    }
    return written;
}

} // namespace trigather
