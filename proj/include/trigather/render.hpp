#pragma once

#include <string>
#include <vector>

#include "trigather/engine.hpp"

namespace trigather {

struct RenderOptions {
    std::string out_dir;
    std::uint64_t every = 1; // sample every k-th event
};

/// Writes one SVG frame per sampled event (frame 0 is the initial state, the
/// last frame the final state) showing the grid patch, the robots, the tight
/// polygon and the predicted gathering vertex. Output bytes are a pure
/// function of the trace and options. Returns the written paths.
std::vector<std::string> render_trace(const Trace& trace, const RenderOptions& options);

/// Renders a single state against a fixed polygon; exposed for tests.
std::string render_frame_svg(const GlobalState& state, const BoundingPolygon& poly);

} // namespace trigather
