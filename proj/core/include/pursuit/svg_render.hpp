#pragma once

#include <string>

#include "pursuit/engine.hpp"

namespace pursuit {

struct RenderOptions {
  int cells_at_tick = -1;      // rebuild and draw cells at this tick; < 0 off
  bool show_obstacles = true;
  bool show_hull = false;      // pursuer hull at the final tick
  double canvas_px = 760.0;    // drawing area, excluding the margin
};

// Static SVG 1.1 plot: obstacles as filled polygons, one trajectory polyline
// per agent, translucent cells at the chosen tick, and the capture disc at
// the final evader position. Deterministic bytes for a deterministic result.
std::string render_svg(const SimResult& result, const RenderOptions& options);

void render_svg_file(const SimResult& result, const std::string& path,
                     const RenderOptions& options);

}  // namespace pursuit
