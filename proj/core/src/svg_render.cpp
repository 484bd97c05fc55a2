#include "pursuit/svg_render.hpp"

#include <algorithm>
#include <cstdio>
#include <sstream>

#include "pursuit/errors.hpp"
#include "pursuit/trace_io.hpp"

namespace pursuit {

namespace {

constexpr double kMargin = 40.0;  // px, room for the axis labels

std::string num(double v) {
  char buf[48];
  std::snprintf(buf, sizeof(buf), "%.6g", v);
  return buf;
}

struct Bounds {
  double min_x = 0.0, min_y = 0.0, max_x = 1.0, max_y = 1.0;
  bool seeded = false;

  void add(Point2 p) {
    if (!seeded) {
      min_x = max_x = p.x;
      min_y = max_y = p.y;
      seeded = true;
      return;
    }
    min_x = std::min(min_x, p.x);
    max_x = std::max(max_x, p.x);
    min_y = std::min(min_y, p.y);
    max_y = std::max(max_y, p.y);
  }
  void pad(double f) {
    const double dx = std::max(max_x - min_x, 1e-6) * f;
    const double dy = std::max(max_y - min_y, 1e-6) * f;
    min_x -= dx; max_x += dx;
    min_y -= dy; max_y += dy;
  }
};

struct Mapper {
  Bounds b;
  double scale = 1.0;
  double width = 0.0, height = 0.0;

  explicit Mapper(Bounds bounds, double canvas) : b(bounds) {
    const double wx = b.max_x - b.min_x;
    const double wy = b.max_y - b.min_y;
    scale = canvas / std::max({wx, wy, 1e-9});
    width = wx * scale + 2.0 * kMargin;
    height = wy * scale + 2.0 * kMargin;
  }
  double x(double wx) const { return kMargin + (wx - b.min_x) * scale; }
  double y(double wy) const { return kMargin + (b.max_y - wy) * scale; }
  std::string at(Point2 p) const { return num(x(p.x)) + "," + num(y(p.y)); }
};

const char* kPursuerColors[] = {"#1f77b4", "#2c8ab8", "#17becf", "#4c72b0",
                                "#3a86c8", "#5599cc", "#2a6f97", "#468faf"};

void polygon_element(std::ostringstream& out, const Mapper& m,
                     const ConvexPolygon& poly, const std::string& style) {
  if (poly.empty()) return;
  out << "  <polygon points=\"";
  for (std::size_t i = 0; i < poly.vertices.size(); ++i) {
    out << (i ? " " : "") << m.at(poly.vertices[i]);
  }
  out << "\" " << style << "/>\n";
}

}  // namespace

std::string render_svg(const SimResult& result, const RenderOptions& options) {
  const Scenario& s = result.scenario;
  Bounds bounds;
  for (const Obstacle& obs : s.obstacles) {
    for (const Point2& v : obs.hull.vertices) bounds.add(v);
  }
  for (const TickSnapshot& snap : result.trace) {
    for (const FullState& st : snap.pursuers) bounds.add(st.p);
    bounds.add(snap.evader.p);
  }
  if (!result.trace.empty()) {
    const Point2 e = result.trace.back().evader.p;
    bounds.add(e + Vec2{s.capture_radius, s.capture_radius});
    bounds.add(e - Vec2{s.capture_radius, s.capture_radius});
  }
  if (!bounds.seeded) bounds.add({0.0, 0.0});
  bounds.pad(0.05);
  const Mapper m(bounds, options.canvas_px);

  std::ostringstream out;
  out << "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n"
      << "<svg xmlns=\"http://www.w3.org/2000/svg\" version=\"1.1\" width=\""
      << num(m.width) << "\" height=\"" << num(m.height) << "\" viewBox=\"0 0 "
      << num(m.width) << " " << num(m.height) << "\">\n"
      << "  <rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";

  // Axis frame plus corner coordinate labels.
  out << "  <rect x=\"" << num(kMargin) << "\" y=\"" << num(kMargin)
      << "\" width=\"" << num(m.width - 2 * kMargin) << "\" height=\""
      << num(m.height - 2 * kMargin)
      << "\" fill=\"none\" stroke=\"#444\" stroke-width=\"1\"/>\n";
  out << "  <text x=\"" << num(kMargin) << "\" y=\"" << num(m.height - 12.0)
      << "\" font-size=\"12\" fill=\"#444\">(" << num(bounds.min_x) << ", "
      << num(bounds.min_y) << ") m</text>\n";
  out << "  <text x=\"" << num(m.width - kMargin) << "\" y=\"" << num(24.0)
      << "\" font-size=\"12\" fill=\"#444\" text-anchor=\"end\">("
      << num(bounds.max_x) << ", " << num(bounds.max_y) << ") m</text>\n";

  if (options.show_obstacles) {
    for (const Obstacle& obs : s.obstacles) {
      polygon_element(out, m, obs.hull,
                      "fill=\"#9e9e9e\" stroke=\"#616161\" stroke-width=\"1\"");
    }
  }

  const int tick = options.cells_at_tick;
  if (tick >= 0 && tick < static_cast<int>(result.trace.size())) {
    const TickSnapshot& snap = result.trace[static_cast<std::size_t>(tick)];
    std::vector<Point2> pos;
    pos.reserve(snap.pursuers.size());
    for (const FullState& st : snap.pursuers) pos.push_back(st.p);
    polygon_element(out, m, snap.region.rect(),
                    "fill=\"none\" stroke=\"#888\" stroke-width=\"1\" "
                    "stroke-dasharray=\"6,4\"");
    for (std::size_t i = 0; i < pos.size(); ++i) {
      try {
        const VoronoiCell cell = build_pursuer_cell(
            i, pos, snap.evader.p, s.pursuer_radii, s.obstacles, snap.region);
        polygon_element(out, m, cell.polygon,
                        "fill=\"#1f77b4\" fill-opacity=\"0.15\" "
                        "stroke=\"#1f77b4\" stroke-width=\"0.7\"");
      } catch (const Error&) {
      }
    }
    try {
      const VoronoiCell ecell = build_evader_cell(pos, snap.evader.p,
                                                  s.obstacles, snap.region);
      polygon_element(out, m, ecell.polygon,
                      "fill=\"#d62728\" fill-opacity=\"0.15\" "
                      "stroke=\"#d62728\" stroke-width=\"0.7\"");
    } catch (const Error&) {
    }
  }

  const std::size_t n_pursuers =
      result.trace.empty() ? 0 : result.trace.front().pursuers.size();
  for (std::size_t i = 0; i < n_pursuers; ++i) {
    const char* color = kPursuerColors[i % (sizeof(kPursuerColors) /
                                            sizeof(kPursuerColors[0]))];
    out << "  <polyline fill=\"none\" stroke=\"" << color
        << "\" stroke-width=\"1.4\" points=\"";
    for (std::size_t k = 0; k < result.trace.size(); ++k) {
      out << (k ? " " : "") << m.at(result.trace[k].pursuers[i].p);
    }
    out << "\"/>\n";
    out << "  <circle cx=\"" << num(m.x(result.trace.front().pursuers[i].p.x))
        << "\" cy=\"" << num(m.y(result.trace.front().pursuers[i].p.y))
        << "\" r=\"4\" fill=\"" << color << "\"/>\n";
  }
  if (!result.trace.empty()) {
    out << "  <polyline fill=\"none\" stroke=\"#d62728\" stroke-width=\"1.6\" "
           "points=\"";
    for (std::size_t k = 0; k < result.trace.size(); ++k) {
      out << (k ? " " : "") << m.at(result.trace[k].evader.p);
    }
    out << "\"/>\n";
    const Point2 e0 = result.trace.front().evader.p;
    const Point2 ef = result.trace.back().evader.p;
    out << "  <circle cx=\"" << num(m.x(e0.x)) << "\" cy=\"" << num(m.y(e0.y))
        << "\" r=\"4\" fill=\"#d62728\"/>\n";
    out << "  <circle cx=\"" << num(m.x(ef.x)) << "\" cy=\"" << num(m.y(ef.y))
        << "\" r=\"" << num(s.capture_radius * m.scale)
        << "\" fill=\"none\" stroke=\"#d62728\" stroke-width=\"1\" "
           "stroke-dasharray=\"4,3\"/>\n";

    if (options.show_hull && n_pursuers >= 3) {
      std::vector<Point2> last;
      last.reserve(n_pursuers);
      for (const FullState& st : result.trace.back().pursuers) last.push_back(st.p);
      polygon_element(out, m, convex_hull(last),
                      "fill=\"none\" stroke=\"#555\" stroke-width=\"1\" "
                      "stroke-dasharray=\"2,3\"");
    }
  }

  out << "  <text x=\"" << num(m.width / 2.0) << "\" y=\"" << num(20.0)
      << "\" font-size=\"13\" fill=\"#222\" text-anchor=\"middle\">outcome: "
      << outcome_name(result.outcome);
  if (result.t_c) out << ", capture at " << num(*result.t_c) << " s";
  out << "</text>\n";
  out << "</svg>\n";
  return out.str();
}

void render_svg_file(const SimResult& result, const std::string& path,
                     const RenderOptions& options) {
  write_text_file(path, render_svg(result, options));
}

}  // namespace pursuit
