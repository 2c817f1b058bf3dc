#include "nhplan/cli/render.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <stdexcept>

namespace nhplan::cli {

namespace {

void append_number(std::string& out, double v) {
  char buf[32];
  if (v == 0.0) v = 0.0;  // no "-0"
  auto res = std::to_chars(buf, buf + sizeof buf, v);
  out.append(buf, res.ptr);
}

// Fixed three-decimal pixel coordinates keep the SVG compact and stable.
std::string px(double v) {
  char buf[32];
  double r = std::round(v * 1000.0) / 1000.0;
  if (r == 0.0) r = 0.0;
  std::snprintf(buf, sizeof buf, "%.3f", r);
  return buf;
}

struct Frame {
  double scale;
  double height;  // world units
  std::string x(double wx) const { return px(wx * scale); }
  std::string y(double wy) const { return px((height - wy) * scale); }
  std::string pt(double wx, double wy) const { return x(wx) + "," + y(wy); }
};

void arrow(std::string& out, const Frame& fr, const Pose& p, double len, const char* cls) {
  const double tx = p.x() + len * std::cos(p.theta());
  const double ty = p.y() + len * std::sin(p.theta());
  out += "<circle class=\"";
  out += cls;
  out += "\" cx=\"" + fr.x(p.x()) + "\" cy=\"" + fr.y(p.y()) + "\" r=\"" + px(0.2 * fr.scale) +
         "\"/>\n";
  out += "<line class=\"";
  out += cls;
  out += "\" x1=\"" + fr.x(p.x()) + "\" y1=\"" + fr.y(p.y()) + "\" x2=\"" + fr.x(tx) +
         "\" y2=\"" + fr.y(ty) + "\" marker-end=\"url(#head)\"/>\n";
}

}  // namespace

std::string path_to_csv(const Path& path) {
  std::string out = "step_index,x,y,theta_rad,v,delta_rad,step_cost,cumulative_cost\n";
  for (std::size_t i = 0; i < path.steps.size(); ++i) {
    const PathStep& s = path.steps[i];
    out += std::to_string(i);
    for (double v : {s.pose.x(), s.pose.y(), s.pose.theta(), s.control.v, s.control.delta,
                     s.step_cost, s.cumulative_cost}) {
      out += ',';
      append_number(out, v);
    }
    out += '\n';
  }
  return out;
}

std::string render_svg(const OccupancyGrid& grid, const Path& path, const Footprint& footprint,
                       const std::optional<Pose>& start, const std::optional<Pose>& goal,
                       const SvgOptions& opts) {
  if (!(opts.scale > 0.0)) throw std::invalid_argument("render_svg: scale must be positive");
  if (opts.footprint_every < 1) throw std::invalid_argument("render_svg: footprint_every < 1");
  const Frame fr{opts.scale, grid.world_height()};
  const double cs = grid.cell_size();

  std::string out;
  out += "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n";
  out += "<svg xmlns=\"http://www.w3.org/2000/svg\" version=\"1.1\" width=\"" +
         px(grid.world_width() * fr.scale) + "\" height=\"" + px(grid.world_height() * fr.scale) +
         "\">\n";
  out +=
      "<defs><marker id=\"head\" markerWidth=\"6\" markerHeight=\"6\" refX=\"5\" refY=\"3\" "
      "orient=\"auto\"><path d=\"M0,0 L6,3 L0,6 z\" fill=\"#333\"/></marker></defs>\n";
  out += "<style>.cell{fill:#444}.path{fill:none;stroke:#1565c0;stroke-width:1.5}"
         ".footprint{fill:none;stroke:#e65100;stroke-width:1}"
         ".start{fill:#2e7d32;stroke:#2e7d32;stroke-width:2}"
         ".goal{fill:#c62828;stroke:#c62828;stroke-width:2}</style>\n";
  out += "<rect class=\"frame\" x=\"0.000\" y=\"0.000\" width=\"" +
         px(grid.world_width() * fr.scale) + "\" height=\"" + px(grid.world_height() * fr.scale) +
         "\" fill=\"#fff\" stroke=\"#000\"/>\n";

  for (int iy = 0; iy < grid.height(); ++iy) {
    for (int ix = 0; ix < grid.width(); ++ix) {
      if (!grid.occupied(ix, iy)) continue;
      out += "<rect class=\"cell\" x=\"" + fr.x(ix * cs) + "\" y=\"" + fr.y((iy + 1) * cs) +
             "\" width=\"" + px(cs * fr.scale) + "\" height=\"" + px(cs * fr.scale) + "\"/>\n";
    }
  }

  if (!path.steps.empty()) {
    out += "<polyline class=\"path\" points=\"";
    for (std::size_t i = 0; i < path.steps.size(); ++i) {
      if (i) out += ' ';
      out += fr.pt(path.steps[i].pose.x(), path.steps[i].pose.y());
    }
    out += "\"/>\n";

    const std::size_t k = static_cast<std::size_t>(opts.footprint_every);
    for (std::size_t i = 0; i < path.steps.size(); ++i) {
      if (i % k != 0 && i + 1 != path.steps.size()) continue;
      out += "<polygon class=\"footprint\" points=\"";
      const auto corners = footprint_corners(path.steps[i].pose, footprint);
      for (std::size_t c = 0; c < corners.size(); ++c) {
        if (c) out += ' ';
        out += fr.pt(corners[c].x, corners[c].y);
      }
      out += "\"/>\n";
    }
  }

  const double arrow_len = std::max(footprint.length, cs);
  if (start) arrow(out, fr, *start, arrow_len, "start");
  if (goal) arrow(out, fr, *goal, arrow_len, "goal");
  out += "</svg>\n";
  return out;
}

void write_file(const std::string& path, const std::string& text) {
  std::ofstream f(path, std::ios::binary);
  if (!f) throw std::runtime_error("cannot write '" + path + "'");
  f << text;
  if (!f) throw std::runtime_error("error writing '" + path + "'");
}

}  // namespace nhplan::cli
