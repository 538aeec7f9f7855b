#include "colorpart/svg.hpp"

#include <algorithm>
#include <array>
#include <charconv>
#include <limits>
#include <sstream>

#include "colorpart/power_diagram.hpp"

namespace colorpart {

namespace {

constexpr std::array<const char*, 8> kPartFill{"#fde0c5", "#c9e4f5", "#d8f0d2", "#eadcf2",
                                               "#fff3b0", "#f7d4dc", "#d4f0ee", "#e6e6e6"};
constexpr std::array<const char*, 4> kColorInk{"#c0392b", "#1f5fa8", "#2e8b57", "#8e44ad"};

std::string num(double v) {
  char buf[32];
  auto [end, ec] = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, end);
}

std::string points_attr(const std::vector<Point2>& poly) {
  std::string s;
  for (std::size_t i = 0; i < poly.size(); ++i) s += (i ? " " : "") + num(poly[i].x) + "," + num(poly[i].y);
  return s;
}

}  // namespace

std::vector<std::vector<ExactPoint2>> part_hulls(const ColoredPointSet& ps, const std::vector<int>& assignment, int n) {
  std::vector<std::vector<ExactPoint2>> parts(n);
  for (std::size_t x = 0; x < ps.size(); ++x) parts.at(assignment.at(x)).push_back(ps.exact_point2(x));
  for (auto& p : parts) p = convex_hull(std::move(p));
  return parts;
}

std::string render_svg(const ColoredPointSet& ps, const ResultFile& result, const PlotOptions& options) {
  if (ps.dimension() != 2) throw InputError("plots are drawn for planar instances only");
  if (result.assignment.size() != ps.size()) throw InputError("result does not match the instance");
  if (ps.size() == 0) throw InputError("the instance has no points");

  Point2 lo{std::numeric_limits<double>::infinity(), std::numeric_limits<double>::infinity()};
  Point2 hi{-lo.x, -lo.y};
  for (std::size_t i = 0; i < ps.size(); ++i) {
    const Point2 p = ps.point2(i);
    lo = {std::min(lo.x, p.x), std::min(lo.y, p.y)};
    hi = {std::max(hi.x, p.x), std::max(hi.y, p.y)};
  }
  const double eps = result.diagnostics.epsilon;
  const double extent = std::max({hi.x - lo.x, hi.y - lo.y, 4.0 * eps, 1e-9});
  const double pad = 0.12 * extent + eps;
  const Box box{{lo.x - pad, lo.y - pad}, {hi.x + pad, hi.y + pad}};
  const double w = box.hi.x - box.lo.x, h = box.hi.y - box.lo.y;
  const double marker = 0.008 * extent;

  std::ostringstream out;
  out << "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n";
  out << "<svg xmlns=\"http://www.w3.org/2000/svg\" version=\"1.1\" width=\"" << num(options.pixel_size)
      << "\" height=\"" << num(options.pixel_size * h / w) << "\" viewBox=\"" << num(box.lo.x) << ' '
      << num(-box.hi.y) << ' ' << num(w) << ' ' << num(h) << "\">\n";
  out << "<g transform=\"scale(1,-1)\">\n";
  out << "<rect x=\"" << num(box.lo.x) << "\" y=\"" << num(box.lo.y) << "\" width=\"" << num(w) << "\" height=\""
      << num(h) << "\" fill=\"#ffffff\"/>\n";

  const auto& d = result.diagnostics;
  if (options.regions && d.sites.size() == static_cast<std::size_t>(result.n) && d.weights.size() == d.sites.size()) {
    WeightedSites ws;
    for (const auto& s : d.sites) ws.sites.push_back({s.at(0), s.at(1)});
    ws.weights = d.weights;
    const auto cells = power_cells(ws);
    for (std::size_t j = 0; j < cells.size(); ++j) {
      const auto poly = region_polygon(cells[j], box);
      if (poly.size() < 3) continue;
      out << "<polygon class=\"region\" data-part=\"" << j + 1 << "\" points=\"" << points_attr(poly) << "\" fill=\""
          << kPartFill[j % kPartFill.size()]
          << "\" stroke=\"#777777\" stroke-width=\"1\" vector-effect=\"non-scaling-stroke\"/>\n";
    }
  }

  const auto hulls = part_hulls(ps, result.assignment, result.n);
  for (std::size_t j = 0; j < hulls.size(); ++j) {
    std::vector<Point2> poly;
    for (const auto& v : hulls[j]) poly.push_back({to_double(v.x), to_double(v.y)});
    out << "<polygon class=\"hull\" data-part=\"" << j + 1 << "\" points=\"" << points_attr(poly)
        << "\" fill=\"none\" stroke=\"#222222\" stroke-width=\"1.5\" stroke-linejoin=\"round\""
        << " vector-effect=\"non-scaling-stroke\"/>\n";
  }

  for (std::size_t i = 0; i < ps.size(); ++i) {
    const Point2 p = ps.point2(i);
    const char* ink = kColorInk[(ps.color(i) - 1) % kColorInk.size()];
    out << "<circle class=\"ball\" cx=\"" << num(p.x) << "\" cy=\"" << num(p.y) << "\" r=\"" << num(eps)
        << "\" fill=\"none\" stroke=\"" << ink << "\" stroke-width=\"0.75\" vector-effect=\"non-scaling-stroke\"/>\n";
    out << "<circle class=\"point\" data-color=\"" << ps.color(i) << "\" data-part=\"" << result.assignment[i] + 1
        << "\" cx=\"" << num(p.x) << "\" cy=\"" << num(p.y) << "\" r=\"" << num(marker) << "\" fill=\"" << ink
        << "\"/>\n";
  }
  out << "</g>\n</svg>\n";
  return out.str();
}

}  // namespace colorpart
