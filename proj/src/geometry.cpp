#include "hullbound/geometry.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>
#include <utility>

#include "hullbound/errors.hpp"

namespace hullbound {

namespace {

double cross(Point o, Point a, Point b) {
  return (a.x - o.x) * (b.y - o.y) - (a.y - o.y) * (b.x - o.x);
}

bool lex_less(Point a, Point b) { return a.x != b.x ? a.x < b.x : a.y < b.y; }

// One monotone-chain pass (pop while the turn is clockwise or collinear):
// yields the lower hull for points running left to right and the upper hull
// for points running right to left.
std::vector<Point> hull_chain(std::span<const Point> pts) {
  std::vector<Point> chain;
  chain.reserve(pts.size());
  for (Point p : pts) {
    while (chain.size() >= 2 && cross(chain[chain.size() - 2], chain.back(), p) <= 0.0) {
      chain.pop_back();
    }
    chain.push_back(p);
  }
  return chain;
}

double dist_point_segment(Point a, Point b, Point p) {
  const double dx = b.x - a.x, dy = b.y - a.y;
  const double len2 = dx * dx + dy * dy;
  double t = len2 > 0.0 ? ((p.x - a.x) * dx + (p.y - a.y) * dy) / len2 : 0.0;
  t = std::clamp(t, 0.0, 1.0);
  const double ex = p.x - (a.x + t * dx), ey = p.y - (a.y + t * dy);
  return std::sqrt(ex * ex + ey * ey);
}

}  // namespace

HullPolygon::HullPolygon(std::vector<Point> ccw_vertices) : vertices_(std::move(ccw_vertices)) {
  if (vertices_.empty()) throw Error("hull must have at least one vertex");
}

HullPolygon convex_hull_2d(std::span<const Point> points) {
  if (points.empty()) throw Error("convex hull of an empty point set");
  for (Point p : points) {
    if (!std::isfinite(p.x) || !std::isfinite(p.y))
      throw Error("convex hull input has a non-finite coordinate");
  }

  std::vector<Point> pts(points.begin(), points.end());
  std::sort(pts.begin(), pts.end(), lex_less);
  pts.erase(std::unique(pts.begin(), pts.end(),
                        [](Point a, Point b) { return a.x == b.x && a.y == b.y; }),
            pts.end());

  if (pts.size() <= 2) return HullPolygon(std::move(pts));

  std::vector<Point> lower = hull_chain(pts);
  std::reverse(pts.begin(), pts.end());
  std::vector<Point> upper = hull_chain(pts);

  lower.pop_back();  // each chain ends where the other begins
  upper.pop_back();
  lower.insert(lower.end(), upper.begin(), upper.end());
  return HullPolygon(std::move(lower));
}

double inner_margin(const HullPolygon& h, Point p) {
  const auto& v = h.vertices();
  if (v.size() == 1) {
    const double dx = p.x - v[0].x, dy = p.y - v[0].y;
    return -std::sqrt(dx * dx + dy * dy);
  }
  if (v.size() == 2) return -dist_point_segment(v[0], v[1], p);

  double margin = std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < v.size(); ++i) {
    const Point a = v[i];
    const Point b = v[(i + 1) % v.size()];
    const double dx = b.x - a.x, dy = b.y - a.y;
    const double len = std::sqrt(dx * dx + dy * dy);
    margin = std::min(margin, cross(a, b, p) / len);
  }
  return margin;
}

bool contains(const HullPolygon& h, Point p, double tol) {
  if (tol < 0.0) throw Error("containment tolerance must be nonnegative");
  return inner_margin(h, p) >= -tol;
}

double distance_to(const HullPolygon& h, Point p) {
  if (inner_margin(h, p) >= 0.0) return 0.0;
  const auto& v = h.vertices();
  if (v.size() == 1) {
    const double dx = p.x - v[0].x, dy = p.y - v[0].y;
    return std::sqrt(dx * dx + dy * dy);
  }
  const std::size_t edges = v.size() == 2 ? 1 : v.size();
  double best = std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < edges; ++i) {
    best = std::min(best, dist_point_segment(v[i], v[(i + 1) % v.size()], p));
  }
  return best;
}

PLFunction::PLFunction(std::vector<Point> breakpoints, Shape shape)
    : breakpoints_(std::move(breakpoints)), shape_(shape) {
  if (breakpoints_.empty()) throw Error("piecewise-linear function needs a breakpoint");
  for (std::size_t i = 1; i < breakpoints_.size(); ++i) {
    if (!(breakpoints_[i - 1].x < breakpoints_[i].x))
      throw Error("piecewise-linear breakpoints must have strictly increasing x");
  }
}

double PLFunction::operator()(double x) const {
  const double lo = x_min(), hi = x_max();
  if (x < lo || x > hi) {
    if (x >= lo - kPLDomainTol && x < lo) x = lo;
    else if (x <= hi + kPLDomainTol && x > hi) x = hi;
    else {
      char buf[128];
      std::snprintf(buf, sizeof buf, "x = %.17g outside envelope domain [%.17g, %.17g]", x, lo, hi);
      throw Error(buf);
    }
  }
  auto it = std::lower_bound(breakpoints_.begin(), breakpoints_.end(), x,
                             [](Point p, double v) { return p.x < v; });
  if (it != breakpoints_.end() && it->x == x) return it->y;  // breakpoints are exact
  const Point& b = *it;
  const Point& a = *(it - 1);
  const double t = (x - a.x) / (b.x - a.x);
  return a.y + t * (b.y - a.y);
}

Envelopes envelopes(const HullPolygon& h) {
  // One representative vertex per x (smallest y for the lower chain, largest
  // for the upper), then one monotone-chain pass per side.
  std::vector<Point> pts(h.vertices());
  std::sort(pts.begin(), pts.end(), lex_less);

  std::vector<Point> mins, maxs;
  for (const Point& p : pts) {
    if (mins.empty() || mins.back().x != p.x) mins.push_back(p);
    if (!maxs.empty() && maxs.back().x == p.x) maxs.back() = p;
    else maxs.push_back(p);
  }

  std::vector<Point> lower = hull_chain(mins);
  std::reverse(maxs.begin(), maxs.end());
  std::vector<Point> upper = hull_chain(maxs);
  std::reverse(upper.begin(), upper.end());

  return Envelopes{PLFunction(std::move(lower), Shape::convex),
                   PLFunction(std::move(upper), Shape::concave)};
}

}  // namespace hullbound
