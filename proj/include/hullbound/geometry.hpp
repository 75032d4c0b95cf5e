#pragma once

#include <cstddef>
#include <span>
#include <vector>

namespace hullbound {

struct Point {
  double x;
  double y;
};

// Convex polygon in counterclockwise order with no three consecutive collinear
// vertices. Degenerate inputs give a segment (2 vertices) or a single point.
// Vertices are always a subset of the points the hull was built from.
class HullPolygon {
public:
  explicit HullPolygon(std::vector<Point> ccw_vertices);

  const std::vector<Point>& vertices() const noexcept { return vertices_; }
  std::size_t size() const noexcept { return vertices_.size(); }

private:
  std::vector<Point> vertices_;
};

// Monotone-chain convex hull, O(n log n). Strictly collinear points are
// dropped (exact-sign cross product, no tolerance). Throws on an empty input
// or non-finite coordinates.
HullPolygon convex_hull_2d(std::span<const Point> points);

// Smallest signed distance from p to the inner side of any edge; nonnegative
// inside. For degenerate hulls this is minus the distance to the segment/point.
double inner_margin(const HullPolygon& h, Point p);

// True iff p is inside or within tol (absolute, per half-plane) of the hull.
bool contains(const HullPolygon& h, Point p, double tol);

// Euclidean distance from p to the hull; zero inside.
double distance_to(const HullPolygon& h, Point p);

enum class Shape { convex, concave };

// Piecewise-linear function given by breakpoints with strictly increasing x.
// Evaluation interpolates linearly; outside [x_min, x_max] (with a 1e-12
// absolute tolerance at the ends) it throws. A `convex` function has
// nondecreasing segment slopes, a `concave` one nonincreasing.
class PLFunction {
public:
  PLFunction(std::vector<Point> breakpoints, Shape shape);

  double operator()(double x) const;

  const std::vector<Point>& breakpoints() const noexcept { return breakpoints_; }
  Shape shape() const noexcept { return shape_; }
  double x_min() const noexcept { return breakpoints_.front().x; }
  double x_max() const noexcept { return breakpoints_.back().x; }

private:
  std::vector<Point> breakpoints_;
  Shape shape_;
};

inline constexpr double kPLDomainTol = 1e-12;

struct Envelopes {
  PLFunction lower;  // convex: the floor of the hull
  PLFunction upper;  // concave: the ceiling of the hull
};

// Splits the hull into its lower and upper chains over [x_min, x_max]. Where
// several vertices share an extreme x, the lower envelope takes the smallest y
// and the upper envelope the largest.
Envelopes envelopes(const HullPolygon& h);

}  // namespace hullbound
