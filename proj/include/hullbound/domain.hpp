#pragma once

#include <cstddef>
#include <string>
#include <string_view>
#include <vector>

#include "hullbound/expr.hpp"

namespace hullbound {

struct Interval {
  double lo;
  double hi;
};

// A finite union of disjoint closed bounded intervals, sorted ascending.
// Possibly disconnected; a zero-length interval is a single point.
class Domain {
public:
  explicit Domain(std::vector<Interval> intervals);

  // Text syntax: "[a,b]" and unions "[a,b]u[c,d]". Whitespace is ignored.
  static Domain parse(std::string_view text);

  const std::vector<Interval>& intervals() const noexcept { return intervals_; }

  bool contains(double x) const noexcept;

  // The convex hull of the domain on the line: [min lo, max hi].
  Interval hull() const noexcept { return {intervals_.front().lo, intervals_.back().hi}; }

  std::string to_string() const;

private:
  std::vector<Interval> intervals_;
};

// Deterministic discretization of the graph of f over a domain.
// xs is strictly increasing, ys[i] = f(xs[i]) and finite.
struct SampledGraph {
  std::vector<double> xs;
  std::vector<double> ys;
  std::size_t resolution = 0;  // points per (non-degenerate) interval
};

inline constexpr std::size_t kDefaultResolution = 2049;

// Uniform grid of points_per_interval points per interval, endpoints included;
// a zero-length interval contributes a single point. Grids of resolution n and
// 2n-1 share the coarse grid's points bitwise. Evaluation failures abort with
// the lowest offending x.
SampledGraph sample(const Expr& f, const Domain& d, std::size_t points_per_interval);

}  // namespace hullbound
