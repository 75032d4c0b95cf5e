#pragma once

#include <utility>
#include <vector>

#include "hullbound/domain.hpp"
#include "hullbound/expr.hpp"
#include "hullbound/geometry.hpp"

namespace hullbound {

// Finitely supported probability distribution on the real line.
// Weights are nonnegative and sum to 1 within 1e-12.
struct DiscreteDistribution {
  std::vector<double> support;
  std::vector<double> weights;

  DiscreteDistribution(std::vector<double> support_in, std::vector<double> weights_in);

  // (mean of X, mean of f(X)) by direct summation.
  std::pair<double, double> moments(const Expr& f) const;

  // Every support point must lie in the domain.
  void validate_support(const Domain& d) const;
};

inline constexpr double kWeightSumTol = 1e-12;
inline constexpr double kWitnessTol = 1e-9;

// Constructs a distribution supported on at most 3 hull vertices (2 on a
// segment hull, 1 on a point hull) whose moment pair equals `target` within
// kWitnessTol per coordinate. The hull is fan-triangulated from vertex 0 and
// the lowest-index triangle containing the target wins; boundary targets
// resolve to 2-point edge combinations. Throws if the target is outside the
// hull (reporting its distance) or if no combination reproduces the target.
DiscreteDistribution witness(const HullPolygon& h, Point target);

}  // namespace hullbound
