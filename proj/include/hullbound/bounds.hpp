#pragma once

#include <optional>

#include "hullbound/domain.hpp"
#include "hullbound/expr.hpp"
#include "hullbound/geometry.hpp"

namespace hullbound {

// Two-sided bound on the mean of f(X) for any X with the given mean, read off
// the envelopes at mean_x. f_at_mean is absent when mean_x is not in the
// domain (possible for disconnected domains).
struct BoundsReport {
  double mean_x = 0.0;
  double lower = 0.0;
  double upper = 0.0;
  std::optional<double> f_at_mean;
  bool jensen_reduced = false;  // f is its own lower envelope on the grid
};

// Ratio/gap constants comparing the envelopes with f itself, plus the obvious
// inf/sup baselines. Ratio fields are absent ("undefined") whenever f vanishes
// or changes sign on the probe set; nothing is fabricated.
struct ConstantsReport {
  std::optional<double> mean_x;
  std::optional<double> c_l_at;   // lower envelope / f at mean_x
  std::optional<double> c_u_at;   // upper envelope / f at mean_x
  double s_l = 0.0;               // sup (f - lower envelope)
  double s_u = 0.0;               // sup (upper envelope - f)
  std::optional<double> c_hat_l;  // inf over probes of lower envelope / f
  std::optional<double> c_hat_u;  // sup over probes of upper envelope / f
  double obvious_inf = 0.0;       // inf f
  double obvious_sup = 0.0;       // sup f
  std::optional<double> obvious_ratio_lo;  // inf f(x)/f(y)
  std::optional<double> obvious_ratio_hi;  // sup f(x)/f(y)
};

inline constexpr double kJensenTol = 1e-7;

// Throws when mean_x is outside the convex hull of the domain.
BoundsReport bounds_at(const PLFunction& lower_env, const PLFunction& upper_env, double mean_x,
                       const Expr& f, const Domain& d, const SampledGraph& graph);

// Probes are the union of the sample grid and the envelope breakpoints.
ConstantsReport constants(const PLFunction& lower_env, const PLFunction& upper_env, const Expr& f,
                          const Domain& d, const SampledGraph& graph,
                          std::optional<double> mean_x);

// True iff f matches its lower envelope at every sample within kJensenTol,
// i.e. the lower bound reproduces the classical convex-function inequality.
bool jensen_check(const PLFunction& lower_env, const SampledGraph& graph);

// Mirror check on the upper envelope (concave f).
bool jensen_check_upper(const PLFunction& upper_env, const SampledGraph& graph);

}  // namespace hullbound
