#include "hullbound/bounds.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <vector>

#include "hullbound/errors.hpp"

namespace hullbound {

namespace {

double envelope_gap_low(const PLFunction& lower_env, const SampledGraph& g) {
  double worst = 0.0;
  for (std::size_t i = 0; i < g.xs.size(); ++i) {
    worst = std::max(worst, g.ys[i] - lower_env(g.xs[i]));
  }
  return worst;
}

double envelope_gap_high(const PLFunction& upper_env, const SampledGraph& g) {
  double worst = 0.0;
  for (std::size_t i = 0; i < g.xs.size(); ++i) {
    worst = std::max(worst, upper_env(g.xs[i]) - g.ys[i]);
  }
  return worst;
}

}  // namespace

bool jensen_check(const PLFunction& lower_env, const SampledGraph& graph) {
  return envelope_gap_low(lower_env, graph) <= kJensenTol;
}

bool jensen_check_upper(const PLFunction& upper_env, const SampledGraph& graph) {
  return envelope_gap_high(upper_env, graph) <= kJensenTol;
}

BoundsReport bounds_at(const PLFunction& lower_env, const PLFunction& upper_env, double mean_x,
                       const Expr& f, const Domain& d, const SampledGraph& graph) {
  const Interval hull = d.hull();
  if (mean_x < hull.lo - kPLDomainTol || mean_x > hull.hi + kPLDomainTol) {
    char buf[160];
    std::snprintf(buf, sizeof buf,
                  "mean %.17g outside the convex hull [%.17g, %.17g] of the domain", mean_x,
                  hull.lo, hull.hi);
    throw Error(buf);
  }

  BoundsReport r;
  r.mean_x = mean_x;
  r.lower = lower_env(mean_x);
  r.upper = upper_env(mean_x);
  if (d.contains(mean_x)) r.f_at_mean = f.eval(mean_x);
  r.jensen_reduced = jensen_check(lower_env, graph);
  return r;
}

ConstantsReport constants(const PLFunction& lower_env, const PLFunction& upper_env, const Expr& f,
                          const Domain& d, const SampledGraph& graph,
                          std::optional<double> mean_x) {
  // All probes lie in the domain: grid points by construction, breakpoints
  // because hull vertices are graph samples.
  std::vector<double> probes(graph.xs);
  for (const Point& p : lower_env.breakpoints()) probes.push_back(p.x);
  for (const Point& p : upper_env.breakpoints()) probes.push_back(p.x);
  std::sort(probes.begin(), probes.end());
  probes.erase(std::unique(probes.begin(), probes.end()), probes.end());

  ConstantsReport r;
  r.mean_x = mean_x;

  double f_min = std::numeric_limits<double>::infinity();
  double f_max = -f_min;
  double ratio_lo = f_min, ratio_hi = -f_min;
  bool ratios_defined = true;
  r.s_l = 0.0;
  r.s_u = 0.0;
  for (double x : probes) {
    const double fx = f.eval(x);
    const double lo = lower_env(x);
    const double hi = upper_env(x);
    f_min = std::min(f_min, fx);
    f_max = std::max(f_max, fx);
    r.s_l = std::max(r.s_l, fx - lo);
    r.s_u = std::max(r.s_u, hi - fx);
    if (fx == 0.0) {
      ratios_defined = false;
    } else {
      ratio_lo = std::min(ratio_lo, lo / fx);
      ratio_hi = std::max(ratio_hi, hi / fx);
    }
  }
  if (f_min < 0.0 && f_max > 0.0) ratios_defined = false;

  r.obvious_inf = f_min;
  r.obvious_sup = f_max;
  if (ratios_defined) {
    r.c_hat_l = ratio_lo;
    r.c_hat_u = ratio_hi;
    const double a = f_min / f_max, b = f_max / f_min;
    r.obvious_ratio_lo = std::min(a, b);
    r.obvious_ratio_hi = std::max(a, b);
  }

  if (mean_x && d.contains(*mean_x)) {
    const double fm = f.eval(*mean_x);
    if (fm != 0.0) {
      r.c_l_at = lower_env(*mean_x) / fm;
      r.c_u_at = upper_env(*mean_x) / fm;
    }
  }
  return r;
}

}  // namespace hullbound
