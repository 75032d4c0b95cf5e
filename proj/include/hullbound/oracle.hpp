#pragma once

#include <cstdint>
#include <optional>
#include <string_view>

#include "hullbound/domain.hpp"
#include "hullbound/expr.hpp"
#include "hullbound/geometry.hpp"
#include "hullbound/witness.hpp"

namespace hullbound {

struct OracleConfig {
  std::size_t n_trials = 10000;
  std::size_t support_min = 1;
  std::size_t support_max = 4;
  std::uint64_t seed = 0;
  double tolerance = 1e-9;
};

struct OracleTrial {
  DiscreteDistribution dist;
  double mean_x;
  double mean_fx;
};

// Random distribution supported on the sample grid: support size uniform in
// [support_min, support_max], support indices uniform over the grid, weights
// flat-Dirichlet (normalized i.i.d. exponentials by inverse CDF). Fully
// determined by (cfg.seed, trial); bitwise reproducible.
OracleTrial random_distribution(const SampledGraph& g, const OracleConfig& cfg, std::size_t trial);

struct OracleSummary {
  std::size_t trials = 0;
  std::size_t passes = 0;
  double pass_fraction = 0.0;
  double worst_margin = 0.0;  // most negative signed margin seen
  std::optional<std::size_t> first_failure;
  double tolerance = 0.0;
  std::uint64_t seed = 0;
};

// Brute-force membership check: every trial's exact moment pair must lie in
// the hull (which must be built from the same grid) within cfg.tolerance.
OracleSummary run_oracle(const HullPolygon& h, const SampledGraph& g, const OracleConfig& cfg);

// Continuous comparison laws with easily verified moments.
struct ContinuousLaw {
  enum class Kind { uniform, truncated_normal };
  Kind kind = Kind::uniform;
  double a = 0.0;
  double b = 1.0;
  double mu = 0.0;
  double sigma = 1.0;

  static ContinuousLaw uniform(double a, double b);
  static ContinuousLaw truncated_normal(double mu, double sigma, double a, double b);
  // "uniform:a,b" or "truncnorm:mu,sigma,a,b"
  static ContinuousLaw parse(std::string_view text);
};

struct McEstimate {
  double mean_x = 0.0;
  double se_x = 0.0;
  double mean_fx = 0.0;
  double se_fx = 0.0;
  std::size_t samples = 0;
};

// Monte-Carlo estimates of (mean X, mean f(X)) with standard errors. The law's
// support [a,b] must sit inside a single interval of the domain.
McEstimate mc_mean(const Expr& f, const ContinuousLaw& law, const Domain& d, std::size_t n_samples,
                   std::uint64_t seed);

}  // namespace hullbound
