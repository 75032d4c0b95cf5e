#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "hullbound/domain.hpp"
#include "hullbound/expr.hpp"
#include "hullbound/geometry.hpp"

namespace hullbound {

inline constexpr double kRowSumTol = 1e-12;
inline constexpr double kVerifyTol = 1e-9;

// Row-stochastic matrix acting on functions over a finite index set: every
// entry nonnegative, every row summing to 1 within kRowSumTol. Rows index the
// output space, columns the input space.
class MarkovOperator {
public:
  MarkovOperator(std::size_t rows, std::size_t cols, std::vector<double> row_major);

  static MarkovOperator identity(std::size_t n);

  std::size_t rows() const noexcept { return rows_; }
  std::size_t cols() const noexcept { return cols_; }
  double at(std::size_t r, std::size_t c) const noexcept { return data_[r * cols_ + c]; }

  std::vector<double> apply(std::span<const double> v) const;

  // this after other: (this * other) as matrices.
  MarkovOperator compose(const MarkovOperator& other) const;

private:
  std::size_t rows_, cols_;
  std::vector<double> data_;
};

// Rows of i.i.d. uniform(0,1) entries, each normalized to sum 1.
MarkovOperator random_stochastic(std::size_t rows, std::size_t cols, std::uint64_t seed);

// A strictly positive probability vector over a finite set together with a
// partition of its indices into disjoint blocks. Conditioning on the partition
// replaces a vector by its weighted block averages.
class FiniteConditioning {
public:
  FiniteConditioning(std::vector<double> weights, std::vector<std::vector<std::size_t>> partition);

  std::size_t size() const noexcept { return weights_.size(); }
  const std::vector<double>& weights() const noexcept { return weights_; }
  const std::vector<std::vector<std::size_t>>& partition() const noexcept { return partition_; }

  std::vector<double> conditional_expectation(std::span<const double> v) const;

  // The same map as an explicit row-stochastic matrix.
  MarkovOperator to_operator() const;

private:
  std::vector<double> weights_;
  std::vector<std::vector<std::size_t>> partition_;
};

// Normalized positive weights and a uniformly random block assignment (up to
// max_blocks blocks; empty blocks are dropped).
FiniteConditioning random_conditioning(std::size_t n, std::uint64_t seed,
                                       std::size_t max_blocks = 8);

struct CoordCheck {
  std::size_t index = 0;
  double mean_value = 0.0;  // operator applied to the x values
  double value = 0.0;       // operator applied to the f(x) values
  double lower = 0.0;
  double upper = 0.0;
  double margin_lower = 0.0;  // value - lower
  double margin_upper = 0.0;  // upper - value
  bool pass = false;
  std::optional<double> f_at_mean;  // f at the averaged point, when in the domain
  std::optional<double> ratio_lower;  // lower / f_at_mean when nonzero
  std::optional<double> ratio_upper;
};

struct VerifyReport {
  std::vector<CoordCheck> coords;
  bool all_pass = false;
  double worst_margin = 0.0;  // min over coords of min(margin_lower, margin_upper)
  double tolerance = kVerifyTol;
};

// Checks the envelope sandwich on every output coordinate of the operator
// applied to (x values, f(x) values). Every x value must lie in the domain;
// an averaged value escaping the hull of the domain is an internal invariant
// violation and throws.
VerifyReport verify_markov_bounds(const MarkovOperator& op, std::span<const double> x_vals,
                                  const Expr& f, const Domain& d, const PLFunction& lower_env,
                                  const PLFunction& upper_env);

// Same check through a conditional expectation; on a finite space with
// positive weights "almost surely" means every atom.
VerifyReport verify_conditional_bounds(const FiniteConditioning& c, std::span<const double> x_vals,
                                       const Expr& f, const Domain& d,
                                       const PLFunction& lower_env, const PLFunction& upper_env);

}  // namespace hullbound
