#include "hullbound/markov.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <utility>

#include "hullbound/errors.hpp"
#include "hullbound/rng.hpp"

namespace hullbound {

MarkovOperator::MarkovOperator(std::size_t rows, std::size_t cols, std::vector<double> row_major)
    : rows_(rows), cols_(cols), data_(std::move(row_major)) {
  if (rows_ == 0 || cols_ == 0 || data_.size() != rows_ * cols_)
    throw Error("operator matrix has inconsistent dimensions");
  for (std::size_t r = 0; r < rows_; ++r) {
    double sum = 0.0;
    for (std::size_t c = 0; c < cols_; ++c) {
      const double e = at(r, c);
      if (!(e >= 0.0)) throw Error("operator matrix entries must be nonnegative");
      sum += e;
    }
    if (std::fabs(sum - 1.0) > kRowSumTol) {
      char buf[96];
      std::snprintf(buf, sizeof buf, "row %zu sums to %.17g, not 1", r, sum);
      throw Error(buf);
    }
  }
}

MarkovOperator MarkovOperator::identity(std::size_t n) {
  std::vector<double> data(n * n, 0.0);
  for (std::size_t i = 0; i < n; ++i) data[i * n + i] = 1.0;
  return MarkovOperator(n, n, std::move(data));
}

std::vector<double> MarkovOperator::apply(std::span<const double> v) const {
  if (v.size() != cols_) throw Error("operator/vector dimension mismatch");
  std::vector<double> out(rows_, 0.0);
  for (std::size_t r = 0; r < rows_; ++r) {
    double acc = 0.0;
    for (std::size_t c = 0; c < cols_; ++c) acc += at(r, c) * v[c];
    out[r] = acc;
  }
  return out;
}

MarkovOperator MarkovOperator::compose(const MarkovOperator& other) const {
  if (cols_ != other.rows_) throw Error("operator composition dimension mismatch");
  std::vector<double> data(rows_ * other.cols_, 0.0);
  for (std::size_t r = 0; r < rows_; ++r) {
    for (std::size_t k = 0; k < cols_; ++k) {
      const double m = at(r, k);
      if (m == 0.0) continue;
      for (std::size_t c = 0; c < other.cols_; ++c) data[r * other.cols_ + c] += m * other.at(k, c);
    }
  }
  return MarkovOperator(rows_, other.cols_, std::move(data));
}

MarkovOperator random_stochastic(std::size_t rows, std::size_t cols, std::uint64_t seed) {
  SplitMix64 rng(seed);
  std::vector<double> data(rows * cols);
  for (std::size_t r = 0; r < rows; ++r) {
    double sum = 0.0;
    for (std::size_t c = 0; c < cols; ++c) {
      data[r * cols + c] = rng.next_positive_double();
      sum += data[r * cols + c];
    }
    for (std::size_t c = 0; c < cols; ++c) data[r * cols + c] /= sum;
  }
  return MarkovOperator(rows, cols, std::move(data));
}

FiniteConditioning::FiniteConditioning(std::vector<double> weights,
                                       std::vector<std::vector<std::size_t>> partition)
    : weights_(std::move(weights)), partition_(std::move(partition)) {
  if (weights_.empty()) throw Error("conditioning needs a nonempty weight vector");
  double sum = 0.0;
  for (double w : weights_) {
    if (!(w > 0.0)) throw Error("conditioning weights must be strictly positive");
    sum += w;
  }
  if (std::fabs(sum - 1.0) > kRowSumTol) throw Error("conditioning weights must sum to 1");

  std::vector<bool> seen(weights_.size(), false);
  for (const auto& block : partition_) {
    if (block.empty()) throw Error("conditioning block with zero total weight");
    for (std::size_t i : block) {
      if (i >= weights_.size()) throw Error("conditioning block index out of range");
      if (seen[i]) throw Error("conditioning blocks must be disjoint");
      seen[i] = true;
    }
  }
  for (bool s : seen) {
    if (!s) throw Error("conditioning blocks must cover every index");
  }
}

std::vector<double> FiniteConditioning::conditional_expectation(std::span<const double> v) const {
  if (v.size() != weights_.size()) throw Error("conditioning/vector dimension mismatch");
  std::vector<double> out(v.size(), 0.0);
  for (const auto& block : partition_) {
    double total = 0.0, acc = 0.0;
    for (std::size_t i : block) {
      total += weights_[i];
      acc += weights_[i] * v[i];
    }
    const double avg = acc / total;
    for (std::size_t i : block) out[i] = avg;
  }
  return out;
}

MarkovOperator FiniteConditioning::to_operator() const {
  const std::size_t n = weights_.size();
  std::vector<double> data(n * n, 0.0);
  for (const auto& block : partition_) {
    double total = 0.0;
    for (std::size_t i : block) total += weights_[i];
    for (std::size_t r : block) {
      for (std::size_t c : block) data[r * n + c] = weights_[c] / total;
    }
  }
  return MarkovOperator(n, n, std::move(data));
}

FiniteConditioning random_conditioning(std::size_t n, std::uint64_t seed, std::size_t max_blocks) {
  if (n == 0) throw Error("conditioning needs a nonempty space");
  SplitMix64 rng(seed);

  std::vector<double> weights(n);
  double sum = 0.0;
  for (double& w : weights) {
    w = rng.next_positive_double();
    sum += w;
  }
  for (double& w : weights) w /= sum;

  const std::size_t blocks = 1 + rng.next_below(std::min<std::size_t>(n, max_blocks));
  std::vector<std::vector<std::size_t>> partition(blocks);
  for (std::size_t i = 0; i < n; ++i) partition[rng.next_below(blocks)].push_back(i);
  partition.erase(std::remove_if(partition.begin(), partition.end(),
                                 [](const auto& b) { return b.empty(); }),
                  partition.end());
  return FiniteConditioning(std::move(weights), std::move(partition));
}

namespace {

VerifyReport check_coords(const std::vector<double>& means, const std::vector<double>& values,
                          const Expr& f, const Domain& d, const PLFunction& lower_env,
                          const PLFunction& upper_env) {
  VerifyReport report;
  report.coords.reserve(means.size());
  report.all_pass = true;
  report.worst_margin = std::numeric_limits<double>::infinity();

  for (std::size_t i = 0; i < means.size(); ++i) {
    const double u = means[i];
    if (u < lower_env.x_min() - kPLDomainTol || u > lower_env.x_max() + kPLDomainTol) {
      char buf[160];
      std::snprintf(buf, sizeof buf,
                    "internal invariant violation: averaged value %.17g escaped [%.17g, %.17g]", u,
                    lower_env.x_min(), lower_env.x_max());
      throw Error(buf);
    }
    CoordCheck c;
    c.index = i;
    c.mean_value = u;
    c.value = values[i];
    c.lower = lower_env(u);
    c.upper = upper_env(u);
    c.margin_lower = c.value - c.lower;
    c.margin_upper = c.upper - c.value;
    c.pass = c.margin_lower >= -kVerifyTol && c.margin_upper >= -kVerifyTol;
    if (d.contains(u)) {
      c.f_at_mean = f.eval(u);
      if (*c.f_at_mean != 0.0) {
        c.ratio_lower = c.lower / *c.f_at_mean;
        c.ratio_upper = c.upper / *c.f_at_mean;
      }
    }
    report.all_pass = report.all_pass && c.pass;
    report.worst_margin = std::min({report.worst_margin, c.margin_lower, c.margin_upper});
    report.coords.push_back(c);
  }
  return report;
}

std::vector<double> evaluate_all(const Expr& f, const Domain& d, std::span<const double> x_vals) {
  std::vector<double> fx(x_vals.size());
  for (std::size_t i = 0; i < x_vals.size(); ++i) {
    if (!d.contains(x_vals[i])) {
      char buf[96];
      std::snprintf(buf, sizeof buf, "x value %.17g outside the domain", x_vals[i]);
      throw Error(buf);
    }
    fx[i] = f.eval(x_vals[i]);
  }
  return fx;
}

}  // namespace

VerifyReport verify_markov_bounds(const MarkovOperator& op, std::span<const double> x_vals,
                                  const Expr& f, const Domain& d, const PLFunction& lower_env,
                                  const PLFunction& upper_env) {
  const std::vector<double> fx = evaluate_all(f, d, x_vals);
  return check_coords(op.apply(x_vals), op.apply(fx), f, d, lower_env, upper_env);
}

VerifyReport verify_conditional_bounds(const FiniteConditioning& c, std::span<const double> x_vals,
                                       const Expr& f, const Domain& d,
                                       const PLFunction& lower_env, const PLFunction& upper_env) {
  const std::vector<double> fx = evaluate_all(f, d, x_vals);
  return check_coords(c.conditional_expectation(x_vals), c.conditional_expectation(fx), f, d,
                      lower_env, upper_env);
}

}  // namespace hullbound
