#include "hullbound/oracle.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <limits>
#include <numbers>
#include <vector>

#include "hullbound/errors.hpp"
#include "hullbound/parallel.hpp"
#include "hullbound/rng.hpp"

namespace hullbound {

OracleTrial random_distribution(const SampledGraph& g, const OracleConfig& cfg, std::size_t trial) {
  if (trial >= cfg.n_trials) throw Error("trial index out of range");
  if (cfg.support_min < 1 || cfg.support_min > cfg.support_max)
    throw Error("bad support size range");
  if (g.xs.empty()) throw Error("empty sample grid");

  SplitMix64 rng(substream_seed(cfg.seed, trial));
  const std::size_t k =
      cfg.support_min + rng.next_below(cfg.support_max - cfg.support_min + 1);

  std::vector<double> support(k), weights(k);
  double total = 0.0;
  double mean_x = 0.0, mean_fx = 0.0;
  std::vector<std::size_t> idx(k);
  for (std::size_t j = 0; j < k; ++j) {
    idx[j] = static_cast<std::size_t>(rng.next_below(g.xs.size()));
    support[j] = g.xs[idx[j]];
    weights[j] = rng.next_exponential();
    total += weights[j];
  }
  if (total == 0.0) {  // k exponentials all zero: probability ~0, keep it defined
    for (double& w : weights) w = 1.0;
    total = static_cast<double>(k);
  }
  for (std::size_t j = 0; j < k; ++j) {
    weights[j] /= total;
    mean_x += weights[j] * g.xs[idx[j]];
    mean_fx += weights[j] * g.ys[idx[j]];
  }
  return OracleTrial{DiscreteDistribution(std::move(support), std::move(weights)), mean_x, mean_fx};
}

OracleSummary run_oracle(const HullPolygon& h, const SampledGraph& g, const OracleConfig& cfg) {
  if (cfg.n_trials < 1) throw Error("oracle needs at least one trial");
  if (cfg.tolerance < 0.0) throw Error("oracle tolerance must be nonnegative");

  std::vector<double> margins(cfg.n_trials);
  parallel_for(cfg.n_trials, [&](std::size_t trial) {
    const OracleTrial t = random_distribution(g, cfg, trial);
    margins[trial] = inner_margin(h, {t.mean_x, t.mean_fx});
  });

  OracleSummary s;
  s.trials = cfg.n_trials;
  s.tolerance = cfg.tolerance;
  s.seed = cfg.seed;
  s.worst_margin = std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < margins.size(); ++i) {
    s.worst_margin = std::min(s.worst_margin, margins[i]);
    if (margins[i] >= -cfg.tolerance) {
      ++s.passes;
    } else if (!s.first_failure) {
      s.first_failure = i;
    }
  }
  s.pass_fraction = static_cast<double>(s.passes) / static_cast<double>(s.trials);
  return s;
}

ContinuousLaw ContinuousLaw::uniform(double a, double b) {
  if (!(a < b)) throw Error("uniform law needs a < b");
  ContinuousLaw law;
  law.kind = Kind::uniform;
  law.a = a;
  law.b = b;
  return law;
}

ContinuousLaw ContinuousLaw::truncated_normal(double mu, double sigma, double a, double b) {
  if (!(sigma > 0.0)) throw Error("truncated normal needs sigma > 0");
  if (!(a < b)) throw Error("truncated normal needs a < b");
  ContinuousLaw law;
  law.kind = Kind::truncated_normal;
  law.mu = mu;
  law.sigma = sigma;
  law.a = a;
  law.b = b;
  return law;
}

namespace {

std::vector<double> parse_params(std::string_view text, std::size_t expected) {
  std::vector<double> out;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    double v = 0.0;
    bool neg = false;
    if (pos < text.size() && (text[pos] == '-' || text[pos] == '+')) {
      neg = text[pos] == '-';
      ++pos;
    }
    auto [ptr, ec] = std::from_chars(text.data() + pos, text.data() + text.size(), v);
    if (ec != std::errc{}) throw Error("malformed law parameter list");
    out.push_back(neg ? -v : v);
    pos = static_cast<std::size_t>(ptr - text.data());
    if (pos == text.size()) break;
    if (text[pos] != ',') throw Error("malformed law parameter list");
    ++pos;
  }
  if (out.size() != expected) throw Error("wrong number of law parameters");
  return out;
}

}  // namespace

ContinuousLaw ContinuousLaw::parse(std::string_view text) {
  const std::size_t colon = text.find(':');
  if (colon == std::string_view::npos) throw Error("law syntax is name:params");
  const std::string_view name = text.substr(0, colon);
  const std::string_view params = text.substr(colon + 1);
  if (name == "uniform") {
    auto p = parse_params(params, 2);
    return uniform(p[0], p[1]);
  }
  if (name == "truncnorm") {
    auto p = parse_params(params, 4);
    return truncated_normal(p[0], p[1], p[2], p[3]);
  }
  throw Error("unsupported law '" + std::string(name) + "'");
}

McEstimate mc_mean(const Expr& f, const ContinuousLaw& law, const Domain& d, std::size_t n_samples,
                   std::uint64_t seed) {
  if (n_samples < 2) throw Error("Monte Carlo needs at least 2 samples");
  bool inside = false;
  for (const auto& iv : d.intervals()) inside = inside || (law.a >= iv.lo && law.b <= iv.hi);
  if (!inside) throw Error("law support is not inside a single interval of the domain");

  SplitMix64 rng(seed);
  auto draw = [&]() {
    if (law.kind == ContinuousLaw::Kind::uniform) return rng.next_double(law.a, law.b);
    for (;;) {  // rejection from the untruncated normal (Box-Muller)
      const double u1 = rng.next_positive_double();
      const double u2 = rng.next_double();
      const double z = std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * std::numbers::pi * u2);
      const double x = law.mu + law.sigma * z;
      if (x >= law.a && x <= law.b) return x;
    }
  };

  double sx = 0.0, sxx = 0.0, sf = 0.0, sff = 0.0;
  for (std::size_t i = 0; i < n_samples; ++i) {
    const double x = draw();
    const double fx = f.eval(x);
    sx += x;
    sxx += x * x;
    sf += fx;
    sff += fx * fx;
  }
  const double n = static_cast<double>(n_samples);
  McEstimate e;
  e.samples = n_samples;
  e.mean_x = sx / n;
  e.mean_fx = sf / n;
  const double var_x = std::max(0.0, (sxx - n * e.mean_x * e.mean_x) / (n - 1.0));
  const double var_f = std::max(0.0, (sff - n * e.mean_fx * e.mean_fx) / (n - 1.0));
  e.se_x = std::sqrt(var_x / n);
  e.se_fx = std::sqrt(var_f / n);
  return e;
}

}  // namespace hullbound
