// Command-line front end: computes graph hulls and envelope functions for a
// scalar function on a (possibly disconnected) domain, evaluates two-sided
// bounds on means, builds witness distributions, and runs the verification
// suites. All output is deterministic given the flags: JSON keys have a fixed
// order and floats are printed with 17 significant digits.

#include <cmath>
#include <cstdio>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "hullbound/errors.hpp"
#include "hullbound/json_io.hpp"
#include "hullbound/markov.hpp"
#include "hullbound/oracle.hpp"
#include "hullbound/pipeline.hpp"
#include "hullbound/rng.hpp"
#include "hullbound/witness.hpp"

namespace hb = hullbound;

namespace {

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct CommonOpts {
  std::string fn;
  std::string domain;
  std::string config;
  std::string out;
  std::string format = "json";
  std::size_t resolution = hb::kDefaultResolution;
};

void add_common(CLI::App* cmd, CommonOpts& o) {
  cmd->add_option("--fn", o.fn, "function expression in x, e.g. \"2-x+sin(2*pi*x)\"");
  cmd->add_option("--domain", o.domain, "domain, e.g. \"[0,1]\" or \"[-2,-1]u[1,2]\"");
  cmd->add_option("--resolution", o.resolution, "sample points per interval (default 2049)");
  cmd->add_option("--config", o.config, "JSON config file; flags override its values");
  cmd->add_option("--out", o.out, "write output to this path instead of stdout");
  cmd->add_option("--format", o.format, "output format: json or csv (csv: envelope only)")
      ->check(CLI::IsMember({"json", "csv"}));
}

// Flags beat config values beat defaults.
void merge_config(const CLI::App* cmd, CommonOpts& o,
                  const std::map<std::string, std::string>& cfg) {
  auto want = [&](const char* flag, const char* key) -> const std::string* {
    if (cmd->count(flag) == 0) {
      auto it = cfg.find(key);
      if (it != cfg.end()) return &it->second;
    }
    return nullptr;
  };
  if (const auto* v = want("--fn", "fn")) o.fn = *v;
  if (const auto* v = want("--domain", "domain")) o.domain = *v;
  if (const auto* v = want("--resolution", "resolution")) o.resolution = std::stoull(*v);
  if (const auto* v = want("--format", "format")) o.format = *v;
  if (const auto* v = want("--out", "out")) o.out = *v;
}

CommonOpts finalize_common(const CLI::App* cmd, CommonOpts o) {
  if (!o.config.empty()) merge_config(cmd, o, hb::config_from_json(hb::read_file(o.config)));
  if (o.fn.empty()) throw UsageError("--fn is required (flag or config)");
  if (o.domain.empty()) throw UsageError("--domain is required (flag or config)");
  return o;
}

void emit(const hb::JsonValue& v, const std::string& out) {
  const std::string text = v.dump(2) + "\n";
  if (out.empty()) std::fputs(text.c_str(), stdout);
  else hb::write_file(out, text);
}

int run_envelope(const CLI::App* cmd, CommonOpts opts) {
  opts = finalize_common(cmd, std::move(opts));
  const hb::Analysis a = hb::analyze(opts.fn, opts.domain, opts.resolution);
  if (opts.format == "csv") {
    if (opts.out.empty()) throw UsageError("--format csv requires --out");
    hb::write_file(opts.out + ".lower.csv", hb::to_csv(a.lower_env));
    hb::write_file(opts.out + ".upper.csv", hb::to_csv(a.upper_env));
    hb::write_file(opts.out + ".hull.csv", hb::to_csv(a.hull));
    return 0;
  }
  hb::JsonValue o = hb::JsonValue::object();
  o.add("fn", opts.fn);
  o.add("domain", hb::to_json(a.domain));
  o.add("resolution", opts.resolution);
  o.add("lower_envelope", hb::to_json(a.lower_env));
  o.add("upper_envelope", hb::to_json(a.upper_env));
  o.add("hull", hb::to_json(a.hull));
  emit(o, opts.out);
  return 0;
}

int run_bounds(const CLI::App* cmd, CommonOpts opts, double mean) {
  opts = finalize_common(cmd, std::move(opts));
  const hb::Analysis a = hb::analyze(opts.fn, opts.domain, opts.resolution);
  const hb::BoundsReport r = hb::bounds_at(a.lower_env, a.upper_env, mean, a.f, a.domain, a.graph);
  emit(hb::to_json(r), opts.out);
  return 0;
}

int run_constants(const CLI::App* cmd, CommonOpts opts, std::optional<double> mean) {
  opts = finalize_common(cmd, std::move(opts));
  const hb::Analysis a = hb::analyze(opts.fn, opts.domain, opts.resolution);
  const hb::ConstantsReport r =
      hb::constants(a.lower_env, a.upper_env, a.f, a.domain, a.graph, mean);
  emit(hb::to_json(r), opts.out);
  return 0;
}

std::pair<double, double> parse_target(const std::string& at) {
  const std::size_t comma = at.find(',');
  if (comma == std::string::npos) throw UsageError("--at expects \"x,y\"");
  try {
    return {std::stod(at.substr(0, comma)), std::stod(at.substr(comma + 1))};
  } catch (const std::exception&) {
    throw UsageError("--at expects \"x,y\"");
  }
}

int run_witness(const CLI::App* cmd, CommonOpts opts, const std::string& at) {
  opts = finalize_common(cmd, std::move(opts));
  const auto [tx, ty] = parse_target(at);
  const hb::Analysis a = hb::analyze(opts.fn, opts.domain, opts.resolution);
  const hb::DiscreteDistribution dist = hb::witness(a.hull, {tx, ty});
  const auto [mx, mfx] = dist.moments(a.f);

  hb::JsonValue o = hb::to_json(dist);
  o.add("target", hb::JsonValue::array().push(tx).push(ty));
  o.add("moments", hb::JsonValue::array().push(mx).push(mfx));
  emit(o, opts.out);
  return 0;
}

struct VerifyOpts {
  std::string matrix_file;
  std::string conditioning_file;
  std::string xvals_file;
  std::size_t rows = 8, cols = 16, size = 64;
  std::uint64_t seed = 0;
};

std::vector<double> random_x_vals(const hb::SampledGraph& g, std::size_t n, std::uint64_t seed) {
  hb::SplitMix64 rng(hb::substream_seed(seed, 1));
  std::vector<double> xs(n);
  for (double& x : xs) x = g.xs[rng.next_below(g.xs.size())];
  return xs;
}

int run_verify_markov(const CLI::App* cmd, CommonOpts opts, const VerifyOpts& v) {
  opts = finalize_common(cmd, std::move(opts));
  const hb::Analysis a = hb::analyze(opts.fn, opts.domain, opts.resolution);

  hb::VerifyReport report = [&] {
    if (!v.matrix_file.empty()) {
      const hb::MarkovOperator op = hb::markov_from_json(hb::read_file(v.matrix_file));
      if (v.xvals_file.empty()) throw UsageError("--matrix requires --xvals");
      const std::vector<double> xs = hb::reals_from_json(hb::read_file(v.xvals_file));
      return hb::verify_markov_bounds(op, xs, a.f, a.domain, a.lower_env, a.upper_env);
    }
    const hb::MarkovOperator op =
        hb::random_stochastic(v.rows, v.cols, hb::substream_seed(v.seed, 2));
    const std::vector<double> xs = random_x_vals(a.graph, v.cols, v.seed);
    return hb::verify_markov_bounds(op, xs, a.f, a.domain, a.lower_env, a.upper_env);
  }();

  emit(hb::to_json(report), opts.out);
  return report.all_pass ? 0 : 1;
}

int run_verify_conditional(const CLI::App* cmd, CommonOpts opts, const VerifyOpts& v) {
  opts = finalize_common(cmd, std::move(opts));
  const hb::Analysis a = hb::analyze(opts.fn, opts.domain, opts.resolution);

  hb::VerifyReport report = [&] {
    if (!v.conditioning_file.empty()) {
      const hb::FiniteConditioning c =
          hb::conditioning_from_json(hb::read_file(v.conditioning_file));
      if (v.xvals_file.empty()) throw UsageError("--conditioning requires --xvals");
      const std::vector<double> xs = hb::reals_from_json(hb::read_file(v.xvals_file));
      return hb::verify_conditional_bounds(c, xs, a.f, a.domain, a.lower_env, a.upper_env);
    }
    const hb::FiniteConditioning c = hb::random_conditioning(v.size, hb::substream_seed(v.seed, 2));
    const std::vector<double> xs = random_x_vals(a.graph, v.size, v.seed);
    return hb::verify_conditional_bounds(c, xs, a.f, a.domain, a.lower_env, a.upper_env);
  }();

  emit(hb::to_json(report), opts.out);
  return report.all_pass ? 0 : 1;
}

struct OracleOpts {
  std::size_t trials = 10000;
  std::uint64_t seed = 0;
  double tolerance = 1e-9;
  std::size_t support_min = 1, support_max = 4;
  std::string law;
  std::size_t samples = 100000;
};

int run_oracle(const CLI::App* cmd, CommonOpts opts, const OracleOpts& oo) {
  opts = finalize_common(cmd, std::move(opts));
  const hb::Analysis a = hb::analyze(opts.fn, opts.domain, opts.resolution);

  hb::OracleConfig cfg;
  cfg.n_trials = oo.trials;
  cfg.seed = oo.seed;
  cfg.tolerance = oo.tolerance;
  cfg.support_min = oo.support_min;
  cfg.support_max = oo.support_max;
  const hb::OracleSummary summary = hb::run_oracle(a.hull, a.graph, cfg);

  hb::JsonValue o = hb::to_json(summary);
  if (!oo.law.empty()) {
    const hb::ContinuousLaw law = hb::ContinuousLaw::parse(oo.law);
    const hb::McEstimate mc = hb::mc_mean(a.f, law, a.domain, oo.samples, oo.seed);
    hb::JsonValue m = hb::to_json(mc);
    const hb::BoundsReport b =
        hb::bounds_at(a.lower_env, a.upper_env, mc.mean_x, a.f, a.domain, a.graph);
    m.add("lower_at_mean", b.lower);
    m.add("upper_at_mean", b.upper);
    m.add("inside_bounds", mc.mean_fx >= b.lower - oo.tolerance - 4.0 * mc.se_fx &&
                               mc.mean_fx <= b.upper + oo.tolerance + 4.0 * mc.se_fx);
    o.add("mc", std::move(m));
  }
  emit(o, opts.out);
  return summary.passes == summary.trials ? 0 : 1;
}

// ---------------------------------------------------------------------------
// example: end-to-end runs of the two worked cases with a pass/fail table.

struct TableRow {
  std::string name;
  double computed;
  double reference;
  double tolerance;
};

bool print_table(const std::vector<TableRow>& rows) {
  bool all_pass = true;
  std::printf("  %-18s %-22s %-12s %-10s %s\n", "check", "computed", "reference", "tolerance",
              "status");
  for (const auto& r : rows) {
    const bool pass = std::fabs(r.computed - r.reference) <= r.tolerance;
    all_pass = all_pass && pass;
    std::printf("  %-18s %-22.12g %-12g %-10g %s\n", r.name.c_str(), r.computed, r.reference,
                r.tolerance, pass ? "PASS" : "FAIL");
  }
  return all_pass;
}

int run_example(const std::string& name, std::size_t resolution) {
  if (name == "ex1") {
    const hb::Analysis a = hb::analyze("2 - x + sin(2*pi*x)", "[0,1]", resolution);
    const hb::ConstantsReport c =
        hb::constants(a.lower_env, a.upper_env, a.f, a.domain, a.graph, std::nullopt);

    double symmetry = 0.0;  // the graph maps onto itself under (x,y) -> (1-x, 3-y)
    for (int i = 0; i <= 1000; ++i) {
      const double x = static_cast<double>(i) / 1000.0;
      symmetry = std::max(symmetry, std::fabs(a.upper_env(x) - (3.0 - a.lower_env(1.0 - x))));
    }

    std::printf("example ex1: f(x) = 2 - x + sin(2*pi*x) on [0,1], resolution %zu\n\n", resolution);
    const bool ok = print_table({
        {"kink_x", hb::first_interior_breakpoint(a.lower_env), 0.715, 2e-3},
        {"c_hat_l", c.c_hat_l.value_or(std::nan("")), 0.5, 0.05},
        {"c_hat_u", c.c_hat_u.value_or(std::nan("")), 6.5, 0.1},
        {"obvious_ratio_lo", c.obvious_ratio_lo.value_or(std::nan("")), 0.09, 0.01},
        {"obvious_ratio_hi", c.obvious_ratio_hi.value_or(std::nan("")), 11.6, 0.1},
        {"upper_symmetry", symmetry, 0.0, 1e-9},
    });
    const hb::BoundsReport b = hb::bounds_at(a.lower_env, a.upper_env, 0.5, a.f, a.domain, a.graph);
    std::printf("\nbounds at mean 0.5: [%.12g, %.12g], f(0.5) = %.12g\n", b.lower, b.upper,
                b.f_at_mean.value_or(std::nan("")));
    return ok ? 0 : 1;
  }

  if (name == "ex2") {
    const hb::Analysis a = hb::analyze("1/x", "[-2,-1]u[1,2]", resolution);
    auto lower_chord = [](double x) { return x <= -1.0 ? (-3.0 - x) / 2.0 : (x - 1.0) / 2.0; };
    auto upper_chord = [](double x) { return x <= 1.0 ? (x + 1.0) / 2.0 : (3.0 - x) / 2.0; };

    std::printf("example ex2: f(x) = 1/x on [-2,-1]u[1,2], resolution %zu\n\n", resolution);
    std::vector<TableRow> rows;
    for (double x : {-1.5, 0.0, 1.5}) {
      char nm[32];
      std::snprintf(nm, sizeof nm, "lower(%g)", x);
      rows.push_back({nm, a.lower_env(x), lower_chord(x), 1e-6});
    }
    for (double x : {-1.5, 0.0, 1.5}) {
      char nm[32];
      std::snprintf(nm, sizeof nm, "upper(%g)", x);
      rows.push_back({nm, a.upper_env(x), upper_chord(x), 1e-6});
    }
    const bool ok = print_table(rows);

    const hb::BoundsReport b = hb::bounds_at(a.lower_env, a.upper_env, 0.0, a.f, a.domain, a.graph);
    std::printf("\nbounds at mean 0: [%.12g, %.12g]; f at the mean is undefined "
                "(0 is outside the domain)\n",
                b.lower, b.upper);
    std::printf("note: the hull-derived upper envelope is (x+1)/2 on [-2,1] and (3-x)/2 on\n"
                "      [1,2]; the transcription that swaps these pieces fails at x = -2\n"
                "      (it gives 2.5 where the graph point is -0.5) and is rejected here.\n");
    return ok ? 0 : 1;
  }

  throw UsageError("unknown example '" + name + "' (expected ex1 or ex2)");
}

hb::JsonValue default_config() {
  hb::JsonValue o = hb::JsonValue::object();
  o.add("resolution", hb::kDefaultResolution);
  o.add("format", "json");
  o.add("trials", std::uint64_t{10000});
  o.add("seed", std::uint64_t{0});
  o.add("tolerance", 1e-9);
  o.add("support_min", std::uint64_t{1});
  o.add("support_max", std::uint64_t{4});
  o.add("samples", std::uint64_t{100000});
  o.add("rows", std::uint64_t{8});
  o.add("cols", std::uint64_t{16});
  o.add("size", std::uint64_t{64});
  o.add("example_resolution", std::uint64_t{4097});
  return o;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"two-sided bounds on means of f(X) from the convex hull of the graph of f"};
  app.require_subcommand(0, 1);
  bool print_config = false;
  app.add_flag("--print-config", print_config, "print all defaults as JSON and exit");

  CommonOpts env_o, bnd_o, con_o, wit_o, vm_o, vc_o, orc_o;
  double bounds_mean = 0.0;
  std::optional<double> constants_mean;
  std::string witness_at;
  VerifyOpts vm_v, vc_v;
  OracleOpts orc_v;
  std::string example_name;
  std::size_t example_resolution = 4097;

  CLI::App* c_env = app.add_subcommand("envelope", "compute envelope functions and hull");
  add_common(c_env, env_o);

  CLI::App* c_bnd = app.add_subcommand("bounds", "evaluate the bounds at a mean");
  add_common(c_bnd, bnd_o);
  c_bnd->add_option("--mean", bounds_mean, "mean of X")->required();

  CLI::App* c_con = app.add_subcommand("constants", "ratio/gap constants and obvious baselines");
  add_common(c_con, con_o);
  double constants_mean_raw = 0.0;
  CLI::Option* con_mean_opt = c_con->add_option("--mean", constants_mean_raw, "optional mean of X");

  CLI::App* c_wit = app.add_subcommand("witness", "distribution attaining a hull point");
  add_common(c_wit, wit_o);
  c_wit->add_option("--at", witness_at, "target point \"x,y\"")->required();

  CLI::App* c_vm = app.add_subcommand("verify-markov", "per-coordinate bound checks for a "
                                                       "row-stochastic operator");
  add_common(c_vm, vm_o);
  c_vm->add_option("--matrix", vm_v.matrix_file, "JSON matrix file (array of rows)");
  c_vm->add_option("--xvals", vm_v.xvals_file, "JSON array of x values in the domain");
  c_vm->add_option("--rows", vm_v.rows, "rows of the random operator (default 8)");
  c_vm->add_option("--cols", vm_v.cols, "columns of the random operator (default 16)");
  c_vm->add_option("--seed", vm_v.seed, "seed for the random operator and x values");

  CLI::App* c_vc = app.add_subcommand("verify-conditional", "per-atom bound checks for a finite "
                                                            "conditional expectation");
  add_common(c_vc, vc_o);
  c_vc->add_option("--conditioning", vc_v.conditioning_file,
                   "JSON file with \"weights\" and \"partition\"");
  c_vc->add_option("--xvals", vc_v.xvals_file, "JSON array of x values in the domain");
  c_vc->add_option("--size", vc_v.size, "atoms of the random space (default 64)");
  c_vc->add_option("--seed", vc_v.seed, "seed for the random conditioning and x values");

  CLI::App* c_orc = app.add_subcommand("oracle", "brute-force hull-membership check over random "
                                                 "discrete distributions");
  add_common(c_orc, orc_o);
  c_orc->add_option("--trials", orc_v.trials, "number of random distributions (default 10000)");
  c_orc->add_option("--seed", orc_v.seed, "base seed (default 0)");
  c_orc->add_option("--tolerance", orc_v.tolerance, "membership tolerance (default 1e-9)");
  c_orc->add_option("--support-min", orc_v.support_min, "smallest support size (default 1)");
  c_orc->add_option("--support-max", orc_v.support_max, "largest support size (default 4)");
  c_orc->add_option("--law", orc_v.law,
                    "also Monte-Carlo a continuous law: uniform:a,b or truncnorm:mu,sigma,a,b");
  c_orc->add_option("--samples", orc_v.samples, "Monte-Carlo sample count (default 100000)");

  CLI::App* c_ex = app.add_subcommand("example", "run a worked example and compare against its "
                                                 "reference values");
  c_ex->add_option("name", example_name, "ex1 or ex2")->required();
  c_ex->add_option("--resolution", example_resolution,
                   "sample points per interval (default 4097)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;
  }

  try {
    if (print_config) {
      std::fputs((default_config().dump(2) + "\n").c_str(), stdout);
      return 0;
    }
    if (*c_env) return run_envelope(c_env, env_o);
    if (*c_bnd) return run_bounds(c_bnd, bnd_o, bounds_mean);
    if (*c_con) {
      if (con_mean_opt->count() > 0) constants_mean = constants_mean_raw;
      return run_constants(c_con, con_o, constants_mean);
    }
    if (*c_wit) return run_witness(c_wit, wit_o, witness_at);
    if (*c_vm) return run_verify_markov(c_vm, vm_o, vm_v);
    if (*c_vc) return run_verify_conditional(c_vc, vc_o, vc_v);
    if (*c_orc) return run_oracle(c_orc, orc_o, orc_v);
    if (*c_ex) return run_example(example_name, example_resolution);
    throw UsageError("a subcommand is required (see --help)");
  } catch (const UsageError& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 2;
  } catch (const hb::ParseError& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 2;
  } catch (const std::exception& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 1;
  }
}
