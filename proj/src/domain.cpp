#include "hullbound/domain.hpp"

#include <charconv>
#include <cmath>
#include <cstdio>
#include <optional>
#include <utility>

#include "hullbound/errors.hpp"
#include "hullbound/parallel.hpp"

namespace hullbound {

Domain::Domain(std::vector<Interval> intervals) : intervals_(std::move(intervals)) {
  if (intervals_.empty()) throw Error("domain must contain at least one interval");
  for (const auto& iv : intervals_) {
    if (!std::isfinite(iv.lo) || !std::isfinite(iv.hi))
      throw Error("domain interval bounds must be finite");
    if (iv.lo > iv.hi) throw Error("domain interval has lo > hi");
  }
  for (std::size_t i = 1; i < intervals_.size(); ++i) {
    if (intervals_[i - 1].hi >= intervals_[i].lo)
      throw Error("domain intervals must be disjoint and sorted ascending");
  }
}

bool Domain::contains(double x) const noexcept {
  for (const auto& iv : intervals_) {
    if (x >= iv.lo && x <= iv.hi) return true;
  }
  return false;
}

std::string Domain::to_string() const {
  std::string out;
  for (std::size_t i = 0; i < intervals_.size(); ++i) {
    char buf[96];
    std::snprintf(buf, sizeof buf, "%s[%.17g,%.17g]", i ? "u" : "", intervals_[i].lo,
                  intervals_[i].hi);
    out += buf;
  }
  return out;
}

namespace {

// Skips spaces, then reads one double.
double read_number(std::string_view text, std::size_t& pos) {
  while (pos < text.size() && text[pos] == ' ') ++pos;
  std::size_t start = pos;
  if (pos < text.size() && (text[pos] == '+' || text[pos] == '-')) ++pos;
  double v = 0.0;
  auto [ptr, ec] = std::from_chars(text.data() + pos, text.data() + text.size(), v);
  if (ec != std::errc{} || ptr == text.data() + pos) throw ParseError("expected a number", start);
  pos = static_cast<std::size_t>(ptr - text.data());
  if (text[start] == '-') v = -v;
  return v;
}

void expect_char(std::string_view text, std::size_t& pos, char c) {
  while (pos < text.size() && text[pos] == ' ') ++pos;
  if (pos >= text.size() || text[pos] != c)
    throw ParseError(std::string("expected '") + c + "'", pos);
  ++pos;
}

}  // namespace

Domain Domain::parse(std::string_view text) {
  std::vector<Interval> intervals;
  std::size_t pos = 0;
  for (;;) {
    expect_char(text, pos, '[');
    const double lo = read_number(text, pos);
    expect_char(text, pos, ',');
    const double hi = read_number(text, pos);
    expect_char(text, pos, ']');
    intervals.push_back({lo, hi});
    while (pos < text.size() && text[pos] == ' ') ++pos;
    if (pos >= text.size()) break;
    if (text[pos] != 'u' && text[pos] != 'U')
      throw ParseError("expected 'u' between intervals", pos);
    ++pos;
  }
  return Domain(std::move(intervals));
}

SampledGraph sample(const Expr& f, const Domain& d, std::size_t points_per_interval) {
  if (points_per_interval < 2) throw Error("resolution must be at least 2 points per interval");

  SampledGraph g;
  g.resolution = points_per_interval;
  for (const auto& iv : d.intervals()) {
    if (iv.lo == iv.hi) {
      g.xs.push_back(iv.lo);
      continue;
    }
    const std::size_t n = points_per_interval;
    // x_i = lo + i*h with forced endpoints; h halves bitwise under the n -> 2n-1
    // refinement, so nested grids share the coarse points exactly.
    const double h = (iv.hi - iv.lo) / static_cast<double>(n - 1);
    for (std::size_t i = 0; i < n; ++i) {
      double x = iv.lo + static_cast<double>(i) * h;
      if (i == 0) x = iv.lo;
      if (i == n - 1) x = iv.hi;
      g.xs.push_back(x);
    }
  }

  g.ys.assign(g.xs.size(), 0.0);
  std::vector<std::optional<EvalError>> failures(g.xs.size());
  parallel_for(g.xs.size(), [&](std::size_t i) {
    try {
      g.ys[i] = f.eval(g.xs[i]);
    } catch (const EvalError& e) {
      failures[i] = e;
    }
  });
  for (const auto& failure : failures) {
    if (failure) throw EvalError(std::string("sampling failed: ") + failure->what(), failure->x());
  }
  return g;
}

}  // namespace hullbound
