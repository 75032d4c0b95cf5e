#include "hullbound/witness.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>

#include "hullbound/errors.hpp"

namespace hullbound {

namespace {

struct Weighted {
  Point p;
  double w;
};

DiscreteDistribution assemble(const std::vector<Weighted>& parts) {
  std::vector<double> support, weights;
  double total = 0.0;
  for (const auto& part : parts) total += part.w;
  for (const auto& part : parts) {
    const double w = part.w / total;
    if (w <= 0.0) continue;  // drop clamped-out vertices
    support.push_back(part.p.x);
    weights.push_back(w);
  }
  return DiscreteDistribution(std::move(support), std::move(weights));
}

bool close_enough(const std::vector<Weighted>& parts, Point target) {
  double mx = 0.0, my = 0.0, total = 0.0;
  for (const auto& part : parts) total += part.w;
  for (const auto& part : parts) {
    mx += (part.w / total) * part.p.x;
    my += (part.w / total) * part.p.y;
  }
  return std::fabs(mx - target.x) <= kWitnessTol && std::fabs(my - target.y) <= kWitnessTol;
}

// Two-point combination along segment a-b hitting the projection of target.
std::vector<Weighted> edge_solution(Point a, Point b, Point target) {
  const double dx = b.x - a.x, dy = b.y - a.y;
  const double len2 = dx * dx + dy * dy;
  double t = len2 > 0.0 ? ((target.x - a.x) * dx + (target.y - a.y) * dy) / len2 : 0.0;
  t = std::clamp(t, 0.0, 1.0);
  return {{a, 1.0 - t}, {b, t}};
}

}  // namespace

DiscreteDistribution::DiscreteDistribution(std::vector<double> support_in,
                                           std::vector<double> weights_in)
    : support(std::move(support_in)), weights(std::move(weights_in)) {
  if (support.empty() || support.size() != weights.size())
    throw Error("distribution needs matching, nonempty support and weights");
  double total = 0.0;
  for (double w : weights) {
    if (!(w >= 0.0)) throw Error("distribution weights must be nonnegative");
    total += w;
  }
  if (std::fabs(total - 1.0) > kWeightSumTol)
    throw Error("distribution weights must sum to 1");
}

std::pair<double, double> DiscreteDistribution::moments(const Expr& f) const {
  double mx = 0.0, mfx = 0.0;
  for (std::size_t i = 0; i < support.size(); ++i) {
    mx += weights[i] * support[i];
    mfx += weights[i] * f.eval(support[i]);
  }
  return {mx, mfx};
}

void DiscreteDistribution::validate_support(const Domain& d) const {
  for (double x : support) {
    if (!d.contains(x)) {
      char buf[96];
      std::snprintf(buf, sizeof buf, "support point %.17g outside the domain", x);
      throw Error(buf);
    }
  }
}

DiscreteDistribution witness(const HullPolygon& h, Point target) {
  if (!contains(h, target, kWitnessTol)) {
    char buf[128];
    std::snprintf(buf, sizeof buf, "target (%.17g, %.17g) outside the hull, distance %.3e",
                  target.x, target.y, distance_to(h, target));
    throw Error(buf);
  }

  const auto& v = h.vertices();

  if (v.size() == 1) return assemble({{v[0], 1.0}});

  if (v.size() == 2) {
    auto parts = edge_solution(v[0], v[1], target);
    if (!close_enough(parts, target)) throw Error("degenerate hull cannot reproduce the target");
    return assemble(parts);
  }

  // Fan triangles (v0, vi, vi+1), lowest index first.
  const Point origin = v[0];
  for (std::size_t i = 1; i + 1 < v.size(); ++i) {
    const Point a = v[i], b = v[i + 1];
    const double e1x = a.x - origin.x, e1y = a.y - origin.y;
    const double e2x = b.x - origin.x, e2y = b.y - origin.y;
    const double denom = e1x * e2y - e1y * e2x;
    const double scale = (e1x * e1x + e1y * e1y) + (e2x * e2x + e2y * e2y);
    if (std::fabs(denom) <= 1e-14 * scale) continue;  // near-flat: try the next triangle
    const double px = target.x - origin.x, py = target.y - origin.y;
    const double wa = (px * e2y - py * e2x) / denom;
    const double wb = (e1x * py - e1y * px) / denom;
    const double w0 = 1.0 - wa - wb;
    const double slack = -1e-9;
    if (wa < slack || wb < slack || w0 < slack) continue;
    std::vector<Weighted> parts = {
        {origin, std::max(w0, 0.0)}, {a, std::max(wa, 0.0)}, {b, std::max(wb, 0.0)}};
    if (close_enough(parts, target)) return assemble(parts);
  }

  // Boundary targets (and numerically awkward slivers): combine the endpoints
  // of the nearest hull edge.
  double best = std::numeric_limits<double>::infinity();
  std::size_t best_edge = 0;
  for (std::size_t i = 0; i < v.size(); ++i) {
    const Point a = v[i], b = v[(i + 1) % v.size()];
    const double dx = b.x - a.x, dy = b.y - a.y;
    const double len2 = dx * dx + dy * dy;
    double t = len2 > 0.0 ? ((target.x - a.x) * dx + (target.y - a.y) * dy) / len2 : 0.0;
    t = std::clamp(t, 0.0, 1.0);
    const double ex = target.x - (a.x + t * dx), ey = target.y - (a.y + t * dy);
    const double dist = ex * ex + ey * ey;
    if (dist < best) {
      best = dist;
      best_edge = i;
    }
  }
  auto parts = edge_solution(v[best_edge], v[(best_edge + 1) % v.size()], target);
  if (!close_enough(parts, target))
    throw Error("no vertex combination reproduces the target within tolerance");
  return assemble(parts);
}

}  // namespace hullbound
