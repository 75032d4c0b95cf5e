#include "hullbound/pipeline.hpp"

#include <utility>
#include <vector>

#include "hullbound/errors.hpp"

namespace hullbound {

Analysis analyze(const Expr& f, const Domain& d, std::size_t resolution) {
  SampledGraph graph = sample(f, d, resolution);
  std::vector<Point> pts(graph.xs.size());
  for (std::size_t i = 0; i < graph.xs.size(); ++i) pts[i] = {graph.xs[i], graph.ys[i]};
  HullPolygon hull = convex_hull_2d(pts);
  Envelopes env = envelopes(hull);
  return Analysis{f, d, std::move(graph), std::move(hull), std::move(env.lower),
                  std::move(env.upper)};
}

Analysis analyze(std::string_view fn_text, std::string_view domain_text, std::size_t resolution) {
  return analyze(parse_expr(fn_text), Domain::parse(domain_text), resolution);
}

double first_interior_breakpoint(const PLFunction& g) {
  if (g.breakpoints().size() < 3) throw Error("envelope has no interior breakpoint");
  return g.breakpoints()[1].x;
}

}  // namespace hullbound
