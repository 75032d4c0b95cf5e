#pragma once

#include <string_view>

#include "hullbound/bounds.hpp"
#include "hullbound/domain.hpp"
#include "hullbound/expr.hpp"
#include "hullbound/geometry.hpp"

namespace hullbound {

// Everything derived from (f, domain, resolution): the sampled graph, its
// convex hull, and the two envelopes.
struct Analysis {
  Expr f;
  Domain domain;
  SampledGraph graph;
  HullPolygon hull;
  PLFunction lower_env;
  PLFunction upper_env;
};

Analysis analyze(const Expr& f, const Domain& d, std::size_t resolution);
Analysis analyze(std::string_view fn_text, std::string_view domain_text, std::size_t resolution);

// x of the first breakpoint strictly inside (x_min, x_max) — where an envelope
// stops being a single chord. Throws when there is no interior breakpoint.
double first_interior_breakpoint(const PLFunction& g);

}  // namespace hullbound
