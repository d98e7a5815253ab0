#pragma once

#include "leastres/grid_fn.hpp"
#include "leastres/stretch.hpp"

namespace leastres::fixtures {

// u = x1^2 + 10 x2^2 on [-1, 1]^2, capped at its maximum 11. The nose site at
// the origin with eps = 0.02 and delta = 0.05 puts I at depth -0.01.
inline GridFn paraboloid(double h) {
  GridPtr grid = make_grid(Domain::rectangle(-1.0, 1.0, -1.0, 1.0, h));
  std::vector<double> v;
  v.reserve(grid->size());
  for (const Vec2& p : grid->nodes()) v.push_back(p.x() * p.x() + 10.0 * p.y() * p.y());
  return GridFn(grid, std::move(v), 11.0);
}

constexpr double kParaboloidEps = 0.02;
constexpr double kParaboloidDelta = 0.05;

inline SiteOptions paraboloid_site() {
  SiteOptions opt;
  opt.delta = kParaboloidDelta;
  return opt;
}

}  // namespace leastres::fixtures
