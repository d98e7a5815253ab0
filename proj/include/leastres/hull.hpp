#pragma once

#include <array>
#include <span>
#include <vector>

#include "leastres/core.hpp"

namespace leastres {

struct HullTriangle {
  std::array<int, 3> v;  // counterclockwise seen from outside
  Vec3 normal;
  double offset = 0.0;  // normal.dot(x) == offset on the plane
};

struct Hull {
  int dimension = -1;  // affine dimension of the input, -1 when empty
  double tolerance = 0.0;
  std::vector<HullTriangle> triangles;  // dimension 3 only
  // Extreme points (indices into the input), sorted ascending.
  std::vector<int> vertices;
  // dimension 2: counterclockwise cycle around plane_normal
  std::vector<int> polygon;
  Vec3 plane_normal = Vec3::Zero();
  int dropped_points = 0;  // points skipped after a non-manifold horizon
};

// Quickhull. rel_tol scales with the bounding-box diagonal of the input.
Hull convex_hull(std::span<const Vec3> points, double rel_tol = 1e-12);

// Andrew monotone chain on (x, z) pairs; returns indices of the lower chain
// sorted by x. keep_collinear keeps points lying on chain edges.
std::vector<int> lower_chain_2d(std::span<const Vec2> pts, double tol, bool keep_collinear);

// Counterclockwise hull of planar points, collinear points removed.
std::vector<int> convex_hull_2d(std::span<const Vec2> pts, double tol);

}  // namespace leastres
