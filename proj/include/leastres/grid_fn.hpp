#pragma once

#include <memory>
#include <mutex>
#include <span>
#include <vector>

#include "leastres/domain.hpp"
#include "leastres/lower_surface.hpp"
#include "leastres/poly_body.hpp"

namespace leastres {

// Node values of a function on a grid. The piecewise-linear convex function
// it stands for is the lower hull of the node graph, built on first use.
class GridFn {
 public:
  GridFn(GridPtr grid, std::vector<double> values, double height_cap);

  const Grid& grid() const { return *grid_; }
  const GridPtr& grid_ptr() const { return grid_; }
  const std::vector<double>& values() const { return values_; }
  double operator[](int k) const { return values_[k]; }
  double height_cap() const { return cap_; }
  int size() const { return static_cast<int>(values_.size()); }

  const LowerSurface& surface() const;
  double eval(const Vec2& x) const { return surface().value(x); }
  Vec2 gradient_at(const Vec2& x) const { return surface().gradient_at(x); }

  // max |value - envelope value| over nodes
  double convexity_defect() const;
  bool discretely_convex(double tol) const { return convexity_defect() <= tol; }
  // 0 <= u <= M, u = M on the boundary, discretely convex
  bool in_class(double tol) const;

 private:
  struct Cache {
    std::once_flag once;
    std::unique_ptr<LowerSurface> surface;
  };

  GridPtr grid_;
  std::vector<double> values_;
  double cap_;
  std::shared_ptr<Cache> cache_;
};

inline double envelope_tol(double cap) { return 1e-9 * std::max(cap, 1.0); }

GridFn lower_convex_envelope(const GridPtr& grid, std::span<const Vec3> samples, double height_cap);
GridFn lower_convex_envelope(const GridFn& u);

PolyBody epigraph_body(const GridFn& u);
GridFn body_to_fn(const PolyBody& c, const GridPtr& grid, double height_cap);

GridFn shrink_family_negative(const GridFn& u, const Vec3& a, const Vec3& b, double s);

struct NodeCone {
  int planes = 0;      // distinct active planes at the node
  double width = 0.0;  // max angle between their unit normals
  Vec2 mean_grad = Vec2::Zero();
  bool extreme = false;  // gradients of the planes are not collinear
};

NodeCone node_cone(const GridFn& u, int node);
double default_angle_tol(const Grid& grid);
std::vector<int> singular_points(const GridFn& u, double angle_tol);
// Interior nodes that are vertices of the lower hull with three or more
// distinct supporting planes.
std::vector<int> extreme_nodes(const GridFn& u);

}  // namespace leastres
