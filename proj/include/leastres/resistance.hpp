#pragma once

#include <vector>

#include "leastres/grid_fn.hpp"
#include "leastres/poly_body.hpp"
#include "leastres/pressure.hpp"

namespace leastres {

// Per-cell selection over a grid.
struct RegionMask {
  GridPtr grid;
  std::vector<char> cells;

  static RegionMask all(const GridPtr& grid);
  static RegionMask none(const GridPtr& grid);
  bool empty() const;
};

enum class Region { plus, minus, zero };

const char* to_string(Region r);

double g_of_normal(const Vec3& n, const PressureModel& f);

// Integral of f(grad u) of the piecewise-linear interpolant. Disk domains add
// the circular segments outside the boundary polygon with the gradient of the
// adjacent facet.
double eval_F(const GridFn& u, const PressureModel& f);
double eval_F(const GridFn& u, const PressureModel& f, const RegionMask& mask);
double eval_F_serial(const GridFn& u, const PressureModel& f);
// The circular-segment part of eval_F alone (zero for polygons).
double boundary_sliver_resistance(const GridFn& u, const PressureModel& f);

double eval_F_body(const PolyBody& c, const PressureModel& f);

HessianClass classify_hessian(const PressureModel& f, const Vec2& xi, double tol = 1e-8);

// Cell labels; boundary cells are zero.
std::vector<Region> partition_domain(const GridFn& u, const PressureModel& f, double tol = 1e-8);

}  // namespace leastres
