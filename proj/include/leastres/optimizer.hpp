#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "leastres/domain.hpp"
#include "leastres/grid_fn.hpp"
#include "leastres/pressure.hpp"

namespace leastres {

struct SolveConfig {
  int grid = 48;             // cells across the domain diameter on the finest level
  long long budget = 200000;  // perturbation trials over all levels
  std::uint64_t seed = 1;
  int levels = 4;      // grid/2^(levels-1), ..., grid/2, grid
  int min_cells = 12;  // coarsest level never goes below this
  double amplitude = 0.1;       // initial perturbation scale, times M
  int halve_after = 200;        // consecutive rejections before halving the amplitude
  double min_amplitude = 1e-5;  // level ends below this, times M
  int stretch_every = 4000;     // trials between nose-stretch attempts; 0 disables
  int stretch_sites = 2;
  double stretch_eps = 0.05;  // times M
  double accept_tol = 1e-10;  // relative to F of the initial guess
  double angle_tol = 0.0;     // 0 selects default_angle_tol
  double hessian_tol = 1e-8;
  int batch = 16;  // proposals evaluated together; the best one is accepted
  double patch_radius = 4.0;  // screening patch, in cells
};

struct TraceRow {
  long long iter = 0;
  int level = 0;
  double F = 0.0;
};

struct MoveStats {
  long long proposed = 0;
  long long accepted = 0;
};

struct SolveResult {
  GridFn u;
  double F = 0.0;
  std::vector<TraceRow> trace;
  long long trials = 0;
  MoveStats lower, raise, plane, stretch;
  std::vector<std::string> notes;
};

// Start value M (1 - d(x)/max d), d the distance to the boundary.
GridFn initial_guess(const GridPtr& grid, double M);

SolveResult solve_2d(const Domain& shape, double M, const PressureModel& f, const SolveConfig& cfg = {});

}  // namespace leastres
