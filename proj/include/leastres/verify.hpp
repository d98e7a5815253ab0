#pragma once

#include <string>
#include <vector>

#include "leastres/grid_fn.hpp"
#include "leastres/pressure.hpp"

namespace leastres {

// Distances are in units of the grid step h unless noted.
struct VerifyTolerances {
  double boundary = 0.0;  // absolute
  double gap_lo = 0.05;
  double gap_hi = 0.95;
  double gap_fraction = 0.90;  // least share of regular cells outside (gap_lo, gap_hi)
  double extreme_distance = 2.0;
  double extreme_fraction = 0.95;
  // extreme vertices count when they sit this far below the lower hull of
  // their eight neighbours; smaller dents are the facetting of smooth parts
  double extreme_depth = 0.05;
  double developability = 10.0;
  double hausdorff = 3.0;
  double angle_tol = 0.1;  // theta, radians between support normals
  int histogram_bins = 20;  // over |grad u| in [0, 2], last bin open
};

struct Check {
  double value = 0.0;
  double tol = 0.0;
  bool pass = false;
};

struct GradientGap {
  Check check;  // value: share of regular cells outside the gap, pass when >= tol
  double lo = 0.0, hi = 0.0;
  double mass_in_gap = 0.0;  // area share of regular cells inside the gap
  std::vector<double> histogram;  // area shares
  int regular_cells = 0;
};

struct Reconstruction {
  bool possible = false;
  int singular_interior = 0;
  double hausdorff = 0.0;  // absolute
  Check check;             // value in units of h
};

struct PartitionSummary {
  int plus = 0, minus = 0, zero = 0;  // cell counts
  double singular_area_fraction = 0.0;
};

struct VerificationReport {
  double h = 0.0;
  Check boundary_check;
  GradientGap gradient_gap;
  Check extreme_vs_singular;  // value: share of extreme vertices near the singular set
  int extreme_count = 0;    // extreme vertices deeper than extreme_depth
  int extreme_shallow = 0;  // extreme vertices left out as facetting
  int singular_count = 0;
  Check developability;  // value: max |lambda_min| on regular cells, tol in absolute units
  Reconstruction reconstruction;
  PartitionSummary partition;
  std::vector<std::string> notes;
  bool all_pass() const;
};

VerificationReport verify_solution(const GridFn& u, const PressureModel& f, const VerifyTolerances& tol = {});

// Hull of the singular nodes at their graph heights together with the rim at
// height M, compared against the epigraph.
Reconstruction reconstruct_from_singular(const GridFn& u, double angle_tol, double tol_h = 3.0);

// Height of the lower hull of the eight lattice neighbours above u at node k;
// negative when a neighbour is missing.
double vertex_depth(const GridFn& u, int k);

// Interior cells whose corners are all lattice nodes and none singular.
std::vector<char> regular_cells(const GridFn& u, const std::vector<int>& singular);

}  // namespace leastres
