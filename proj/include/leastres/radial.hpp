#pragma once

#include <vector>

#include "leastres/pressure.hpp"

namespace leastres {

struct RadialResult {
  std::vector<double> r;    // n+1 nodes on [0, L]
  std::vector<double> phi;  // profile at the nodes, phi(0) = 0
  double resistance = 0.0;  // 2 pi sum f(phi'_i, 0) r_i dr
  int best_start = 0;  // flat-nose ring count of the winning start
  int starts = 0;
  int iterations = 0;
};

struct RadialOptions {
  int max_iterations = 20000;
  double rel_tol = 1e-14;
};

// Radially symmetric bodies u(x) = phi(|x|) with slopes piecewise constant on
// n rings: projected gradient over nondecreasing nonnegative slopes with total
// rise at most M, restarted over a range of flat-nose radii.
RadialResult solve_radial_1d(double L, double M, const PressureModel& f, int n, const RadialOptions& opt = {});

// Weighted least-squares projection onto nondecreasing sequences.
std::vector<double> isotonic_regression(const std::vector<double>& y, const std::vector<double>& w);

}  // namespace leastres
