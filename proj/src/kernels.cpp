#include "leastres/kernels.hpp"

#include <omp.h>

#include <algorithm>
#include <cmath>

namespace leastres::kernels {
namespace {

int num_blocks(std::size_t n) { return static_cast<int>((n + kBlock - 1) / kBlock); }

double ordered_total(const std::vector<double>& partial) {
  double s = 0.0;
  for (double p : partial) s += p;
  return s;
}

double tri_cells(const LowerSurface::Tri& t, std::span<const Vec2> xy, const Grid& grid, std::span<const char> mask,
                 const PressureModel& f) {
  const double h = grid.h();
  const Vec2 o = grid.origin();
  std::vector<Vec2> poly{xy[t.v[0]], xy[t.v[1]], xy[t.v[2]]};
  Vec2 lo = poly[0].cwiseMin(poly[1]).cwiseMin(poly[2]);
  Vec2 hi = poly[0].cwiseMax(poly[1]).cwiseMax(poly[2]);
  int i0 = std::max(0, static_cast<int>(std::floor((lo.x() - o.x()) / h)));
  int i1 = std::min(grid.nx() - 1, static_cast<int>(std::floor((hi.x() - o.x()) / h)));
  int j0 = std::max(0, static_cast<int>(std::floor((lo.y() - o.y()) / h)));
  int j1 = std::min(grid.ny() - 1, static_cast<int>(std::floor((hi.y() - o.y()) / h)));
  double area = 0.0;
  for (int j = j0; j <= j1; ++j) {
    for (int i = i0; i <= i1; ++i) {
      int c = grid.cell_at(i, j);
      if (c < 0 || !mask[c]) continue;
      Vec2 q = grid.lattice_point(i, j);
      area += clip_area(poly, q.x(), q.x() + h, q.y(), q.y() + h);
    }
  }
  return area > 0.0 ? f.value(t.grad) * area : 0.0;
}

}  // namespace

void set_threads(int n) {
  if (n > 0) omp_set_num_threads(n);
}

int threads() { return omp_get_max_threads(); }

double facet_sum_serial(std::span<const Vec2> grads, std::span<const double> weights, const PressureModel& f) {
  double s = 0.0;
  for (std::size_t k = 0; k < grads.size(); ++k) s += f.value(grads[k]) * weights[k];
  return s;
}

double facet_sum(std::span<const Vec2> grads, std::span<const double> weights, const PressureModel& f) {
  const int nb = num_blocks(grads.size());
  std::vector<double> partial(nb, 0.0);
#pragma omp parallel for schedule(static)
  for (int b = 0; b < nb; ++b) {
    std::size_t k0 = static_cast<std::size_t>(b) * kBlock;
    std::size_t k1 = std::min(grads.size(), k0 + kBlock);
    double s = 0.0;
    for (std::size_t k = k0; k < k1; ++k) s += f.value(grads[k]) * weights[k];
    partial[b] = s;
  }
  return ordered_total(partial);
}

void plane_max_serial(const PlaneIndex& planes, std::span<const Vec2> pts, std::span<double> out) {
  for (std::size_t k = 0; k < pts.size(); ++k) out[k] = planes.value(pts[k]);
}

void plane_max(const PlaneIndex& planes, std::span<const Vec2> pts, std::span<double> out) {
  const long n = static_cast<long>(pts.size());
#pragma omp parallel for schedule(static)
  for (long k = 0; k < n; ++k) out[k] = planes.value(pts[k]);
}

void family_max_serial(const PlaneIndex& planes, const Domain& domain, std::span<const Vec2> nodes,
                       std::span<const double> u, std::span<const Vec3> anchors, double s, std::span<double> out) {
  for (std::size_t k = 0; k < nodes.size(); ++k) {
    double v = u[k];
    for (const Vec3& p : anchors) {
      Vec2 y = (nodes[k] - s * p.head<2>()) / (1.0 - s);
      if (!domain.contains(y, 1e-12)) continue;
      v = std::max(v, s * p.z() + (1.0 - s) * planes.value(y));
    }
    out[k] = v;
  }
}

void family_max(const PlaneIndex& planes, const Domain& domain, std::span<const Vec2> nodes, std::span<const double> u,
                std::span<const Vec3> anchors, double s, std::span<double> out) {
  const long n = static_cast<long>(nodes.size());
#pragma omp parallel for schedule(static)
  for (long k = 0; k < n; ++k) {
    double v = u[k];
    for (const Vec3& p : anchors) {
      Vec2 y = (nodes[k] - s * p.head<2>()) / (1.0 - s);
      if (!domain.contains(y, 1e-12)) continue;
      v = std::max(v, s * p.z() + (1.0 - s) * planes.value(y));
    }
    out[k] = v;
  }
}

double clipped_sum_serial(std::span<const LowerSurface::Tri> tris, std::span<const Vec2> xy, const Grid& grid,
                          std::span<const char> cell_mask, const PressureModel& f) {
  double s = 0.0;
  for (const auto& t : tris) s += tri_cells(t, xy, grid, cell_mask, f);
  return s;
}

double clipped_sum(std::span<const LowerSurface::Tri> tris, std::span<const Vec2> xy, const Grid& grid,
                   std::span<const char> cell_mask, const PressureModel& f) {
  const int nb = num_blocks(tris.size());
  std::vector<double> partial(nb, 0.0);
#pragma omp parallel for schedule(dynamic)
  for (int b = 0; b < nb; ++b) {
    std::size_t k0 = static_cast<std::size_t>(b) * kBlock;
    std::size_t k1 = std::min(tris.size(), k0 + kBlock);
    double s = 0.0;
    for (std::size_t k = k0; k < k1; ++k) s += tri_cells(tris[k], xy, grid, cell_mask, f);
    partial[b] = s;
  }
  return ordered_total(partial);
}

}  // namespace leastres::kernels
