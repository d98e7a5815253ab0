#include "leastres/verify.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "leastres/lower_surface.hpp"
#include "leastres/resistance.hpp"

namespace leastres {

namespace {

// Closest point on triangle abc to p.
Vec3 closest_on_triangle(const Vec3& p, const Vec3& a, const Vec3& b, const Vec3& c) {
  Vec3 ab = b - a, ac = c - a, ap = p - a;
  double d1 = ab.dot(ap), d2 = ac.dot(ap);
  if (d1 <= 0 && d2 <= 0) return a;
  Vec3 bp = p - b;
  double d3 = ab.dot(bp), d4 = ac.dot(bp);
  if (d3 >= 0 && d4 <= d3) return b;
  double vc = d1 * d4 - d3 * d2;
  if (vc <= 0 && d1 >= 0 && d3 <= 0) return a + ab * (d1 / (d1 - d3));
  Vec3 cp = p - c;
  double d5 = ab.dot(cp), d6 = ac.dot(cp);
  if (d6 >= 0 && d5 <= d6) return c;
  double vb = d5 * d2 - d1 * d6;
  if (vb <= 0 && d2 >= 0 && d6 <= 0) return a + ac * (d2 / (d2 - d6));
  double va = d3 * d6 - d5 * d4;
  if (va <= 0 && (d4 - d3) >= 0 && (d5 - d6) >= 0) return b + (c - b) * ((d4 - d3) / ((d4 - d3) + (d5 - d6)));
  double den = 1.0 / (va + vb + vc);
  return a + ab * (vb * den) + ac * (vc * den);
}

// Second differences at a lattice node with all eight neighbours.
bool node_hessian(const GridFn& u, int k, Mat2& H) {
  const Grid& g = u.grid();
  int i = g.lattice_i(k), j = g.lattice_j(k);
  if (i < 0) return false;
  int nb[3][3];
  for (int di = -1; di <= 1; ++di) {
    for (int dj = -1; dj <= 1; ++dj) {
      nb[di + 1][dj + 1] = g.node_at(i + di, j + dj);
      if (nb[di + 1][dj + 1] < 0) return false;
    }
  }
  auto v = [&](int di, int dj) { return u[nb[di + 1][dj + 1]]; };
  double h2 = g.h() * g.h();
  double uxx = (v(1, 0) - 2.0 * v(0, 0) + v(-1, 0)) / h2;
  double uyy = (v(0, 1) - 2.0 * v(0, 0) + v(0, -1)) / h2;
  double uxy = (v(1, 1) - v(1, -1) - v(-1, 1) + v(-1, -1)) / (4.0 * h2);
  H << uxx, uxy, uxy, uyy;
  return true;
}

}  // namespace

double vertex_depth(const GridFn& u, int k) {
  const Grid& g = u.grid();
  int i = g.lattice_i(k), j = g.lattice_j(k);
  if (i < 0) return -1.0;
  std::vector<Vec2> xy;
  std::vector<double> z;
  for (int di = -1; di <= 1; ++di) {
    for (int dj = -1; dj <= 1; ++dj) {
      if (di == 0 && dj == 0) continue;
      int id = g.node_at(i + di, j + dj);
      if (id < 0) return -1.0;
      xy.push_back(g.node(id));
      z.push_back(u[id]);
    }
  }
  LowerSurface ring(xy, z, g.h());
  return ring.value(g.node(k)) - u[k];
}

bool VerificationReport::all_pass() const {
  return boundary_check.pass && gradient_gap.check.pass && extreme_vs_singular.pass && developability.pass &&
         reconstruction.check.pass;
}

std::vector<char> regular_cells(const GridFn& u, const std::vector<int>& singular) {
  const Grid& g = u.grid();
  std::vector<char> sing(u.size(), 0);
  for (int k : singular) sing[k] = 1;
  std::vector<char> out(g.cells().size(), 0);
  for (std::size_t c = 0; c < g.cells().size(); ++c) {
    const Grid::Cell& cell = g.cells()[c];
    if (cell.boundary) continue;
    bool ok = true;
    for (int k : cell.corners) {
      if (k < 0 || g.lattice_i(k) < 0 || sing[k]) ok = false;
    }
    out[c] = ok ? 1 : 0;
  }
  return out;
}

Reconstruction reconstruct_from_singular(const GridFn& u, double angle_tol, double tol_h) {
  const Grid& g = u.grid();
  const double M = u.height_cap();
  Reconstruction rec;
  rec.check.tol = tol_h;
  std::vector<int> sing = singular_points(u, angle_tol);
  std::vector<Vec2> xy;
  std::vector<double> z;
  for (int k : sing) {
    if (g.is_boundary(k)) continue;
    ++rec.singular_interior;
    xy.push_back(g.node(k));
    z.push_back(u[k]);
  }
  if (rec.singular_interior == 0) {
    // the rim alone spans only the flat top
    rec.possible = false;
    rec.check.value = std::numeric_limits<double>::infinity();
    rec.check.pass = false;
    return rec;
  }
  for (int k : g.boundary_cycle()) {
    xy.push_back(g.node(k));
    z.push_back(M);
  }
  LowerSurface body(xy, z, g.h());
  rec.possible = true;

  std::vector<Vec2> lo(body.triangles().size()), hi(body.triangles().size());
  for (std::size_t t = 0; t < body.triangles().size(); ++t) {
    const auto& tri = body.triangles()[t];
    lo[t] = xy[tri.v[0]].cwiseMin(xy[tri.v[1]]).cwiseMin(xy[tri.v[2]]);
    hi[t] = xy[tri.v[0]].cwiseMax(xy[tri.v[1]]).cwiseMax(xy[tri.v[2]]);
  }
  // Body subset of C(u): the distance is attained at lower hull vertices of C(u),
  // which lie below the reconstruction, so their nearest point is on its lower surface.
  const auto& on = u.surface().on_hull();
  std::vector<double> dist(u.size(), 0.0);
#pragma omp parallel for schedule(dynamic, 64)
  for (int k = 0; k < u.size(); ++k) {
    if (!on[k]) continue;
    const Vec2& x = g.node(k);
    double gap = body.value(x) - u[k];
    if (!(gap > 0.0)) continue;
    Vec3 p(x.x(), x.y(), u[k]);
    double best = gap;
    for (std::size_t t = 0; t < lo.size(); ++t) {
      if (x.x() < lo[t].x() - best || x.x() > hi[t].x() + best || x.y() < lo[t].y() - best ||
          x.y() > hi[t].y() + best) {
        continue;
      }
      const auto& tri = body.triangles()[t];
      auto P = [&](int v) { return Vec3(xy[v].x(), xy[v].y(), z[v]); };
      best = std::min(best, (closest_on_triangle(p, P(tri.v[0]), P(tri.v[1]), P(tri.v[2])) - p).norm());
    }
    dist[k] = best;
  }
  rec.hausdorff = *std::max_element(dist.begin(), dist.end());
  rec.check.value = rec.hausdorff / g.h();
  rec.check.pass = rec.check.value <= tol_h;
  return rec;
}

VerificationReport verify_solution(const GridFn& u, const PressureModel& f, const VerifyTolerances& tol) {
  const Grid& g = u.grid();
  const double M = u.height_cap();
  const double h = g.h();
  VerificationReport rep;
  rep.h = h;

  double bmax = 0.0;
  for (int k = 0; k < u.size(); ++k) {
    if (g.is_boundary(k)) bmax = std::max(bmax, std::abs(u[k] - M));
  }
  rep.boundary_check = {bmax, tol.boundary, bmax <= tol.boundary};

  std::vector<int> sing = singular_points(u, tol.angle_tol);
  rep.singular_count = static_cast<int>(sing.size());
  std::vector<char> regular = regular_cells(u, sing);

  GradientGap& gap = rep.gradient_gap;
  gap.lo = tol.gap_lo;
  gap.hi = tol.gap_hi;
  gap.histogram.assign(tol.histogram_bins, 0.0);
  gap.check.tol = tol.gap_fraction;
  double area = 0.0, outside = 0.0;
  double dev = 0.0;
  for (std::size_t c = 0; c < regular.size(); ++c) {
    if (!regular[c]) continue;
    const Grid::Cell& cell = g.cells()[c];
    ++gap.regular_cells;
    double s = u.gradient_at(cell.lo + Vec2(0.5 * h, 0.5 * h)).norm();
    area += cell.area;
    if (s <= tol.gap_lo || s >= tol.gap_hi) outside += cell.area;
    int bin = std::min(tol.histogram_bins - 1, static_cast<int>(s / 2.0 * tol.histogram_bins));
    gap.histogram[bin] += cell.area;

    Mat2 H = Mat2::Zero();
    int n = 0;
    for (int k : cell.corners) {
      Mat2 Hk;
      if (node_hessian(u, k, Hk)) {
        H += Hk;
        ++n;
      }
    }
    if (n > 0) {
      Eigen::SelfAdjointEigenSolver<Mat2> es(H / n);
      dev = std::max(dev, std::abs(es.eigenvalues()(0)));
    }
  }
  if (area > 0.0) {
    for (double& b : gap.histogram) b /= area;
    gap.check.value = outside / area;
    gap.mass_in_gap = 1.0 - gap.check.value;
  } else {
    gap.check.value = 1.0;
    rep.notes.push_back("no regular cells");
  }
  gap.check.pass = gap.check.value >= tol.gap_fraction;
  rep.developability = {dev, tol.developability * h, dev <= tol.developability * h};

  std::vector<int> ext;
  for (int k : extreme_nodes(u)) {
    if (vertex_depth(u, k) > tol.extreme_depth * h) {
      ext.push_back(k);
    } else {
      ++rep.extreme_shallow;
    }
  }
  rep.extreme_count = static_cast<int>(ext.size());
  int near = 0;
  for (int k : ext) {
    double best = std::numeric_limits<double>::infinity();
    for (int q : sing) best = std::min(best, (g.node(q) - g.node(k)).norm());
    if (best <= tol.extreme_distance * h) ++near;
  }
  double share = ext.empty() ? 1.0 : static_cast<double>(near) / ext.size();
  rep.extreme_vs_singular = {share, tol.extreme_fraction, share >= tol.extreme_fraction};
  if (ext.empty()) rep.notes.push_back("no interior extreme vertices; extreme check holds vacuously");

  rep.reconstruction = reconstruct_from_singular(u, tol.angle_tol, tol.hausdorff);
  if (!rep.reconstruction.possible) rep.notes.push_back("reconstruction impossible: no interior singular nodes");

  std::vector<Region> part = partition_domain(u, f);
  std::vector<char> sing_flag(u.size(), 0);
  for (int k : sing) sing_flag[k] = 1;
  double sing_area = 0.0, total = 0.0;
  for (std::size_t c = 0; c < part.size(); ++c) {
    switch (part[c]) {
      case Region::plus: ++rep.partition.plus; break;
      case Region::minus: ++rep.partition.minus; break;
      case Region::zero: ++rep.partition.zero; break;
    }
    const Grid::Cell& cell = g.cells()[c];
    total += cell.area;
    for (int k : cell.corners) {
      if (k >= 0 && sing_flag[k]) {
        sing_area += cell.area;
        break;
      }
    }
  }
  rep.partition.singular_area_fraction = total > 0.0 ? sing_area / total : 0.0;
  rep.notes.push_back(
      "grid proxies: gradient gap, developability and the extreme/singular distance approximate continuum "
      "statements that a piecewise-linear surface cannot satisfy exactly");
  return rep;
}

}  // namespace leastres
