#include "leastres/resistance.hpp"

#include <algorithm>
#include <cmath>

#include "leastres/kernels.hpp"

namespace leastres {
namespace {

struct Sliver {
  Vec2 mid;
  double area;
};

std::vector<Sliver> slivers(const Grid& g) {
  std::vector<Sliver> out;
  const Domain& d = g.domain();
  if (d.kind != Domain::Kind::disk) return out;
  const auto& cyc = g.boundary_cycle();
  const std::size_t n = cyc.size();
  for (std::size_t k = 0; k < n; ++k) {
    Vec2 p = g.node(cyc[k]) - d.center, q = g.node(cyc[(k + 1) % n]) - d.center;
    double theta = std::atan2(cross2(p, q), p.dot(q));
    if (theta <= 0.0) continue;
    double area = 0.5 * d.radius * d.radius * (theta - std::sin(theta));
    Vec2 mid = d.center + 0.5 * (p + q);
    // nudge towards the center so the lookup lands on the adjacent facet
    mid += 1e-9 * d.radius * (d.center - mid).normalized();
    out.push_back({mid, area});
  }
  return out;
}

double sliver_sum(const GridFn& u, const PressureModel& f, const RegionMask* mask) {
  double s = 0.0;
  for (const Sliver& sl : slivers(u.grid())) {
    if (mask) {
      int c = u.grid().cell_of(sl.mid);
      if (c < 0 || !mask->cells[c]) continue;
    }
    s += f.value(u.gradient_at(sl.mid)) * sl.area;
  }
  return s;
}

}  // namespace

RegionMask RegionMask::all(const GridPtr& grid) { return {grid, std::vector<char>(grid->cells().size(), 1)}; }

RegionMask RegionMask::none(const GridPtr& grid) { return {grid, std::vector<char>(grid->cells().size(), 0)}; }

bool RegionMask::empty() const { return std::none_of(cells.begin(), cells.end(), [](char c) { return c != 0; }); }

const char* to_string(Region r) {
  switch (r) {
    case Region::plus: return "plus";
    case Region::minus: return "minus";
    case Region::zero: return "zero";
  }
  return "?";
}

double g_of_normal(const Vec3& n, const PressureModel& f) {
  if (std::abs(n.norm() - 1.0) > 1e-9) throw PreconditionError("normal must be a unit vector");
  if (n.z() >= 0.0) return 0.0;
  double a = -n.z();
  if (a <= 1e-12) {
    if (!f.wall_limit) throw NonSmoothError("pressure model declares no limit on vertical normals");
    return *f.wall_limit;
  }
  return f.value(Vec2(n.x() / a, n.y() / a)) * a;
}

double boundary_sliver_resistance(const GridFn& u, const PressureModel& f) { return sliver_sum(u, f, nullptr); }

double eval_F(const GridFn& u, const PressureModel& f) {
  const auto& tris = u.surface().triangles();
  std::vector<Vec2> grads(tris.size());
  std::vector<double> areas(tris.size());
  for (std::size_t k = 0; k < tris.size(); ++k) {
    grads[k] = tris[k].grad;
    areas[k] = tris[k].area;
  }
  return kernels::facet_sum(grads, areas, f) + sliver_sum(u, f, nullptr);
}

double eval_F_serial(const GridFn& u, const PressureModel& f) {
  const auto& tris = u.surface().triangles();
  std::vector<Vec2> grads(tris.size());
  std::vector<double> areas(tris.size());
  for (std::size_t k = 0; k < tris.size(); ++k) {
    grads[k] = tris[k].grad;
    areas[k] = tris[k].area;
  }
  return kernels::facet_sum_serial(grads, areas, f) + sliver_sum(u, f, nullptr);
}

double eval_F(const GridFn& u, const PressureModel& f, const RegionMask& mask) {
  if (mask.cells.size() != u.grid().cells().size()) throw PreconditionError("mask does not match the grid");
  if (mask.empty()) return 0.0;
  const auto& tris = u.surface().triangles();
  return kernels::clipped_sum(tris, u.grid().nodes(), u.grid(), mask.cells, f) + sliver_sum(u, f, &mask);
}

double eval_F_body(const PolyBody& c, const PressureModel& f) {
  double s = 0.0;
  for (const Facet& fc : c.facets()) s += g_of_normal(fc.normal, f) * fc.area;
  return s;
}

HessianClass classify_hessian(const PressureModel& f, const Vec2& xi, double tol) {
  if (f.crease_distance(xi) <= 1e-9 * (1.0 + xi.norm())) throw NonSmoothError("pressure model is not smooth here");
  Mat2 h = f.hessian(xi);
  Eigen::SelfAdjointEigenSolver<Mat2> es(0.5 * (h + h.transpose()));
  Vec2 lam = es.eigenvalues();
  double scale = std::max(1.0, lam.cwiseAbs().maxCoeff());
  double det = lam[0] * lam[1];
  if (std::abs(det) <= tol * scale * scale) return HessianClass::degen;
  if (lam[0] > tol * scale) return HessianClass::pos;
  return HessianClass::neg;
}

std::vector<Region> partition_domain(const GridFn& u, const PressureModel& f, double tol) {
  const Grid& g = u.grid();
  const double h = g.h();
  std::vector<Region> out(g.cells().size(), Region::zero);
  const std::array<Vec2, 5> probes{Vec2(0.5, 0.5), Vec2(0.25, 0.25), Vec2(0.75, 0.25), Vec2(0.75, 0.75),
                                   Vec2(0.25, 0.75)};
  for (std::size_t c = 0; c < g.cells().size(); ++c) {
    const Grid::Cell& cell = g.cells()[c];
    if (cell.boundary) continue;
    HessianClass first = HessianClass::degen;
    bool mixed = false;
    for (std::size_t k = 0; k < probes.size(); ++k) {
      HessianClass lab = classify_hessian(f, u.gradient_at(cell.lo + h * probes[k]), tol);
      if (k == 0) first = lab;
      if (lab != first || lab == HessianClass::degen) mixed = true;
    }
    if (mixed) continue;
    out[c] = first == HessianClass::pos ? Region::plus : Region::minus;
  }
  return out;
}

}  // namespace leastres
