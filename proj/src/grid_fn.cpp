#include "leastres/grid_fn.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "leastres/hull.hpp"
#include "leastres/kernels.hpp"

namespace leastres {
namespace {

bool inside_polygon(const std::vector<Vec2>& ccw, const Vec2& x, double tol) {
  const std::size_t n = ccw.size();
  for (std::size_t k = 0; k < n; ++k) {
    Vec2 e = ccw[(k + 1) % n] - ccw[k];
    if (cross2(e, x - ccw[k]) / e.norm() < -tol) return false;
  }
  return true;
}

std::vector<Vec2> site_hull(std::span<const Vec2> sites, double tol) {
  std::vector<int> idx = convex_hull_2d(sites, tol);
  std::vector<Vec2> out;
  for (int i : idx) out.push_back(sites[i]);
  return out;
}

}  // namespace

GridFn::GridFn(GridPtr grid, std::vector<double> values, double height_cap)
    : grid_(std::move(grid)), values_(std::move(values)), cap_(height_cap), cache_(std::make_shared<Cache>()) {
  if (!grid_) throw PreconditionError("grid function without a grid");
  if (static_cast<int>(values_.size()) != grid_->size()) throw PreconditionError("value count does not match grid nodes");
  if (!std::isfinite(cap_)) throw PreconditionError("height cap must be finite");
  for (double v : values_) {
    if (!std::isfinite(v)) throw PreconditionError("grid function values must be finite");
  }
}

const LowerSurface& GridFn::surface() const {
  std::call_once(cache_->once, [&] {
    cache_->surface = std::make_unique<LowerSurface>(grid_->nodes(), values_, grid_->h());
  });
  return *cache_->surface;
}

double GridFn::convexity_defect() const {
  const LowerSurface& s = surface();
  std::vector<double> env(values_.size());
  kernels::plane_max(s.index(), grid_->nodes(), env);
  double worst = 0.0;
  for (std::size_t k = 0; k < values_.size(); ++k) worst = std::max(worst, std::abs(values_[k] - env[k]));
  return worst;
}

bool GridFn::in_class(double tol) const {
  for (int k = 0; k < size(); ++k) {
    if (values_[k] < -tol || values_[k] > cap_ + tol) return false;
    if (grid_->is_boundary(k) && std::abs(values_[k] - cap_) > tol) return false;
  }
  return discretely_convex(tol);
}

GridFn lower_convex_envelope(const GridPtr& grid, std::span<const Vec3> samples, double height_cap) {
  if (samples.size() < 3) throw DegeneracyError("envelope needs at least 3 samples");
  std::vector<Vec2> xy(samples.size());
  std::vector<double> z(samples.size());
  for (std::size_t k = 0; k < samples.size(); ++k) {
    if (!std::isfinite(samples[k].z())) throw PreconditionError("sample heights must be finite");
    xy[k] = samples[k].head<2>();
    z[k] = samples[k].z();
  }
  const double tol = 1e-9 * grid->domain().diameter();
  std::vector<Vec2> hull = site_hull(xy, tol);
  if (hull.size() < 3) throw DegeneracyError("sample sites are collinear");
  for (const Vec2& p : grid->nodes()) {
    if (!inside_polygon(hull, p, tol)) throw CoverageError("grid node outside the sample hull");
  }
  LowerSurface surf(xy, z, grid->h());
  std::vector<double> values(grid->size());
  kernels::plane_max(surf.index(), grid->nodes(), values);
  return GridFn(grid, std::move(values), height_cap);
}

GridFn lower_convex_envelope(const GridFn& u) {
  std::vector<double> values(u.size());
  kernels::plane_max(u.surface().index(), u.grid().nodes(), values);
  return GridFn(u.grid_ptr(), std::move(values), u.height_cap());
}

PolyBody epigraph_body(const GridFn& u) {
  const Grid& g = u.grid();
  std::vector<Vec3> pts;
  pts.reserve(g.size() + g.boundary_cycle().size());
  for (int k = 0; k < g.size(); ++k) pts.emplace_back(g.node(k).x(), g.node(k).y(), u[k]);
  for (int k : g.boundary_cycle()) pts.emplace_back(g.node(k).x(), g.node(k).y(), u.height_cap());
  return PolyBody::from_points(pts);
}

GridFn body_to_fn(const PolyBody& c, const GridPtr& grid, double height_cap) {
  if (c.dimension() < 2) throw CoverageError("body has no projected area");
  std::vector<PlaneIndex::Entry> entries;
  const auto& v = c.vertices();
  for (const Facet& f : c.facets()) {
    if (f.normal.z() >= -1e-12) continue;
    double nz = -f.normal.z();
    Vec2 grad(f.normal.x() / nz, f.normal.y() / nz);
    double off = -f.offset / nz;
    for (std::size_t k = 1; k + 1 < f.cycle.size(); ++k) {
      entries.push_back({{v[f.cycle[0]].head<2>(), v[f.cycle[k]].head<2>(), v[f.cycle[k + 1]].head<2>()}, grad, off});
    }
  }
  if (entries.empty()) throw CoverageError("body has no lower facets");
  std::vector<Vec2> proj;
  for (const Vec3& p : v) proj.push_back(p.head<2>());
  const double tol = 1e-9 * std::max(c.extent(), grid->domain().diameter());
  std::vector<Vec2> hull = site_hull(proj, tol);
  for (const Vec2& p : grid->nodes()) {
    if (!inside_polygon(hull, p, tol)) throw CoverageError("grid node outside the body projection");
  }
  PlaneIndex index(std::move(entries), grid->h());
  std::vector<double> values(grid->size());
  kernels::plane_max(index, grid->nodes(), values);
  return GridFn(grid, std::move(values), height_cap);
}

GridFn shrink_family_negative(const GridFn& u, const Vec3& a, const Vec3& b, double s) {
  if (s > 0.0) throw RangeError("negative-side family needs s <= 0");
  if (s == 0.0) return u;
  std::vector<Vec3> anchors{a};
  if (b != a) anchors.push_back(b);
  std::vector<double> out(u.size());
  kernels::family_max(u.surface().index(), u.grid().domain(), u.grid().nodes(), u.values(), anchors, s, out);
  return GridFn(u.grid_ptr(), std::move(out), u.height_cap());
}

NodeCone node_cone(const GridFn& u, int node) {
  const LowerSurface& surf = u.surface();
  const Vec2& x = u.grid().node(node);
  std::vector<int> act;
  surf.index().active(x, 1e-10 * std::max(1.0, std::abs(u.height_cap())), act);
  std::vector<Vec2> grads;
  for (int id : act) {
    const Vec2& g = surf.index().entries()[id].grad;
    bool dup = false;
    for (const Vec2& q : grads) {
      if ((q - g).norm() <= 1e-9 * (1.0 + g.norm())) {
        dup = true;
        break;
      }
    }
    if (!dup) grads.push_back(g);
  }
  NodeCone cone;
  cone.planes = static_cast<int>(grads.size());
  for (std::size_t i = 0; i < grads.size(); ++i) {
    cone.mean_grad += grads[i];
    Vec3 ni = Vec3(grads[i].x(), grads[i].y(), -1.0).normalized();
    for (std::size_t j = i + 1; j < grads.size(); ++j) {
      Vec3 nj = Vec3(grads[j].x(), grads[j].y(), -1.0).normalized();
      cone.width = std::max(cone.width, std::atan2(ni.cross(nj).norm(), ni.dot(nj)));
    }
  }
  if (!grads.empty()) cone.mean_grad /= static_cast<double>(grads.size());
  if (grads.size() >= 3) {
    std::size_t far = 1;
    for (std::size_t i = 1; i < grads.size(); ++i) {
      if ((grads[i] - grads[0]).norm() > (grads[far] - grads[0]).norm()) far = i;
    }
    Vec2 d = grads[far] - grads[0];
    double spread = 0.0;
    for (const Vec2& g : grads) spread = std::max(spread, std::abs(cross2(d, g - grads[0])) / d.norm());
    cone.extreme = spread > 1e-9 * (1.0 + grads[0].norm());
  }
  return cone;
}

double default_angle_tol(const Grid& grid) { return 4.0 * grid.h() / grid.domain().diameter(); }

std::vector<int> singular_points(const GridFn& u, double angle_tol) {
  if (!(angle_tol > 0.0)) throw PreconditionError("angle tolerance must be positive");
  std::vector<double> width(u.size());
#pragma omp parallel for schedule(static)
  for (int k = 0; k < u.size(); ++k) width[k] = node_cone(u, k).width;
  std::vector<int> out;
  for (int k = 0; k < u.size(); ++k) {
    if (width[k] > angle_tol) out.push_back(k);
  }
  return out;
}

std::vector<int> extreme_nodes(const GridFn& u) {
  const auto& on = u.surface().on_hull();
  std::vector<char> flag(u.size(), 0);
#pragma omp parallel for schedule(static)
  for (int k = 0; k < u.size(); ++k) {
    if (u.grid().is_boundary(k) || !on[k]) continue;
    flag[k] = node_cone(u, k).extreme ? 1 : 0;
  }
  std::vector<int> out;
  for (int k = 0; k < u.size(); ++k) {
    if (flag[k]) out.push_back(k);
  }
  return out;
}

}  // namespace leastres
