#include "leastres/lower_surface.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "leastres/hull.hpp"

namespace leastres {

PlaneIndex::PlaneIndex(std::vector<Entry> entries, double cell_hint) : entries_(std::move(entries)) {
  if (entries_.empty()) return;
  Vec2 lo = entries_[0].tri[0], hi = lo;
  for (const Entry& e : entries_) {
    for (const Vec2& p : e.tri) {
      lo = lo.cwiseMin(p);
      hi = hi.cwiseMax(p);
    }
  }
  Vec2 ext = hi - lo;
  double cell = cell_hint > 0.0 ? cell_hint : std::max(ext.maxCoeff(), 1e-300);
  // keep the bucket count bounded
  double max_buckets = 4.0 * static_cast<double>(entries_.size()) + 16.0;
  while ((ext.x() / cell + 1.0) * (ext.y() / cell + 1.0) > max_buckets) cell *= 1.5;
  cell_ = cell;
  lo_ = lo;
  bx_ = std::max(1, static_cast<int>(std::ceil(ext.x() / cell_)) + 1);
  by_ = std::max(1, static_cast<int>(std::ceil(ext.y() / cell_)) + 1);
  std::vector<int> count(static_cast<std::size_t>(bx_) * by_ + 1, 0);
  auto range = [&](const Entry& e, int& i0, int& i1, int& j0, int& j1) {
    Vec2 a = e.tri[0].cwiseMin(e.tri[1]).cwiseMin(e.tri[2]);
    Vec2 b = e.tri[0].cwiseMax(e.tri[1]).cwiseMax(e.tri[2]);
    double pad = 1e-9 * cell_;
    i0 = std::clamp(static_cast<int>(std::floor((a.x() - pad - lo_.x()) / cell_)), 0, bx_ - 1);
    i1 = std::clamp(static_cast<int>(std::floor((b.x() + pad - lo_.x()) / cell_)), 0, bx_ - 1);
    j0 = std::clamp(static_cast<int>(std::floor((a.y() - pad - lo_.y()) / cell_)), 0, by_ - 1);
    j1 = std::clamp(static_cast<int>(std::floor((b.y() + pad - lo_.y()) / cell_)), 0, by_ - 1);
  };
  for (const Entry& e : entries_) {
    int i0, i1, j0, j1;
    range(e, i0, i1, j0, j1);
    for (int j = j0; j <= j1; ++j) {
      for (int i = i0; i <= i1; ++i) ++count[static_cast<std::size_t>(j) * bx_ + i + 1];
    }
  }
  for (std::size_t k = 1; k < count.size(); ++k) count[k] += count[k - 1];
  start_ = count;
  items_.resize(count.back());
  for (int id = 0; id < static_cast<int>(entries_.size()); ++id) {
    int i0, i1, j0, j1;
    range(entries_[id], i0, i1, j0, j1);
    for (int j = j0; j <= j1; ++j) {
      for (int i = i0; i <= i1; ++i) items_[count[static_cast<std::size_t>(j) * bx_ + i]++] = id;
    }
  }
}

int PlaneIndex::bucket_id(const Vec2& x) const {
  int i = std::clamp(static_cast<int>(std::floor((x.x() - lo_.x()) / cell_)), 0, bx_ - 1);
  int j = std::clamp(static_cast<int>(std::floor((x.y() - lo_.y()) / cell_)), 0, by_ - 1);
  return j * bx_ + i;
}

std::span<const int> PlaneIndex::bucket(const Vec2& x) const {
  if (entries_.empty()) return {};
  int b = bucket_id(x);
  return std::span<const int>(items_.data() + start_[b], static_cast<std::size_t>(start_[b + 1] - start_[b]));
}

double PlaneIndex::value(const Vec2& x) const {
  double best = -std::numeric_limits<double>::infinity();
  for (int id : bucket(x)) best = std::max(best, entries_[id].grad.dot(x) + entries_[id].c);
  return best;
}

int PlaneIndex::argmax(const Vec2& x) const {
  double best = -std::numeric_limits<double>::infinity();
  int arg = -1;
  for (int id : bucket(x)) {
    double v = entries_[id].grad.dot(x) + entries_[id].c;
    if (v > best) {
      best = v;
      arg = id;
    }
  }
  return arg;
}

void PlaneIndex::active(const Vec2& x, double tol, std::vector<int>& out) const {
  out.clear();
  double top = value(x);
  for (int id : bucket(x)) {
    if (entries_[id].grad.dot(x) + entries_[id].c >= top - tol) out.push_back(id);
  }
}

LowerSurface::LowerSurface(std::span<const Vec2> xy, std::span<const double> z, double cell_hint, double rel_tol) {
  const std::size_t n = xy.size();
  std::vector<Vec3> pts(n);
  Vec2 lo = xy[0], hi = xy[0];
  double zlo = z[0], zhi = z[0];
  for (std::size_t k = 0; k < n; ++k) {
    lo = lo.cwiseMin(xy[k]);
    hi = hi.cwiseMax(xy[k]);
    zlo = std::min(zlo, z[k]);
    zhi = std::max(zhi, z[k]);
  }
  for (std::size_t k = 0; k < n; ++k) pts[k] = Vec3(xy[k].x(), xy[k].y(), z[k]);
  // lifted copy of the planar hull rim closes the body from above
  double lift = zhi + (zhi - zlo) + (hi - lo).norm() + 1.0;
  for (int k : convex_hull_2d(xy, 1e-12 * (hi - lo).norm())) pts.emplace_back(xy[k].x(), xy[k].y(), lift);
  Hull hull = convex_hull(pts, rel_tol);
  if (hull.dimension < 3) throw DegeneracyError("sample sites are collinear");
  dropped_ = hull.dropped_points;
  on_hull_.assign(n, 0);
  std::vector<PlaneIndex::Entry> entries;
  const int top = static_cast<int>(n);
  for (const HullTriangle& t : hull.triangles) {
    if (t.v[0] >= top || t.v[1] >= top || t.v[2] >= top) continue;
    if (t.normal.z() >= -1e-12) continue;
    Tri tri;
    tri.v = t.v;
    // outward normal points down; reversing makes the xy order counterclockwise
    std::swap(tri.v[1], tri.v[2]);
    const Vec2& a = xy[tri.v[0]];
    const Vec2& b = xy[tri.v[1]];
    const Vec2& c = xy[tri.v[2]];
    tri.area = 0.5 * cross2(b - a, c - a);
    if (tri.area <= 0.0) continue;
    double edge = std::max({(b - a).squaredNorm(), (c - b).squaredNorm(), (a - c).squaredNorm()});
    for (int v : tri.v) on_hull_[v] = 1;
    // slivers carry no area and an unreliable plane
    if (tri.area <= 1e-9 * edge) continue;
    Mat2 e;
    e << (b - a).transpose(), (c - a).transpose();
    tri.grad = e.inverse() * Vec2(z[tri.v[1]] - z[tri.v[0]], z[tri.v[2]] - z[tri.v[0]]);
    tri.c = (z[tri.v[0]] + z[tri.v[1]] + z[tri.v[2]] - tri.grad.dot(a + b + c)) / 3.0;
    entries.push_back({{a, b, c}, tri.grad, tri.c});
    tris_.push_back(tri);
  }
  index_ = PlaneIndex(std::move(entries), cell_hint);
}

Vec2 LowerSurface::gradient_at(const Vec2& x) const {
  int f = facet_at(x);
  return f < 0 ? Vec2::Zero() : tris_[f].grad;
}

}  // namespace leastres
