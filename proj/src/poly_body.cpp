#include "leastres/poly_body.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>
#include <numeric>
#include <set>
#include <unordered_map>
#include <cstdint>

#include "leastres/hull.hpp"

namespace leastres {
namespace {

int find_root(std::vector<int>& parent, int x) {
  while (parent[x] != x) {
    parent[x] = parent[parent[x]];
    x = parent[x];
  }
  return x;
}

std::vector<std::pair<int, int>> edges_from_facets(const std::vector<Facet>& facets) {
  std::set<std::pair<int, int>> e;
  for (const Facet& f : facets) {
    for (std::size_t k = 0; k < f.cycle.size(); ++k) {
      int a = f.cycle[k], b = f.cycle[(k + 1) % f.cycle.size()];
      e.insert({std::min(a, b), std::max(a, b)});
    }
  }
  return {e.begin(), e.end()};
}

struct Halfspace {
  Vec3 n;
  double d;
};

std::vector<Halfspace> halfspaces(const PolyBody& c) {
  if (c.dimension() < 3) throw DegeneracyError("intersection needs full-dimensional bodies");
  std::vector<Halfspace> out;
  for (const Facet& f : c.facets()) out.push_back({f.normal, f.offset});
  return out;
}

}  // namespace

Segment3::Segment3(const Vec3& a_, const Vec3& b_, bool allow_degenerate_)
    : a(a_), b(b_), allow_degenerate(allow_degenerate_) {
  if (a == b && !allow_degenerate) throw DegeneracyError("segment endpoints coincide");
}

PolyBody PolyBody::from_points(std::span<const Vec3> points, double rel_tol) {
  PolyBody body;
  Hull hull = convex_hull(points, rel_tol);
  body.dimension_ = hull.dimension;
  body.tolerance_ = hull.tolerance;
  if (hull.dimension < 0) return body;
  if (hull.dimension <= 1) {
    for (int v : hull.vertices) body.vertices_.push_back(points[v]);
    if (hull.dimension == 1) body.edges_.push_back({0, 1});
    return body;
  }
  if (hull.dimension == 2) {
    const int m = static_cast<int>(hull.polygon.size());
    for (int v : hull.polygon) body.vertices_.push_back(points[v]);
    Vec3 acc = Vec3::Zero();
    for (int k = 0; k < m; ++k) acc += body.vertices_[k].cross(body.vertices_[(k + 1) % m]);
    double area = 0.5 * std::abs(acc.dot(hull.plane_normal));
    Facet up, down;
    up.normal = hull.plane_normal;
    up.offset = up.normal.dot(body.vertices_[0]);
    up.area = area;
    up.cycle.resize(m);
    std::iota(up.cycle.begin(), up.cycle.end(), 0);
    down.normal = -hull.plane_normal;
    down.offset = down.normal.dot(body.vertices_[0]);
    down.area = area;
    down.cycle.assign(up.cycle.rbegin(), up.cycle.rend());
    body.facets_ = {up, down};
    body.edges_ = edges_from_facets(body.facets_);
    return body;
  }

  // Points on faces and coincident copies leave zero-area triangles behind.
  // Extreme points are never collinear, so their hull has none.
  std::vector<char> is_vertex(points.size(), 0);
  for (int v : hull.vertices) is_vertex[v] = 1;
  bool clean = true;
  for (const auto& t : hull.triangles) {
    for (int v : t.v) clean = clean && is_vertex[v];
  }
  if (!clean) {
    std::vector<Vec3> ext;
    for (int v : hull.vertices) ext.push_back(points[v]);
    Hull h2 = convex_hull(ext, rel_tol);
    if (h2.dimension == 3) {
      for (auto& t : h2.triangles) {
        for (int& v : t.v) v = hull.vertices[v];
      }
      for (int& v : h2.vertices) v = hull.vertices[v];
      h2.tolerance = hull.tolerance;
      h2.dropped_points = hull.dropped_points;
      hull = std::move(h2);
    }
  }

  const auto& tris = hull.triangles;
  const int nt = static_cast<int>(tris.size());
  auto key = [](int a, int b) { return (static_cast<std::uint64_t>(a) << 32) | static_cast<std::uint32_t>(b); };
  std::unordered_map<std::uint64_t, int> edge_tri;
  edge_tri.reserve(static_cast<std::size_t>(3 * nt));
  for (int t = 0; t < nt; ++t) {
    for (int e = 0; e < 3; ++e) edge_tri[key(tris[t].v[e], tris[t].v[(e + 1) % 3])] = t;
  }
  std::vector<int> parent(nt);
  std::iota(parent.begin(), parent.end(), 0);
  const double eps = hull.tolerance;
  for (int t = 0; t < nt; ++t) {
    for (int e = 0; e < 3; ++e) {
      int a = tris[t].v[e], b = tris[t].v[(e + 1) % 3];
      auto it = edge_tri.find(key(b, a));
      if (it == edge_tri.end()) continue;
      int u = it->second;
      int opp = tris[u].v[0] + tris[u].v[1] + tris[u].v[2] - a - b;
      double dist = std::abs(tris[t].normal.dot(points[opp]) - tris[t].offset);
      if (dist <= eps && tris[t].normal.dot(tris[u].normal) > 1.0 - 1e-12) {
        parent[find_root(parent, t)] = find_root(parent, u);
      }
    }
  }

  std::vector<int> remap(points.size(), -1);
  for (int v : hull.vertices) {
    remap[v] = static_cast<int>(body.vertices_.size());
    body.vertices_.push_back(points[v]);
  }

  std::vector<int> group_of(nt, -1);
  std::vector<std::vector<int>> groups;
  for (int t = 0; t < nt; ++t) {
    int r = find_root(parent, t);
    if (group_of[r] < 0) {
      group_of[r] = static_cast<int>(groups.size());
      groups.emplace_back();
    }
    group_of[t] = group_of[r];
    groups[group_of[t]].push_back(t);
  }
  for (const auto& members : groups) {
    std::map<int, int> next;
    Vec3 nsum = Vec3::Zero();
    double area = 0.0;
    for (int t : members) {
      const auto& v = tris[t].v;
      Vec3 cr = (points[v[1]] - points[v[0]]).cross(points[v[2]] - points[v[0]]);
      nsum += cr;
      area += 0.5 * cr.norm();
      for (int e = 0; e < 3; ++e) {
        int a = v[e], b = v[(e + 1) % 3];
        auto it = edge_tri.find(key(b, a));
        if (it != edge_tri.end() && group_of[it->second] == group_of[t]) continue;
        next[a] = b;
      }
    }
    if (next.empty()) continue;
    std::vector<int> cycle;
    int start = next.begin()->first, cur = start;
    for (std::size_t guard = 0; guard <= next.size(); ++guard) {
      cycle.push_back(cur);
      cur = next[cur];
      if (cur == start) break;
    }
    std::vector<int> kept;
    const int m = static_cast<int>(cycle.size());
    for (int k = 0; k < m; ++k) {
      int p = cycle[(k + m - 1) % m], q = cycle[k], r = cycle[(k + 1) % m];
      if (remap[q] < 0) continue;
      Vec3 d1 = points[q] - points[p], d2 = points[r] - points[q];
      if (d1.cross(d2).norm() <= eps * (points[r] - points[p]).norm()) continue;
      kept.push_back(remap[q]);
    }
    if (kept.size() < 3) continue;
    Facet f;
    f.normal = nsum.normalized();
    f.area = area;
    f.cycle = std::move(kept);
    Vec3 c = Vec3::Zero();
    for (int v : f.cycle) c += body.vertices_[v];
    f.offset = f.normal.dot(c / static_cast<double>(f.cycle.size()));
    body.facets_.push_back(std::move(f));
  }
  body.edges_ = edges_from_facets(body.facets_);
  return body;
}

std::vector<std::array<int, 3>> PolyBody::triangles() const {
  std::vector<std::array<int, 3>> out;
  for (const Facet& f : facets_) {
    for (std::size_t k = 1; k + 1 < f.cycle.size(); ++k) out.push_back({f.cycle[0], f.cycle[k], f.cycle[k + 1]});
  }
  return out;
}

double PolyBody::extent() const {
  if (vertices_.empty()) return 0.0;
  Vec3 lo = vertices_[0], hi = vertices_[0];
  for (const Vec3& v : vertices_) {
    lo = lo.cwiseMin(v);
    hi = hi.cwiseMax(v);
  }
  return (hi - lo).norm();
}

double PolyBody::volume() const {
  if (dimension_ < 3) return 0.0;
  double vol = 0.0;
  for (const Facet& f : facets_) vol += f.area * f.offset;
  return vol / 3.0;
}

Vec3 PolyBody::centroid() const {
  Vec3 c = Vec3::Zero();
  for (const Vec3& v : vertices_) c += v;
  return vertices_.empty() ? c : Vec3(c / static_cast<double>(vertices_.size()));
}

PolyBody minkowski_blend(const PolyBody& c, const PolyBody& d, double s) {
  if (!(s >= 0.0 && s <= 1.0)) throw RangeError("blend parameter outside [0,1]");
  if (s == 0.0) return c;
  if (s == 1.0) return d;
  const auto& vc = c.vertices();
  const auto& vd = d.vertices();
  std::set<std::array<double, 3>> in_c;
  for (const Vec3& v : vc) in_c.insert({v.x(), v.y(), v.z()});
  std::vector<Vec3> extra;
  for (const Vec3& w : vd) {
    if (!in_c.count({w.x(), w.y(), w.z()})) extra.push_back(w);
  }
  // D = conv(C + extra) when C sits inside D; then the blend only needs
  // homothetic copies of C towards the extra points.
  bool nested = d.dimension() == 3 && extra.size() * 4 < vd.size() + 4;
  if (nested) {
    double tol = 1e-9 * d.extent();
    for (const Vec3& v : vc) {
      for (const Facet& f : d.facets()) {
        if (f.normal.dot(v) > f.offset + tol) {
          nested = false;
          break;
        }
      }
      if (!nested) break;
    }
  }
  std::vector<Vec3> pts;
  if (nested) {
    pts = vc;
    for (const Vec3& x : extra) {
      for (const Vec3& v : vc) pts.push_back((1.0 - s) * v + s * x);
    }
  } else {
    pts.reserve(vc.size() * vd.size());
    for (const Vec3& v : vc) {
      for (const Vec3& w : vd) pts.push_back((1.0 - s) * v + s * w);
    }
  }
  return PolyBody::from_points(pts);
}

PolyBody homothety(const PolyBody& c, double ratio, const Vec3& center) {
  if (!(ratio > 0.0)) throw RangeError("homothety ratio must be positive");
  std::vector<Vec3> pts;
  for (const Vec3& v : c.vertices()) pts.push_back(center + ratio * (v - center));
  return PolyBody::from_points(pts);
}

PolyBody conv_with_segment(const PolyBody& c, const Segment3& seg) {
  std::vector<Vec3> pts = c.vertices();
  pts.push_back(seg.a);
  if (!seg.degenerate()) pts.push_back(seg.b);
  return PolyBody::from_points(pts);
}

SupportResult support_function(const PolyBody& c, const Vec3& n) {
  SupportResult r{-std::numeric_limits<double>::infinity(), {}};
  for (const Vec3& v : c.vertices()) r.value = std::max(r.value, v.dot(n));
  double tol = 1e-9 * std::max(c.extent(), 1e-300);
  for (int k = 0; k < static_cast<int>(c.vertices().size()); ++k) {
    if (c.vertices()[k].dot(n) >= r.value - tol) r.face.push_back(k);
  }
  return r;
}

std::vector<Vec3> extreme_vertices(const PolyBody& c) { return c.vertices(); }

PolyBody intersect(const PolyBody& c, const PolyBody& d, std::optional<Vec3> interior) {
  std::vector<Halfspace> hs = halfspaces(c);
  for (const Halfspace& h : halfspaces(d)) hs.push_back(h);
  auto slack = [&](const Vec3& x, int* worst) {
    double best = std::numeric_limits<double>::infinity();
    for (int k = 0; k < static_cast<int>(hs.size()); ++k) {
      double s = hs[k].d - hs[k].n.dot(x);
      if (s < best) {
        best = s;
        if (worst) *worst = k;
      }
    }
    return best;
  };
  const double scale = std::max(c.extent(), d.extent());
  Vec3 x0;
  if (interior) {
    x0 = *interior;
  } else {
    std::vector<Vec3> starts{c.centroid(), d.centroid(), 0.5 * (c.centroid() + d.centroid())};
    x0 = starts[0];
    double best = slack(x0, nullptr);
    for (const Vec3& s : starts) {
      if (slack(s, nullptr) > best) {
        best = slack(s, nullptr);
        x0 = s;
      }
    }
    Vec3 x = x0;
    for (int it = 1; it <= 4000; ++it) {
      int k = 0;
      double v = slack(x, &k);
      if (v > best) {
        best = v;
        x0 = x;
      }
      x -= (0.05 * scale / std::sqrt(static_cast<double>(it))) * hs[k].n;
    }
  }
  if (slack(x0, nullptr) <= 1e-9 * scale) throw DegeneracyError("intersection is empty or flat");
  std::vector<Vec3> dual;
  for (const Halfspace& h : hs) dual.push_back(h.n / (h.d - h.n.dot(x0)));
  Hull dh = convex_hull(dual);
  if (dh.dimension < 3) throw DegeneracyError("unbounded intersection");
  std::vector<Vec3> pts;
  for (const HullTriangle& t : dh.triangles) pts.push_back(x0 + t.normal / t.offset);
  return PolyBody::from_points(pts);
}

}  // namespace leastres
