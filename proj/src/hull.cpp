#include "leastres/hull.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <limits>
#include <numeric>

namespace leastres {
namespace {

struct Face {
  std::array<int, 3> v{};
  std::array<int, 3> nbr{-1, -1, -1};  // nbr[e] shares edge v[e] -> v[e+1]
  Vec3 n = Vec3::Zero();
  double d = 0.0;
  std::vector<int> outside;
  int far = -1;
  double far_dist = 0.0;
  bool alive = true;
  int mark = 0;
};

// Orientation of q against the plane through a, b, c for the points moved by
// eps * r_k, eps -> 0: sign of det[b-a, c-a, q-a] with a floating filter and
// an exact expansion fallback. Distinct indices never tie.
class Orient {
 public:
  explicit Orient(std::span<const Vec3> pts) : p_(pts), r_(pts.size()) {
    for (std::size_t k = 0; k < pts.size(); ++k) {
      for (int c = 0; c < 3; ++c) r_[k][c] = hashed(3 * k + c);
    }
  }

  int operator()(int a, int b, int c, int q) const {
    const Vec3 &pa = p_[a], &pb = p_[b], &pc = p_[c], &pq = p_[q];
    double bx = pb.x() - pa.x(), by = pb.y() - pa.y(), bz = pb.z() - pa.z();
    double cx = pc.x() - pa.x(), cy = pc.y() - pa.y(), cz = pc.z() - pa.z();
    double qx = pq.x() - pa.x(), qy = pq.y() - pa.y(), qz = pq.z() - pa.z();
    double m1 = cy * qz - cz * qy, m2 = cz * qx - cx * qz, m3 = cx * qy - cy * qx;
    double det = bx * m1 + by * m2 + bz * m3;
    double perm = std::abs(bx) * (std::abs(cy * qz) + std::abs(cz * qy)) +
                  std::abs(by) * (std::abs(cz * qx) + std::abs(cx * qz)) +
                  std::abs(bz) * (std::abs(cx * qy) + std::abs(cy * qx));
    const double bound = 1e-15 * perm;
    if (det > bound) return 1;
    if (det < -bound) return -1;
    ++exact_calls_;
    return exact(a, b, c, q);
  }

  long long exact_calls() const { return exact_calls_; }

 private:
  static double hashed(std::uint64_t k) {
    std::uint64_t x = (k + 1) * 0x9E3779B97F4A7C15ull;
    x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ull;
    x = (x ^ (x >> 27)) * 0x94D049BB133111EBull;
    x ^= x >> 31;
    return static_cast<double>(x >> 11) * 0x1.0p-52 - 1.0;
  }

  // Nonoverlapping expansions in increasing magnitude with zeros dropped
  // (never empty; zero is {0}). Sums and products follow the linear-time
  // zero-eliminating merge and scale of Shewchuk's predicates.
  struct Exp {
    static constexpr int kCap = 640;
    int n = 1;
    double v[kCap];
    Exp() { v[0] = 0.0; }
    Exp(const Exp& o) : n(o.n) { std::copy(o.v, o.v + o.n, v); }
    Exp& operator=(const Exp& o) {
      n = o.n;
      std::copy(o.v, o.v + o.n, v);
      return *this;
    }
  };

  static void two_sum(double a, double b, double& x, double& y) {
    x = a + b;
    double bv = x - a;
    double av = x - bv;
    y = (a - av) + (b - bv);
  }

  static void fast_two_sum(double a, double b, double& x, double& y) {
    x = a + b;
    y = b - (x - a);
  }

  static void sum(const Exp& e, const Exp& f, Exp& h) {
    int ei = 0, fi = 0, hi = 0;
    double en = e.v[0], fn = f.v[0], q, qn, hh;
    auto next_e = [&] { en = ++ei < e.n ? e.v[ei] : 0.0; };
    auto next_f = [&] { fn = ++fi < f.n ? f.v[fi] : 0.0; };
    if ((fn > en) == (fn > -en)) {
      q = en;
      next_e();
    } else {
      q = fn;
      next_f();
    }
    if (ei < e.n && fi < f.n) {
      if ((fn > en) == (fn > -en)) {
        fast_two_sum(en, q, qn, hh);
        next_e();
      } else {
        fast_two_sum(fn, q, qn, hh);
        next_f();
      }
      q = qn;
      if (hh != 0.0) h.v[hi++] = hh;
      while (ei < e.n && fi < f.n) {
        if ((fn > en) == (fn > -en)) {
          two_sum(q, en, qn, hh);
          next_e();
        } else {
          two_sum(q, fn, qn, hh);
          next_f();
        }
        q = qn;
        if (hh != 0.0) h.v[hi++] = hh;
      }
    }
    while (ei < e.n) {
      two_sum(q, en, qn, hh);
      next_e();
      q = qn;
      if (hh != 0.0) h.v[hi++] = hh;
    }
    while (fi < f.n) {
      two_sum(q, fn, qn, hh);
      next_f();
      q = qn;
      if (hh != 0.0) h.v[hi++] = hh;
    }
    if (q != 0.0 || hi == 0) h.v[hi++] = q;
    h.n = hi;
  }

  static void scale(const Exp& e, double b, Exp& h) {
    double q = e.v[0] * b;
    double hh = std::fma(e.v[0], b, -q);
    int hi = 0;
    if (hh != 0.0) h.v[hi++] = hh;
    for (int i = 1; i < e.n; ++i) {
      double p1 = e.v[i] * b;
      double p0 = std::fma(e.v[i], b, -p1);
      double s;
      two_sum(q, p0, s, hh);
      if (hh != 0.0) h.v[hi++] = hh;
      fast_two_sum(p1, s, q, hh);
      if (hh != 0.0) h.v[hi++] = hh;
    }
    if (q != 0.0 || hi == 0) h.v[hi++] = q;
    h.n = hi;
  }

  static void mul(const Exp& a, const Exp& b, Exp& out) {
    Exp t, acc;
    scale(a, b.v[0], out);
    for (int i = 1; i < b.n; ++i) {
      scale(a, b.v[i], t);
      sum(out, t, acc);
      out = acc;
    }
  }

  static void negate(Exp& e) {
    for (int i = 0; i < e.n; ++i) e.v[i] = -e.v[i];
  }

  static void diff(double x, double y, Exp& e) {
    double hi, lo;
    two_sum(x, -y, hi, lo);
    e.n = 0;
    if (lo != 0.0) e.v[e.n++] = lo;
    if (hi != 0.0 || e.n == 0) e.v[e.n++] = hi;
  }

  static int sign(const Exp& e) { return e.v[e.n - 1] > 0.0 ? 1 : (e.v[e.n - 1] < 0.0 ? -1 : 0); }

  struct Row {
    Exp c[3];
  };

  // v_i w_j - v_j w_i
  static void minor(const Row& v, const Row& w, int i, int j, Exp& out) {
    Exp p, q;
    mul(v.c[i], w.c[j], p);
    mul(v.c[j], w.c[i], q);
    negate(q);
    sum(p, q, out);
  }

  static void det3(const Row& u, const Row& v, const Row& w, Exp& out) {
    Exp m, t, acc;
    minor(v, w, 1, 2, m);
    mul(u.c[0], m, out);
    minor(v, w, 2, 0, m);
    mul(u.c[1], m, t);
    sum(out, t, acc);
    minor(v, w, 0, 1, m);
    mul(u.c[2], m, t);
    sum(acc, t, out);
  }

  static void add_to(Exp& total, const Exp& e) {
    Exp acc;
    sum(total, e, acc);
    total = acc;
  }

  // Sign of the eps^1 coefficient in floating point, 0 when undecided.
  int first_order_filter(int a, int b, int c, int q) const {
    Vec3 B = p_[b] - p_[a], C = p_[c] - p_[a], Q = p_[q] - p_[a];
    Vec3 RB = r_[b] - r_[a], RC = r_[c] - r_[a], RQ = r_[q] - r_[a];
    double v = RB.dot(C.cross(Q)) + B.dot(RC.cross(Q)) + B.dot(C.cross(RQ));
    auto perm = [](const Vec3& x, const Vec3& y, const Vec3& z) {
      return x.cwiseAbs().dot(Vec3(std::abs(y.y() * z.z()) + std::abs(y.z() * z.y()),
                                   std::abs(y.z() * z.x()) + std::abs(y.x() * z.z()),
                                   std::abs(y.x() * z.y()) + std::abs(y.y() * z.x())));
    };
    double bound = 1e-13 * (perm(RB, C, Q) + perm(B, RC, Q) + perm(B, C, RQ));
    if (v > bound) return 1;
    if (v < -bound) return -1;
    return 0;
  }

  int exact(int a, int b, int c, int q) const {
    auto row = [&](std::span<const Vec3> src, int i, Row& d) {
      for (int k = 0; k < 3; ++k) diff(src[i][k], src[a][k], d.c[k]);
    };
    std::span<const Vec3> r(r_);
    Row B, C, Q;
    row(p_, b, B);
    row(p_, c, C);
    row(p_, q, Q);
    Exp d;
    det3(B, C, Q, d);
    if (int sg = sign(d)) return sg;
    if (int sg = first_order_filter(a, b, c, q)) return sg;
    Row RB, RC, RQ;
    row(r, b, RB);
    row(r, c, RC);
    row(r, q, RQ);
    Exp total, t;
    det3(RB, C, Q, total);
    det3(B, RC, Q, t);
    add_to(total, t);
    det3(B, C, RQ, t);
    add_to(total, t);
    if (int sg = sign(total)) return sg;
    det3(RB, RC, Q, total);
    det3(RB, C, RQ, t);
    add_to(total, t);
    det3(B, RC, RQ, t);
    add_to(total, t);
    if (int sg = sign(total)) return sg;
    det3(RB, RC, RQ, total);
    return sign(total);
  }

  std::span<const Vec3> p_;
  std::vector<Vec3> r_;
  mutable long long exact_calls_ = 0;
};

struct HorizonEdge {
  int a, b, face;
};

class QuickHull {
 public:
  explicit QuickHull(std::span<const Vec3> pts) : p_(pts), orient_(pts) {}

  // Returns false when the input is not full-dimensional (i0..i3 unset).
  bool init(int i0, int i1, int i2, int i3) {
    std::array<int, 4> t{i0, i1, i2, i3};
    const std::array<std::array<int, 3>, 4> tri{{{0, 1, 2}, {0, 3, 1}, {1, 3, 2}, {2, 3, 0}}};
    for (const auto& tr : tri) {
      int f = new_face(t[tr[0]], t[tr[1]], t[tr[2]]);
      int other = t[0] + t[1] + t[2] + t[3] - t[tr[0]] - t[tr[1]] - t[tr[2]];
      if (outside(faces_[f], other)) {
        std::swap(faces_[f].v[1], faces_[f].v[2]);
        set_plane(faces_[f]);
      }
    }
    for (int f = 0; f < 4; ++f) {
      for (int e = 0; e < 3; ++e) {
        int a = faces_[f].v[e], b = faces_[f].v[(e + 1) % 3];
        for (int g = 0; g < 4; ++g) {
          if (g == f) continue;
          for (int k = 0; k < 3; ++k) {
            if (faces_[g].v[k] == b && faces_[g].v[(k + 1) % 3] == a) faces_[f].nbr[e] = g;
          }
        }
      }
    }
    for (int i = 0; i < static_cast<int>(p_.size()); ++i) {
      if (i == i0 || i == i1 || i == i2 || i == i3) continue;
      for (int f = 0; f < 4; ++f) {
        if (try_assign(f, i)) break;
      }
    }
    for (int f = 0; f < 4; ++f) {
      if (!faces_[f].outside.empty()) work_.push_back(f);
    }
    return true;
  }

  void run() {
    std::vector<int> visible;
    std::vector<HorizonEdge> horizon;
    std::vector<int> cycle;
    std::vector<int> created;
    while (!work_.empty()) {
      int f0 = work_.back();
      work_.pop_back();
      if (!faces_[f0].alive || faces_[f0].outside.empty()) continue;
      int p = faces_[f0].far;

      ++stamp_;
      visible.clear();
      horizon.clear();
      faces_[f0].mark = stamp_;
      std::vector<int> stack{f0};
      while (!stack.empty()) {
        int f = stack.back();
        stack.pop_back();
        visible.push_back(f);
        for (int e = 0; e < 3; ++e) {
          int g = faces_[f].nbr[e];
          if (faces_[g].mark == stamp_) continue;
          if (outside(faces_[g], p)) {
            faces_[g].mark = stamp_;
            stack.push_back(g);
          } else {
            horizon.push_back({faces_[f].v[e], faces_[f].v[(e + 1) % 3], g});
          }
        }
      }

      if (!order_horizon(horizon, cycle)) {
        drop_point(f0, p);
        work_.push_back(f0);
        continue;
      }

      created.clear();
      const int m = static_cast<int>(cycle.size());
      for (int k = 0; k < m; ++k) {
        const HorizonEdge& he = horizon[cycle[k]];
        int nf = new_face(he.a, he.b, p);
        faces_[nf].nbr[0] = he.face;
        Face& g = faces_[he.face];
        for (int e = 0; e < 3; ++e) {
          if (g.v[e] == he.b && g.v[(e + 1) % 3] == he.a) g.nbr[e] = nf;
        }
        created.push_back(nf);
      }
      for (int k = 0; k < m; ++k) {
        faces_[created[k]].nbr[1] = created[(k + 1) % m];
        faces_[created[k]].nbr[2] = created[(k + m - 1) % m];
      }

      for (int f : visible) {
        Face& vf = faces_[f];
        vf.alive = false;
        for (int i : vf.outside) {
          if (i == p) continue;
          for (int nf : created) {
            if (try_assign(nf, i)) break;
          }
        }
        std::vector<int>().swap(vf.outside);
        free_.push_back(f);
      }
      for (int nf : created) {
        if (!faces_[nf].outside.empty()) work_.push_back(nf);
      }
    }
  }

  void collect(Hull& out) const {
    for (const Face& f : faces_) {
      if (!f.alive) continue;
      out.triangles.push_back({f.v, f.n, f.d});
    }
  }

  int dropped() const { return dropped_; }

 private:
  int new_face(int a, int b, int c) {
    int id;
    if (!free_.empty()) {
      id = free_.back();
      free_.pop_back();
      faces_[id] = Face{};
    } else {
      id = static_cast<int>(faces_.size());
      faces_.emplace_back();
    }
    Face& f = faces_[id];
    f.v = {a, b, c};
    set_plane(f);
    return id;
  }

  void set_plane(Face& f) const {
    const Vec3& a = p_[f.v[0]];
    const Vec3& b = p_[f.v[1]];
    const Vec3& c = p_[f.v[2]];
    Vec3 n = (b - a).cross(c - a);
    double len = n.norm();
    f.n = len > 0.0 ? Vec3(n / len) : Vec3::Zero();
    f.d = f.n.dot((a + b + c) / 3.0);
  }

  double distance(const Face& f, const Vec3& q) const { return f.n.dot(q) - f.d; }

  bool outside(const Face& f, int i) const { return orient_(f.v[0], f.v[1], f.v[2], i) > 0; }

  bool try_assign(int f, int i) {
    if (!outside(faces_[f], i)) return false;
    double dist = distance(faces_[f], p_[i]);
    Face& face = faces_[f];
    face.outside.push_back(i);
    if (face.far < 0 || dist > face.far_dist) {
      face.far = i;
      face.far_dist = dist;
    }
    return true;
  }

  void drop_point(int f, int p) {
    Face& face = faces_[f];
    face.outside.erase(std::remove(face.outside.begin(), face.outside.end(), p), face.outside.end());
    face.far = -1;
    face.far_dist = 0.0;
    for (int i : face.outside) {
      double dist = distance(face, p_[i]);
      if (face.far < 0 || dist > face.far_dist) {
        face.far = i;
        face.far_dist = dist;
      }
    }
    ++dropped_;
  }

  static bool order_horizon(const std::vector<HorizonEdge>& h, std::vector<int>& cycle) {
    cycle.clear();
    const int m = static_cast<int>(h.size());
    if (m < 3) return false;
    for (int i = 0; i < m; ++i) {
      for (int j = i + 1; j < m; ++j) {
        if (h[i].a == h[j].a) return false;
      }
    }
    int cur = 0;
    for (int k = 0; k < m; ++k) {
      cycle.push_back(cur);
      int next = -1;
      for (int j = 0; j < m; ++j) {
        if (h[j].a == h[cur].b) {
          next = j;
          break;
        }
      }
      if (next < 0) return false;
      cur = next;
    }
    return cur == 0;
  }

  std::span<const Vec3> p_;
  Orient orient_;
  std::vector<Face> faces_;
  std::vector<int> free_;
  std::vector<int> work_;
  int stamp_ = 0;
  int dropped_ = 0;
};

double line_distance(const Vec3& a, const Vec3& b, const Vec3& q) {
  Vec3 d = b - a;
  return d.cross(q - a).norm() / d.norm();
}

// A point of the hull is extreme when the face planes through it span three
// directions. The perturbation may split the faces of one geometric vertex
// between coincident or nearly coincident copies, so the planes come from the
// faces around the point and around its neighbours, and copies within eps
// collapse onto the lowest index.
std::vector<int> extreme_from_triangles(const std::vector<HullTriangle>& tris, std::span<const Vec3> points,
                                        double eps) {
  const std::size_t n_points = points.size();
  std::vector<std::vector<int>> incident(n_points);
  std::vector<char> reliable(tris.size(), 0);
  for (int t = 0; t < static_cast<int>(tris.size()); ++t) {
    const auto& v = tris[t].v;
    for (int k : v) incident[k].push_back(t);
    const Vec3 &a = points[v[0]], &b = points[v[1]], &c = points[v[2]];
    double edge = std::max({(b - a).norm(), (c - b).norm(), (a - c).norm()});
    // zero-area and sliver faces carry no usable normal
    reliable[t] = tris[t].normal.squaredNorm() > 0.25 && (b - a).cross(c - a).norm() > 10.0 * eps * edge;
  }
  std::vector<char> extreme(n_points, 0);
  std::vector<int> planes, ring;
  for (std::size_t v = 0; v < n_points; ++v) {
    if (incident[v].empty()) continue;
    ring.clear();
    for (int t : incident[v]) ring.insert(ring.end(), tris[t].v.begin(), tris[t].v.end());
    std::sort(ring.begin(), ring.end());
    ring.erase(std::unique(ring.begin(), ring.end()), ring.end());
    planes.clear();
    for (int w : ring) {
      for (int t : incident[w]) {
        if (reliable[t] && std::abs(tris[t].normal.dot(points[v]) - tris[t].offset) <= eps) planes.push_back(t);
      }
    }
    if (planes.empty()) continue;
    const Vec3& n0 = tris[planes[0]].normal;
    int j = -1;
    double best = 0.0;
    for (int t : planes) {
      double c = tris[t].normal.cross(n0).norm();
      if (c > best) {
        best = c;
        j = t;
      }
    }
    if (j < 0 || best < 1e-9) continue;
    Vec3 axis = n0.cross(tris[j].normal);
    double vol = 0.0;
    for (int t : planes) vol = std::max(vol, std::abs(axis.dot(tris[t].normal)));
    if (vol <= 1e-9 * axis.norm()) continue;
    bool copy = false;
    for (int w : ring) {
      if (w < static_cast<int>(v) && extreme[w] && (points[w] - points[v]).norm() <= eps) copy = true;
    }
    extreme[v] = copy ? 0 : 1;
  }
  std::vector<int> out;
  for (std::size_t v = 0; v < n_points; ++v) {
    if (extreme[v]) out.push_back(static_cast<int>(v));
  }
  return out;
}

}  // namespace

std::vector<int> convex_hull_2d(std::span<const Vec2> pts, double tol) {
  const int n = static_cast<int>(pts.size());
  std::vector<int> idx(n);
  std::iota(idx.begin(), idx.end(), 0);
  std::sort(idx.begin(), idx.end(), [&](int a, int b) {
    if (pts[a].x() != pts[b].x()) return pts[a].x() < pts[b].x();
    return pts[a].y() < pts[b].y();
  });
  if (n < 3) return idx;
  auto turn = [&](int o, int a, int b) {
    Vec2 u = pts[a] - pts[o], w = pts[b] - pts[o];
    double len = w.norm();
    return len > 0.0 ? cross2(u, w) / len : 0.0;
  };
  std::vector<int> h(2 * n);
  int k = 0;
  for (int i = 0; i < n; ++i) {
    while (k >= 2 && turn(h[k - 2], h[k - 1], idx[i]) <= tol) --k;
    h[k++] = idx[i];
  }
  for (int i = n - 2, t = k + 1; i >= 0; --i) {
    while (k >= t && turn(h[k - 2], h[k - 1], idx[i]) <= tol) --k;
    h[k++] = idx[i];
  }
  h.resize(std::max(k - 1, 1));
  return h;
}

std::vector<int> lower_chain_2d(std::span<const Vec2> pts, double tol, bool keep_collinear) {
  const int n = static_cast<int>(pts.size());
  std::vector<int> idx(n);
  std::iota(idx.begin(), idx.end(), 0);
  std::sort(idx.begin(), idx.end(), [&](int a, int b) {
    if (pts[a].x() != pts[b].x()) return pts[a].x() < pts[b].x();
    return pts[a].y() < pts[b].y();
  });
  std::vector<int> uniq;
  for (int i : idx) {
    if (!uniq.empty() && pts[i].x() - pts[uniq.back()].x() <= tol) {
      if (pts[i].y() < pts[uniq.back()].y()) uniq.back() = i;
      continue;
    }
    uniq.push_back(i);
  }
  std::vector<int> h;
  for (int i : uniq) {
    while (h.size() >= 2) {
      const Vec2& o = pts[h[h.size() - 2]];
      const Vec2& a = pts[h.back()];
      Vec2 w = pts[i] - o;
      double c = cross2(a - o, w) / w.norm();
      // positive c: a lies below the chord o -> i
      bool pop = keep_collinear ? c < -tol : c <= tol;
      if (!pop) break;
      h.pop_back();
    }
    h.push_back(i);
  }
  return h;
}

Hull convex_hull(std::span<const Vec3> points, double rel_tol) {
  Hull out;
  const int n = static_cast<int>(points.size());
  if (n == 0) return out;
  Vec3 lo = points[0], hi = points[0];
  for (const Vec3& p : points) {
    lo = lo.cwiseMin(p);
    hi = hi.cwiseMax(p);
  }
  double scale = (hi - lo).norm();
  double absmax = std::max(lo.cwiseAbs().maxCoeff(), hi.cwiseAbs().maxCoeff());
  double eps = std::max(rel_tol * scale, 8.0 * std::numeric_limits<double>::epsilon() * absmax);
  out.tolerance = eps;

  std::array<int, 6> ext{};
  for (int k = 0; k < 3; ++k) {
    ext[2 * k] = ext[2 * k + 1] = 0;
    for (int i = 1; i < n; ++i) {
      if (points[i][k] < points[ext[2 * k]][k]) ext[2 * k] = i;
      if (points[i][k] > points[ext[2 * k + 1]][k]) ext[2 * k + 1] = i;
    }
  }
  int i0 = ext[0], i1 = ext[0];
  double best = -1.0;
  for (int a : ext) {
    for (int b : ext) {
      double d = (points[a] - points[b]).squaredNorm();
      if (d > best) {
        best = d;
        i0 = a;
        i1 = b;
      }
    }
  }
  if (std::sqrt(best) <= eps) {
    out.dimension = 0;
    out.vertices = {i0};
    return out;
  }
  int i2 = -1;
  best = -1.0;
  for (int i = 0; i < n; ++i) {
    double d = line_distance(points[i0], points[i1], points[i]);
    if (d > best) {
      best = d;
      i2 = i;
    }
  }
  if (best <= eps) {
    out.dimension = 1;
    Vec3 dir = (points[i1] - points[i0]).normalized();
    int lo_i = 0, hi_i = 0;
    for (int i = 1; i < n; ++i) {
      if (dir.dot(points[i]) < dir.dot(points[lo_i])) lo_i = i;
      if (dir.dot(points[i]) > dir.dot(points[hi_i])) hi_i = i;
    }
    out.vertices = {std::min(lo_i, hi_i), std::max(lo_i, hi_i)};
    return out;
  }
  Vec3 normal = (points[i1] - points[i0]).cross(points[i2] - points[i0]).normalized();
  int i3 = -1;
  best = -1.0;
  for (int i = 0; i < n; ++i) {
    double d = std::abs(normal.dot(points[i] - points[i0]));
    if (d > best) {
      best = d;
      i3 = i;
    }
  }
  if (best <= eps) {
    out.dimension = 2;
    out.plane_normal = normal;
    Vec3 ex = (points[i1] - points[i0]).normalized();
    Vec3 ey = normal.cross(ex);
    std::vector<Vec2> flat(n);
    for (int i = 0; i < n; ++i) {
      Vec3 r = points[i] - points[i0];
      flat[i] = Vec2(ex.dot(r), ey.dot(r));
    }
    out.polygon = convex_hull_2d(flat, eps);
    out.vertices = out.polygon;
    std::sort(out.vertices.begin(), out.vertices.end());
    return out;
  }

  out.dimension = 3;
  QuickHull qh(points);
  qh.init(i0, i1, i2, i3);
  qh.run();
  qh.collect(out);
  out.dropped_points = qh.dropped();
  out.vertices = extreme_from_triangles(out.triangles, points, eps);
  return out;
}

}  // namespace leastres
