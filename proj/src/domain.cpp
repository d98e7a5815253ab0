#include "leastres/domain.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace leastres {
namespace {

void check_step(const Domain& d) {
  if (!(d.h > 0.0) || !std::isfinite(d.h)) throw PreconditionError("grid step must be positive");
  if (d.diameter() / d.h < 4.0 - 1e-12) throw PreconditionError("fewer than 4 grid cells span the domain");
}

// Integral of sqrt(R^2 - x^2).
double circle_primitive(double x, double r) {
  x = std::clamp(x, -r, r);
  return 0.5 * (x * std::sqrt(std::max(r * r - x * x, 0.0)) + r * r * std::asin(x / r));
}

double disk_rect_area(double r, double x0, double x1, double y0, double y1) {
  double a = std::max(x0, -r), b = std::min(x1, r);
  if (a >= b || y0 >= y1) return 0.0;
  std::vector<double> cuts{a, b};
  for (double y : {y0, y1}) {
    if (std::abs(y) < r) {
      double x = std::sqrt(r * r - y * y);
      for (double c : {-x, x}) {
        if (c > a && c < b) cuts.push_back(c);
      }
    }
  }
  std::sort(cuts.begin(), cuts.end());
  double total = 0.0;
  for (std::size_t k = 0; k + 1 < cuts.size(); ++k) {
    double l = cuts[k], u = cuts[k + 1];
    if (u <= l) continue;
    double m = 0.5 * (l + u);
    double s = std::sqrt(std::max(r * r - m * m, 0.0));
    bool top_clipped = y1 < s;
    bool bottom_clipped = y0 > -s;
    if ((top_clipped ? y1 : s) <= (bottom_clipped ? y0 : -s)) continue;
    double arc = circle_primitive(u, r) - circle_primitive(l, r);
    double w = u - l;
    if (top_clipped && bottom_clipped) {
      total += (y1 - y0) * w;
    } else if (top_clipped) {
      total += y1 * w + arc;
    } else if (bottom_clipped) {
      total += arc - y0 * w;
    } else {
      total += 2.0 * arc;
    }
  }
  return total;
}

}  // namespace

double polygon_area(const std::vector<Vec2>& poly) {
  double a = 0.0;
  for (std::size_t k = 0; k < poly.size(); ++k) a += cross2(poly[k], poly[(k + 1) % poly.size()]);
  return 0.5 * a;
}

double clip_area(const std::vector<Vec2>& poly, double x0, double x1, double y0, double y1) {
  std::vector<Vec2> cur = poly, next;
  auto clip = [&](int axis, double bound, bool keep_greater) {
    next.clear();
    const std::size_t n = cur.size();
    for (std::size_t k = 0; k < n; ++k) {
      const Vec2& p = cur[k];
      const Vec2& q = cur[(k + 1) % n];
      double fp = keep_greater ? p[axis] - bound : bound - p[axis];
      double fq = keep_greater ? q[axis] - bound : bound - q[axis];
      if (fp >= 0.0) next.push_back(p);
      if ((fp >= 0.0) != (fq >= 0.0)) {
        double t = fp / (fp - fq);
        next.push_back(p + t * (q - p));
      }
    }
    cur.swap(next);
  };
  clip(0, x0, true);
  if (cur.empty()) return 0.0;
  clip(0, x1, false);
  if (cur.empty()) return 0.0;
  clip(1, y0, true);
  if (cur.empty()) return 0.0;
  clip(1, y1, false);
  if (cur.size() < 3) return 0.0;
  return std::abs(polygon_area(cur));
}

Domain Domain::disk(const Vec2& center, double radius, double h) {
  if (!(radius > 0.0)) throw PreconditionError("disk radius must be positive");
  Domain d;
  d.kind = Kind::disk;
  d.center = center;
  d.radius = radius;
  d.h = h;
  check_step(d);
  return d;
}

Domain Domain::polygon(std::vector<Vec2> vertices, double h) {
  const std::size_t n = vertices.size();
  if (n < 3) throw PreconditionError("polygon needs at least 3 vertices");
  for (std::size_t k = 0; k < n; ++k) {
    const Vec2& a = vertices[k];
    const Vec2& b = vertices[(k + 1) % n];
    const Vec2& c = vertices[(k + 2) % n];
    if (cross2(b - a, c - b) <= 0.0) throw PreconditionError("polygon must be convex and counterclockwise");
  }
  Domain d;
  d.kind = Kind::polygon;
  d.vertices = std::move(vertices);
  d.h = h;
  Vec2 c = Vec2::Zero();
  for (const Vec2& v : d.vertices) c += v;
  d.center = c / static_cast<double>(n);
  check_step(d);
  return d;
}

Domain Domain::rectangle(double x0, double x1, double y0, double y1, double h) {
  return polygon({{x0, y0}, {x1, y0}, {x1, y1}, {x0, y1}}, h);
}

Domain Domain::with_step(double step) const {
  Domain d = *this;
  d.h = step;
  check_step(d);
  return d;
}

double Domain::signed_distance(const Vec2& x) const {
  if (kind == Kind::disk) return radius - (x - center).norm();
  double best = std::numeric_limits<double>::infinity();
  const std::size_t n = vertices.size();
  for (std::size_t k = 0; k < n; ++k) {
    Vec2 e = vertices[(k + 1) % n] - vertices[k];
    Vec2 inward(-e.y(), e.x());
    best = std::min(best, inward.dot(x - vertices[k]) / inward.norm());
  }
  return best;
}

double Domain::diameter() const {
  if (kind == Kind::disk) return 2.0 * radius;
  double best = 0.0;
  for (const Vec2& a : vertices) {
    for (const Vec2& b : vertices) best = std::max(best, (a - b).norm());
  }
  return best;
}

double Domain::area() const {
  if (kind == Kind::disk) return M_PI * radius * radius;
  return polygon_area(vertices);
}

Vec2 Domain::bbox_min() const {
  if (kind == Kind::disk) return center - Vec2(radius, radius);
  Vec2 lo = vertices[0];
  for (const Vec2& v : vertices) lo = lo.cwiseMin(v);
  return lo;
}

Vec2 Domain::bbox_max() const {
  if (kind == Kind::disk) return center + Vec2(radius, radius);
  Vec2 hi = vertices[0];
  for (const Vec2& v : vertices) hi = hi.cwiseMax(v);
  return hi;
}

Vec2 Domain::centroid() const {
  if (kind == Kind::disk) return center;
  Vec2 c = Vec2::Zero();
  double a = 0.0;
  const std::size_t n = vertices.size();
  for (std::size_t k = 0; k < n; ++k) {
    double w = cross2(vertices[k], vertices[(k + 1) % n]);
    a += w;
    c += w * (vertices[k] + vertices[(k + 1) % n]);
  }
  return c / (3.0 * a);
}

double Domain::rect_area(double x0, double x1, double y0, double y1) const {
  if (kind == Kind::disk) {
    return disk_rect_area(radius, x0 - center.x(), x1 - center.x(), y0 - center.y(), y1 - center.y());
  }
  return clip_area(vertices, x0, x1, y0, y1);
}

Grid::Grid(const Domain& domain) : domain_(domain) {
  const double h = domain_.h;
  if (domain_.kind == Domain::Kind::disk) {
    int k = static_cast<int>(std::ceil(domain_.radius / h - 1e-9));
    origin_ = domain_.center - Vec2(k * h, k * h);
    nx_ = ny_ = 2 * k;
  } else {
    origin_ = domain_.bbox_min();
    Vec2 ext = domain_.bbox_max() - origin_;
    nx_ = static_cast<int>(std::ceil(ext.x() / h - 1e-9));
    ny_ = static_cast<int>(std::ceil(ext.y() / h - 1e-9));
  }
  const double tol_on = 1e-12 * domain_.diameter();
  const double tol_near = 1e-3 * h;
  lattice_.assign(static_cast<std::size_t>(nx_ + 1) * (ny_ + 1), -1);
  for (int j = 0; j <= ny_; ++j) {
    for (int i = 0; i <= nx_; ++i) {
      Vec2 p = lattice_point(i, j);
      double sd = domain_.signed_distance(p);
      if (sd > tol_near) {
        lattice_[static_cast<std::size_t>(j) * (nx_ + 1) + i] = add_node(p, false, i, j);
      } else if (std::abs(sd) <= tol_on) {
        lattice_[static_cast<std::size_t>(j) * (nx_ + 1) + i] = add_node(p, true, i, j);
      }
    }
  }

  std::vector<Vec2> candidates;
  auto line_hits = [&](int axis, double c) {
    if (domain_.kind == Domain::Kind::disk) {
      double dc = c - domain_.center[axis];
      double r = domain_.radius;
      if (std::abs(dc) > r) return;
      double w = std::sqrt(std::max(r * r - dc * dc, 0.0));
      for (double sgn : {-1.0, 1.0}) {
        Vec2 p;
        p[axis] = c;
        p[1 - axis] = domain_.center[1 - axis] + sgn * w;
        candidates.push_back(p);
      }
      return;
    }
    const auto& v = domain_.vertices;
    for (std::size_t k = 0; k < v.size(); ++k) {
      const Vec2& a = v[k];
      const Vec2& b = v[(k + 1) % v.size()];
      double fa = a[axis] - c, fb = b[axis] - c;
      if (fa == 0.0 && fb == 0.0) continue;
      if ((fa <= 0.0 && fb >= 0.0) || (fa >= 0.0 && fb <= 0.0)) {
        double t = fa / (fa - fb);
        Vec2 p = a + t * (b - a);
        p[axis] = c;
        candidates.push_back(p);
      }
    }
  };
  for (int i = 0; i <= nx_; ++i) line_hits(0, origin_.x() + i * h);
  for (int j = 0; j <= ny_; ++j) line_hits(1, origin_.y() + j * h);
  if (domain_.kind == Domain::Kind::polygon) {
    for (const Vec2& v : domain_.vertices) candidates.push_back(v);
  }
  std::vector<int> bnodes;
  for (int k = 0; k < size(); ++k) {
    if (boundary_[k]) bnodes.push_back(k);
  }
  for (const Vec2& p : candidates) {
    bool dup = false;
    for (int k : bnodes) {
      if ((nodes_[k] - p).norm() <= tol_near) {
        dup = true;
        break;
      }
    }
    if (!dup) bnodes.push_back(add_node(p, true, -1, -1));
  }

  Vec2 c = domain_.centroid();
  cycle_ = bnodes;
  std::sort(cycle_.begin(), cycle_.end(), [&](int a, int b) {
    Vec2 da = nodes_[a] - c, db = nodes_[b] - c;
    return std::atan2(da.y(), da.x()) < std::atan2(db.y(), db.x());
  });

  cell_index_.assign(static_cast<std::size_t>(nx_) * ny_, -1);
  for (int j = 0; j < ny_; ++j) {
    for (int i = 0; i < nx_; ++i) {
      Vec2 lo = lattice_point(i, j);
      double area = domain_.rect_area(lo.x(), lo.x() + h, lo.y(), lo.y() + h);
      if (area <= 1e-12 * h * h) continue;
      Cell cell;
      cell.i = i;
      cell.j = j;
      cell.area = area;
      cell.lo = lo;
      cell.corners = {node_at(i, j), node_at(i + 1, j), node_at(i + 1, j + 1), node_at(i, j + 1)};
      cell.boundary = area < h * h * (1.0 - 1e-9);
      for (int q : cell.corners) {
        if (q < 0 || boundary_[q]) cell.boundary = true;
      }
      cell_index_[static_cast<std::size_t>(j) * nx_ + i] = static_cast<int>(cells_.size());
      cells_.push_back(cell);
    }
  }
}

int Grid::add_node(const Vec2& p, bool boundary, int i, int j) {
  nodes_.push_back(p);
  boundary_.push_back(boundary ? 1 : 0);
  li_.push_back(i);
  lj_.push_back(j);
  return static_cast<int>(nodes_.size()) - 1;
}

int Grid::node_at(int i, int j) const {
  if (i < 0 || j < 0 || i > nx_ || j > ny_) return -1;
  return lattice_[static_cast<std::size_t>(j) * (nx_ + 1) + i];
}

int Grid::cell_at(int i, int j) const {
  if (i < 0 || j < 0 || i >= nx_ || j >= ny_) return -1;
  return cell_index_[static_cast<std::size_t>(j) * nx_ + i];
}

int Grid::cell_of(const Vec2& x) const {
  int i = static_cast<int>(std::floor((x.x() - origin_.x()) / h()));
  int j = static_cast<int>(std::floor((x.y() - origin_.y()) / h()));
  i = std::clamp(i, 0, nx_ - 1);
  j = std::clamp(j, 0, ny_ - 1);
  return cell_at(i, j);
}

int Grid::nearest_node(const Vec2& x) const {
  int best = 0;
  double bd = std::numeric_limits<double>::infinity();
  for (int k = 0; k < size(); ++k) {
    double d = (nodes_[k] - x).squaredNorm();
    if (d < bd) {
      bd = d;
      best = k;
    }
  }
  return best;
}

}  // namespace leastres
