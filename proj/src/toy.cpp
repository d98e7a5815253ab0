#include "leastres/toy.hpp"

#include <algorithm>
#include <cmath>

#include "leastres/hull.hpp"

namespace leastres {
namespace {

double simpson(const std::function<double(double)>& g, double a, double b, double fa, double fm, double fb,
               double whole, double tol, int depth) {
  double m = 0.5 * (a + b);
  double lm = g(0.5 * (a + m)), rm = g(0.5 * (m + b));
  double left = (m - a) / 6.0 * (fa + 4.0 * lm + fm);
  double right = (b - m) / 6.0 * (fm + 4.0 * rm + fb);
  double diff = left + right - whole;
  if (depth <= 0 || std::abs(diff) <= 15.0 * tol) return left + right + diff / 15.0;
  return simpson(g, a, m, fa, lm, fm, left, 0.5 * tol, depth - 1) +
         simpson(g, m, b, fm, rm, fb, right, 0.5 * tol, depth - 1);
}

std::function<double(double)> analytic_value(const std::string& name) {
  if (name == "x^2") return [](double t) { return t * t; };
  if (name == "|x|") return [](double t) { return std::abs(t); };
  if (name == "x^4") return [](double t) { return t * t * t * t; };
  throw PreconditionError("unknown analytic function '" + name + "' (expected x^2, |x| or x^4)");
}

}  // namespace

ConvexFn1D::ConvexFn1D(std::vector<double> x, std::vector<double> y, double tol) : x_(std::move(x)), y_(std::move(y)) {
  if (x_.size() < 2 || x_.size() != y_.size()) throw PreconditionError("need at least two breakpoints with values");
  for (std::size_t k = 0; k < x_.size(); ++k) {
    if (!std::isfinite(x_[k]) || !std::isfinite(y_[k])) throw PreconditionError("breakpoints must be finite");
    if (k > 0 && !(x_[k] > x_[k - 1])) throw PreconditionError("breakpoints must be strictly increasing");
  }
  for (int k = 1; k < segments(); ++k) {
    double p = slope(k - 1), q = slope(k);
    if (q < p - tol * (1.0 + std::abs(p))) throw PreconditionError("breakpoint values are not convex");
  }
}

ConvexFn1D ConvexFn1D::analytic(const std::string& name, double a, double b, int segments) {
  if (!(b > a)) throw PreconditionError("empty interval");
  if (segments < 2) throw PreconditionError("need at least two segments");
  auto g = analytic_value(name);
  std::vector<double> x;
  for (int k = 0; k <= segments; ++k) x.push_back(k == segments ? b : a + (b - a) * k / segments);
  if (a < 0.0 && b > 0.0 && std::find(x.begin(), x.end(), 0.0) == x.end()) {
    x.insert(std::upper_bound(x.begin(), x.end(), 0.0), 0.0);
  }
  std::vector<double> y;
  for (double t : x) y.push_back(g(t));
  return ConvexFn1D(std::move(x), std::move(y));
}

double ConvexFn1D::operator()(double t) const {
  const double span = b() - a();
  if (t < a() - 1e-12 * span || t > b() + 1e-12 * span) throw RangeError("argument outside the interval");
  t = std::clamp(t, a(), b());
  auto it = std::upper_bound(x_.begin(), x_.end(), t);
  int k = std::clamp(static_cast<int>(it - x_.begin()) - 1, 0, segments() - 1);
  double w = (t - x_[k]) / (x_[k + 1] - x_[k]);
  return (1.0 - w) * y_[k] + w * y_[k + 1];
}

std::function<double(double)> analytic_derivative(const std::string& name) {
  if (name == "x^2") return [](double t) { return 2.0 * t; };
  if (name == "|x|") return [](double t) { return t < 0.0 ? -1.0 : 1.0; };
  if (name == "x^4") return [](double t) { return 4.0 * t * t * t; };
  throw PreconditionError("unknown analytic function '" + name + "'");
}

double resistance_1d(const ConvexFn1D& u, const Pressure1D& f) {
  double s = 0.0;
  for (int k = 0; k < u.segments(); ++k) s += f(u.slope(k)) * (u.x()[k + 1] - u.x()[k]);
  return s;
}

double resistance_1d(const std::function<double(double)>& du, double a, double b, const Pressure1D& f, double tol) {
  auto g = [&](double t) { return f(du(t)); };
  double fa = g(a), fb = g(b), fm = g(0.5 * (a + b));
  double whole = (b - a) / 6.0 * (fa + 4.0 * fm + fb);
  return simpson(g, a, b, fa, fm, fb, whole, tol, 50);
}

ToyFamily::ToyFamily(ConvexFn1D fn, const Vec2& o) : u(std::move(fn)), nose(o) {
  const auto& x = u.x();
  const auto& y = u.y();
  if (!(nose.x() > u.a() && nose.x() < u.b())) throw PreconditionError("nose abscissa must lie inside the interval");
  double below = u(nose.x()) - nose.y();
  if (!(below > 1e-12 * (1.0 + std::abs(nose.y())))) {
    throw PreconditionError("nose point must lie strictly below the graph");
  }
  const double rel = 1e-14;
  int l = -1, r = -1;
  double best_l = -INFINITY, best_r = INFINITY;
  for (int k = 0; k < static_cast<int>(x.size()); ++k) {
    double dx = x[k] - nose.x();
    if (dx == 0.0) continue;
    double sl = (y[k] - nose.y()) / dx;
    if (dx < 0.0) {
      // ties go to the leftmost touching breakpoint
      if (sl > best_l + rel * (1.0 + std::abs(best_l)) || l < 0) {
        best_l = sl;
        l = k;
      }
    } else if (sl <= best_r + rel * (1.0 + std::abs(sl))) {
      // ties go to the rightmost touching breakpoint
      if (sl < best_r) best_r = sl;
      r = k;
    }
  }
  if (l <= 0 || r < 0 || r >= u.segments()) {
    throw ValidityError("tangent line from the nose point does not touch the graph inside the interval");
  }
  left = l;
  right = r;
  slope_left = best_l;
  slope_right = best_r;
  window_lo = 0.5 * (u.a() + xa());
  window_hi = 0.5 * (xb() + u.b());
}

ConvexFn1D toy_family_at(const ToyFamily& fam, double s) {
  if (!std::isfinite(s) || s > 1.0) throw RangeError("family parameter must satisfy s <= 1");
  const ConvexFn1D& u = fam.u;
  if (s == 0.0) return u;
  const auto& x = u.x();
  const auto& y = u.y();
  const Vec2& o = fam.nose;
  const double span = u.b() - u.a();
  if (s > 0.0) {
    std::vector<Vec2> pts;
    pts.reserve(2 * x.size());
    for (std::size_t k = 0; k < x.size(); ++k) {
      pts.emplace_back(x[k], y[k]);
      pts.push_back((1.0 - s) * Vec2(x[k], y[k]) + s * o);
    }
    std::vector<int> chain = lower_chain_2d(pts, 1e-15 * span, false);
    std::vector<double> cx, cy;
    for (int i : chain) {
      cx.push_back(pts[i].x());
      cy.push_back(pts[i].y());
    }
    return ConvexFn1D(std::move(cx), std::move(cy), 1e-9);
  }
  const double k = 1.0 - s;
  auto v = [&](double t) { return o.y() + k * (u(o.x() + (t - o.x()) / k) - o.y()); };
  std::vector<double> xs(x.begin(), x.end());
  for (double xi : x) {
    double t = o.x() + k * (xi - o.x());
    if (t > u.a() && t < u.b()) xs.push_back(t);
  }
  std::sort(xs.begin(), xs.end());
  xs.erase(std::unique(xs.begin(), xs.end(), [&](double p, double q) { return q - p <= 1e-15 * span; }), xs.end());
  xs.front() = u.a();
  xs.back() = u.b();
  std::vector<double> du(xs.size()), dv(xs.size());
  for (std::size_t i = 0; i < xs.size(); ++i) {
    du[i] = u(xs[i]);
    dv[i] = v(xs[i]);
  }
  std::vector<double> cx, cy;
  const double xa = fam.window_lo, xb = fam.window_hi;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    double tol = 1e-12 * (1.0 + std::abs(du[i]));
    if ((xs[i] <= xa || xs[i] >= xb) && dv[i] > du[i] + tol) {
      throw ValidityError("s is too negative: the family changes u outside the working interval");
    }
    if (i > 0) {
      double g0 = dv[i - 1] - du[i - 1], g1 = dv[i] - du[i];
      if ((g0 < 0.0 && g1 > 0.0) || (g0 > 0.0 && g1 < 0.0)) {
        double w = g0 / (g0 - g1);
        double t = xs[i - 1] + w * (xs[i] - xs[i - 1]);
        if (t > cx.back() && t < xs[i]) {
          cx.push_back(t);
          cy.push_back(du[i - 1] + w * (du[i] - du[i - 1]));
        }
      }
    }
    cx.push_back(xs[i]);
    cy.push_back(std::max(du[i], dv[i]));
  }
  return ConvexFn1D(std::move(cx), std::move(cy), 1e-9);
}

ToySlopes toy_slope_identity(const ToyFamily& fam, const Pressure1D& f, double step) {
  if (!(step > 0.0 && step < 0.25)) throw PreconditionError("difference step must lie in (0, 0.25)");
  auto F = [&](double s) { return resistance_1d(toy_family_at(fam, s), f); };
  ToySlopes out;
  double sx = 0.0, sy = 0.0, sxx = 0.0, sxy = 0.0;
  const int n = 11;
  for (int k = 0; k < n; ++k) {
    double s = k / 10.0, v = F(s);
    sx += s;
    sy += v;
    sxx += s * s;
    sxy += s * v;
  }
  out.numeric = (n * sxy - sx * sy) / (n * sxx - sx * sx);
  const ConvexFn1D& u = fam.u;
  double arc = 0.0;
  for (int k = fam.left; k < fam.right; ++k) arc += f(u.slope(k)) * (u.x()[k + 1] - u.x()[k]);
  out.analytic = f(fam.slope_left) * (fam.nose.x() - fam.xa()) + f(fam.slope_right) * (fam.xb() - fam.nose.x()) - arc;
  double f0 = F(0.0);
  out.right = (-3.0 * f0 + 4.0 * F(step) - F(2.0 * step)) / (2.0 * step);
  out.left = (3.0 * f0 - 4.0 * F(-step) + F(-2.0 * step)) / (2.0 * step);
  return out;
}

}  // namespace leastres
