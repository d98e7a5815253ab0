#include "oracles.hpp"

#include <cmath>
#include <limits>
#include <numbers>
#include <stdexcept>

namespace oracle {

namespace {

struct Pass {
  double cost = 0.0;  // resistance + lambda * height
  double F = 0.0;
  double height = 0.0;
  double nose = 0.0;
};

// One dynamic program for fixed lambda. Stage k uses slope p_k on the rings
// [r_j, r_i); slopes only increase from stage to stage, so every profile is
// convex. V[i] is the least cost to reach radius r_i.
Pass solve_fixed(double lambda, const std::vector<double>& r, const std::vector<double>& p,
                 const std::vector<double>& fp) {
  const int N = static_cast<int>(r.size()) - 1;
  const int K = static_cast<int>(p.size());
  const double inf = std::numeric_limits<double>::infinity();
  std::vector<double> V(N + 1, inf), W(N + 1);
  std::vector<std::vector<int>> from(K, std::vector<int>(N + 1));
  V[0] = 0.0;
  for (int k = 0; k < K; ++k) {
    const double a = std::numbers::pi * fp[k];
    const double b = lambda * p[k];
    for (int i = 0; i <= N; ++i) {
      double best = V[i];
      int arg = i;
      for (int j = 0; j < i; ++j) {
        if (V[j] == inf) continue;
        double c = V[j] + a * (r[i] * r[i] - r[j] * r[j]) + b * (r[i] - r[j]);
        if (c < best) {
          best = c;
          arg = j;
        }
      }
      W[i] = best;
      from[k][i] = arg;
    }
    V.swap(W);
  }
  Pass out;
  out.cost = V[N];
  int i = N;
  for (int k = K - 1; k >= 0; --k) {
    int j = from[k][i];
    if (j < i) {
      out.F += std::numbers::pi * fp[k] * (r[i] * r[i] - r[j] * r[j]);
      out.height += p[k] * (r[i] - r[j]);
      if (k == 0) out.nose = r[i];
    }
    i = j;
  }
  return out;
}

double simpson(const std::function<double(double)>& g, double a, double b, double fa, double fm, double fb,
               double whole, double tol, int depth) {
  double m = 0.5 * (a + b);
  double lm = g(0.5 * (a + m)), rm = g(0.5 * (m + b));
  double left = (m - a) / 6 * (fa + 4 * lm + fm);
  double right = (b - m) / 6 * (fm + 4 * rm + fb);
  if (depth <= 0 || std::abs(left + right - whole) <= 15 * tol) return left + right + (left + right - whole) / 15;
  return simpson(g, a, m, fa, lm, fm, left, tol / 2, depth - 1) + simpson(g, m, b, fm, rm, fb, right, tol / 2, depth - 1);
}

double newton_f(double p) { return 1.0 / (1.0 + p * p); }

}  // namespace

RadialDP radial_dp(double L, double M, const std::function<double(double)>& f, int radii, int slopes, double p_max) {
  if (L <= 0 || M < 0 || radii < 1 || slopes < 2) throw std::invalid_argument("radial_dp: bad arguments");
  std::vector<double> r(radii + 1), p(slopes), fp(slopes);
  for (int i = 0; i <= radii; ++i) r[i] = L * i / radii;
  for (int k = 0; k < slopes; ++k) {
    p[k] = p_max * k / (slopes - 1);
    fp[k] = f(p[k]);
  }
  // height falls as lambda grows; find the smallest lambda meeting the budget
  double lo = 0.0, hi = 1.0;
  Pass best = solve_fixed(lo, r, p, fp);
  if (best.height <= M) return {best.F, best.height, best.nose, 0.0};
  while (solve_fixed(hi, r, p, fp).height > M) hi *= 2;
  for (int it = 0; it < 60; ++it) {
    double mid = 0.5 * (lo + hi);
    (solve_fixed(mid, r, p, fp).height > M ? lo : hi) = mid;
  }
  best = solve_fixed(hi, r, p, fp);
  return {best.F, best.height, best.nose, hi};
}

double integrate(const std::function<double(double)>& g, double a, double b, double tol) {
  double fa = g(a), fb = g(b), fm = g(0.5 * (a + b));
  return simpson(g, a, b, fa, fm, fb, (b - a) / 6 * (fa + 4 * fm + fb), tol, 50);
}

double bisect(const std::function<double(double)>& g, double a, double b, double tol) {
  double ga = g(a);
  if ((ga > 0) == (g(b) > 0)) throw std::invalid_argument("bisect: no sign change");
  while (b - a > tol) {
    double m = 0.5 * (a + b);
    double gm = g(m);
    if (gm == 0.0) return m;
    if ((gm > 0) == (ga > 0)) {
      a = m;
      ga = gm;
    } else {
      b = m;
    }
    if (m == a && m == b) break;
  }
  return 0.5 * (a + b);
}

double parabola_tangent(double c, double z0) {
  // c x^2 - z0 = 2 c x * x
  return std::sqrt(-z0 / c);
}

ToyClosedForm toy_parabola(double z0) {
  const double xt = parabola_tangent(1.0, z0);
  const double p = (xt * xt - z0) / xt;
  ToyClosedForm out;
  out.F0 = integrate([](double x) { return newton_f(2 * x); }, -1, 1);
  double chord = integrate([](double x) { return newton_f(2 * x); }, -xt, xt);
  double sides = 2 * xt * newton_f(p);
  out.F1 = out.F0 - chord + sides;
  out.slope = sides - chord;
  return out;
}

NoseCoeffs paraboloid_coeffs(double c1, double z0, double delta) {
  const double xt = parabola_tangent(c1, z0);
  const double xi = 2 * c1 * xt;
  NoseCoeffs out;
  out.a3 = 2 * delta * integrate([&](double x) { return newton_f(2 * c1 * x); }, -xt, xt);
  out.a4 = 2 * delta * (newton_f(-xi) * xt + newton_f(xi) * xt);
  return out;
}

double newton_det_hessian(double t) {
  // f = g(|xi|), g(r) = 1 / (1 + r^2): eigenvalues g'' and g'/r
  const double q = 1 + t * t;
  const double g1 = -2 * t / (q * q);
  const double g2 = (6 * t * t - 2) / (q * q * q);
  return g2 * g1 / t;
}

}  // namespace oracle
