#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "leastres/grid_fn.hpp"
#include "leastres/poly_body.hpp"
#include "leastres/pressure.hpp"

namespace leastres {

struct SiteOptions {
  std::optional<double> delta;   // half-width of I; chosen by halving when empty
  std::optional<double> z0;      // depth of I; default u(x0) - eps/2
  std::optional<double> radius;  // concavity radius r; chosen by halving when empty
  double angle_tol = 0.35;       // singular-node threshold inside the working set
  double hessian_tol = 1e-8;
  int beta_pairs = 32;
  std::uint64_t seed = 1;
};

// Site frame: y = R^T (x - anchor), z' = z - shear * y2.
struct StretchSite {
  Vec2 check = Vec2::Zero();
  int node = -1;
  double eps = 0.0;
  Vec2 anchor = Vec2::Zero();
  Mat2 rotation = Mat2::Identity();  // columns e1, e2
  double shear = 0.0;
  double u0 = 0.0;  // u(anchor)
  double z0 = 0.0;
  double delta = 0.0;
  Vec3 a = Vec3::Zero();  // endpoints of I in the original frame
  Vec3 b = Vec3::Zero();
  double radius = 0.0;  // concavity radius r
  double window = 0.0;  // U is the open disk of this radius about the anchor
  double s_min = 0.0;   // s0
  double s_max = 1.0;   // largest probed s with valid family
  std::vector<std::string> notes;

  Vec2 to_site(const Vec2& x) const { return rotation.transpose() * (x - anchor); }
  // f in site coordinates: xi' -> f(R (xi' + (0, shear)))
  double f_site(const PressureModel& f, const Vec2& xi) const {
    return f.value(rotation * (xi + Vec2(0.0, shear)));
  }
};

struct ProfileW {
  std::vector<double> y1, w;  // breakpoints of the column minimum, site frame
  double xi_minus = 0.0, xi_plus = 0.0;
  double x_minus = 0.0, x_plus = 0.0;  // tangency abscissas, anchor at 0
  double a_minus = 0.0, a_plus = 0.0;  // contact half-lengths
  // contact width L averaged over each breakpoint interval inside (x_minus, x_plus)
  std::vector<double> width;
  double width_at(double t) const;
  double slope(int k) const { return (w[k + 1] - w[k]) / (y1[k + 1] - y1[k]); }
};

struct QuadCoeffs {
  double a0 = 0, a1 = 0, a2 = 0, a3 = 0, a4 = 0, b2 = 0, b3 = 0, b4 = 0, c0 = 0, c1 = 0;
  void close() {
    c0 = a0 + b2 + b4;
    c1 = a1 - a2 + b3 - 2.0 * b4;
  }
  double derivative_at_0() const { return a3 - c1; }
};

struct AnalyticCoeffs {
  QuadCoeffs q;
  double a4_trapezoids = 0.0;  // 2 (F(trapezoid facets of C~) - b4)
  double b3_facets = 0.0;      // 2 F(facets of C seen only from I)
  double F_body = 0.0;
  double identity_residual = 0.0;  // a0 + a1/2 + b2 - a2/2 + b3/2 - F(u)
  std::vector<int> class_counts;   // facets of C per class 0, 1A, 1B, 2A, 2B, 3, 4
  std::vector<std::string> warnings;
};

struct QuadraticFit {
  double p0 = 0, p1 = 0, p2 = 0;  // F(s) = p0 + p1 s + p2 s^2
  double max_residual = 0, rms_residual = 0;
  int samples = 0;
  double derivative_at_0() const { return p1; }
  // a3 and c1 need one more quantity; a4 closes the system.
  QuadCoeffs resolve(double a4) const;
};

struct FamilyCheck {
  double max_outside = 0.0;  // max |u^(s) - u| over nodes outside U
  double max_dev = 0.0;      // max |u^(s) - u|
  bool ok = false;
};

struct Improvement {
  bool improved = false;
  double s = 0.0;
  double F_before = 0.0;
  double F_after = 0.0;
  std::optional<GridFn> u;
  std::vector<std::pair<double, double>> tried;  // (s, F)
  std::string reason;
};

StretchSite prepare_site(const GridFn& u, const PressureModel& f, const Vec2& check, double eps,
                         const SiteOptions& opt = {});
ProfileW profile_w(const GridFn& u, const StretchSite& site);

GridFn family_at(const GridFn& u, const StretchSite& site, double s);
FamilyCheck check_family(const GridFn& u, const StretchSite& site, const GridFn& us);
// For s > 0 the resistance of the exact blended polytope; for s <= 0 eval_F
// of the grid family.
double family_resistance(const GridFn& u, const StretchSite& site, const PressureModel& f, double s);
std::vector<std::pair<double, double>> sweep_resistance(const GridFn& u, const StretchSite& site,
                                                        const PressureModel& f, const std::vector<double>& s_values);

QuadraticFit fit_quadratic(const std::vector<std::pair<double, double>>& samples);
AnalyticCoeffs analytic_coeffs(const GridFn& u, const StretchSite& site, const PressureModel& f);

Improvement improvement_step(const GridFn& u, const StretchSite& site, const PressureModel& f,
                             double abs_tol = 1e-12);

}  // namespace leastres
