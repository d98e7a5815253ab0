#include "leastres/stretch.hpp"

#include <Eigen/Eigenvalues>
#include <algorithm>
#include <cmath>
#include <random>

#include "leastres/hull.hpp"
#include "leastres/kernels.hpp"
#include "leastres/resistance.hpp"

namespace leastres {
namespace {

double flat_tol(const GridFn& u) { return envelope_tol(u.height_cap()); }

// Node graph plus the lifted rim, in the site frame.
std::vector<Vec3> site_points(const GridFn& u, const StretchSite& site) {
  const Grid& g = u.grid();
  std::vector<Vec3> pts;
  pts.reserve(g.size() + g.boundary_cycle().size());
  auto push = [&](int k, double z) {
    Vec2 y = site.to_site(g.node(k));
    pts.emplace_back(y.x(), y.y(), z - site.shear * y.y());
  };
  for (int k = 0; k < g.size(); ++k) push(k, u[k]);
  for (int k : g.boundary_cycle()) push(k, u.height_cap());
  return pts;
}

Vec3 site_a(const StretchSite& s) { return Vec3(0.0, -s.delta, s.z0); }
Vec3 site_b(const StretchSite& s) { return Vec3(0.0, s.delta, s.z0); }

double facet_g(const StretchSite& site, const PressureModel& f, const Facet& fc) {
  const Vec3& n = fc.normal;
  if (n.z() >= 0.0) return 0.0;
  double a = -n.z();
  if (a <= 1e-12) return f.wall_limit.value_or(0.0) * fc.area;
  return site.f_site(f, Vec2(n.x() / a, n.y() / a)) * a * fc.area;
}

LowerSurface blended_surface(const GridFn& u, const StretchSite& site, double s) {
  const Grid& g = u.grid();
  std::vector<Vec2> xy;
  std::vector<double> z;
  xy.reserve(3 * g.size());
  z.reserve(3 * g.size());
  for (int k = 0; k < g.size(); ++k) {
    xy.push_back(g.node(k));
    z.push_back(u[k]);
  }
  for (const Vec3& p : {site.a, site.b}) {
    for (int k = 0; k < g.size(); ++k) {
      xy.push_back((1.0 - s) * g.node(k) + s * p.head<2>());
      z.push_back((1.0 - s) * u[k] + s * p.z());
    }
  }
  return LowerSurface(xy, z, g.h());
}

// Values of u' = u - shear*y2 along the segment under I.
std::pair<double, double> sheared_range_under(const GridFn& u, const StretchSite& site, double delta) {
  const Vec2 e2 = site.rotation.col(1);
  double lo = INFINITY, hi = -INFINITY;
  const int n = 64;
  for (int k = 0; k <= n; ++k) {
    double t = -delta + 2.0 * delta * k / n;
    double v = u.eval(site.anchor + t * e2) - site.shear * t;
    lo = std::min(lo, v);
    hi = std::max(hi, v);
  }
  return {lo, hi};
}

void set_segment(StretchSite& site) {
  const Vec2 e2 = site.rotation.col(1);
  Vec2 pa = site.anchor - site.delta * e2, pb = site.anchor + site.delta * e2;
  site.a = Vec3(pa.x(), pa.y(), site.z0 - site.shear * site.delta);
  site.b = Vec3(pb.x(), pb.y(), site.z0 + site.shear * site.delta);
}

// Checks the concavity radius r around the anchor; empty string when it passes.
std::string radius_failure(const GridFn& u, const PressureModel& f, const StretchSite& site, double r,
                           const SiteOptions& opt) {
  const Grid& g = u.grid();
  const Vec2 e1 = site.rotation.col(0);
  std::vector<int> ball;
  std::vector<Vec2> grads;
  for (int k = 0; k < g.size(); ++k) {
    if ((g.node(k) - site.anchor).norm() > r) continue;
    NodeCone cone = node_cone(u, k);
    if (k != site.node && cone.width > opt.angle_tol) return "singular node inside the concavity radius";
    Vec2 gk = cone.mean_grad;
    if (e1.dot(f.hessian(gk) * e1) >= 0.0) return "f is not concave along e1 at a node gradient";
    ball.push_back(k);
    grads.push_back(gk);
  }
  if (ball.size() < 2) return "";
  std::mt19937_64 rng(opt.seed);
  const double max_angle = 0.1;
  for (int p = 0; p < opt.beta_pairs; ++p) {
    std::size_t i = rng() % ball.size();
    std::size_t best = i;
    double best_angle = max_angle;
    for (std::size_t j = 0; j < ball.size(); ++j) {
      Vec2 d = grads[j] - grads[i];
      if (d.norm() <= 1e-12) continue;
      double ang = std::atan2(std::abs(cross2(e1, d)), std::abs(e1.dot(d)));
      if (ang < best_angle) {
        best_angle = ang;
        best = j;
      }
    }
    if (best == i) continue;
    const Vec2 &g0 = grads[i], &g1 = grads[best];
    double f0 = f.value(g0), f1 = f.value(g1);
    for (double t : {0.25, 0.5, 0.75}) {
      double mid = f.value((1.0 - t) * g0 + t * g1);
      double chord = (1.0 - t) * f0 + t * f1;
      if (!(mid > chord + 1e-15 * (1.0 + std::abs(chord)))) return "f is not strictly concave between sampled gradients";
    }
  }
  return "";
}

int nearest_chain_edge(const std::vector<double>& y1, double t) {
  auto it = std::upper_bound(y1.begin(), y1.end(), t);
  return std::clamp(static_cast<int>(it - y1.begin()) - 1, 0, static_cast<int>(y1.size()) - 2);
}

}  // namespace

double ProfileW::width_at(double t) const {
  if (y1.size() < 2 || t <= x_minus || t >= x_plus) return 0.0;
  return width[nearest_chain_edge(y1, t)];
}

QuadCoeffs QuadraticFit::resolve(double a4) const {
  QuadCoeffs q;
  q.a4 = a4;
  q.a3 = a4 - p1 - 2.0 * p2;
  q.c1 = q.a3 - p1;
  q.c0 = p0 - 0.5 * q.c1;
  return q;
}

StretchSite prepare_site(const GridFn& u, const PressureModel& f, const Vec2& check, double eps,
                         const SiteOptions& opt) {
  if (!(eps > 0.0) || !std::isfinite(eps)) throw PreconditionError("tolerance eps must be positive");
  const Grid& g = u.grid();
  const double h = g.h();
  StretchSite site;
  site.check = check;
  site.eps = eps;
  if (!g.domain().contains(check)) throw PreconditionError("check point lies outside the domain");
  site.node = g.nearest_node(check);
  if (g.is_boundary(site.node)) throw PreconditionError("check point is on the boundary");
  site.anchor = g.node(site.node);
  site.u0 = u[site.node];

  NodeCone cone = node_cone(u, site.node);
  if (!u.surface().on_hull()[site.node] || !cone.extreme) {
    throw PreconditionError("hypothesis (ii) failed: not an extreme point of the epigraph");
  }
  const Vec2 grad = cone.mean_grad;
  HessianClass cls;
  try {
    cls = classify_hessian(f, grad, opt.hessian_tol);
  } catch (const NonSmoothError&) {
    throw PreconditionError("hypothesis (iii) failed: f is not smooth at the gradient");
  }
  if (cls != HessianClass::neg) throw PreconditionError("hypothesis (iii) failed: no negative eigenvalue");
  Mat2 hs = f.hessian(grad);
  Eigen::SelfAdjointEigenSolver<Mat2> es(0.5 * (hs + hs.transpose()));
  Vec2 e1 = es.eigenvectors().col(0);
  if (e1.x() < 0.0 || (e1.x() == 0.0 && e1.y() < 0.0)) e1 = -e1;
  site.rotation.col(0) = e1;
  site.rotation.col(1) = Vec2(-e1.y(), e1.x());
  site.shear = site.rotation.col(1).dot(grad);

  const double sd = g.domain().signed_distance(site.anchor);
  double r = opt.radius.value_or(0.25 * sd);
  if (opt.radius && 2.0 * r >= sd) throw PreconditionError("concavity radius too large for the domain");
  std::string why;
  for (; r >= 2.0 * h; r *= 0.5) {
    why = radius_failure(u, f, site, r, opt);
    if (why.empty() || opt.radius) break;
  }
  if (!why.empty()) {
    if (opt.radius) throw PreconditionError("condition (beta) failed: " + why);
    throw ResolutionError("no concavity radius above grid resolution: " + why);
  }
  if (r < 2.0 * h) throw ResolutionError("no concavity radius above grid resolution");
  site.radius = r;
  site.window = 2.0 * r;

  site.z0 = opt.z0.value_or(site.u0 - 0.5 * eps);
  if (!(site.z0 > site.u0 - eps && site.z0 < site.u0)) {
    throw PreconditionError("depth z0 must satisfy u(x0) - eps < z0 < u(x0)");
  }

  auto family_ok_outside = [&](double s) {
    GridFn us = family_at(u, site, s);
    return check_family(u, site, us).max_outside <= flat_tol(u);
  };

  // Without an override delta is halved until I stays below the sheared graph
  // within eps; a failing outside check then shrinks delta and raises z0.
  if (opt.delta) {
    site.delta = *opt.delta;
    if (!(site.delta > 0.0) || site.delta >= site.window) {
      throw PreconditionError("segment half-width must lie in (0, window)");
    }
    auto [lo, hi] = sheared_range_under(u, site, site.delta);
    if (!(lo > site.z0)) throw ValidityError("segment I is not strictly below the graph");
    if (!(hi - site.z0 < eps)) {
      site.notes.push_back("explicit delta exceeds the eps bound at s = 1; the valid range is s <= s_max");
    }
    set_segment(site);
    if (!family_ok_outside(1.0)) throw ValidityError("support planes from I reach outside the working set");
  } else {
    bool found = false;
    for (int attempt = 0; attempt < 12 && !found; ++attempt) {
      for (site.delta = 0.5 * r; site.delta >= 0.5 * h; site.delta *= 0.5) {
        auto [lo, hi] = sheared_range_under(u, site, site.delta);
        if (lo > site.z0 && hi - site.z0 < eps) break;
      }
      if (site.delta < 0.5 * h) throw ResolutionError("no segment half-width above grid resolution");
      set_segment(site);
      found = family_ok_outside(1.0);
      if (!found && !opt.z0) {
        site.z0 = site.u0 - 0.5 * (site.u0 - site.z0);
      } else if (!found) {
        break;
      }
    }
    if (!found) throw ValidityError("support planes from I reach outside the working set");
  }

  site.s_min = 0.0;
  site.s_max = 1.0;
  if (!check_family(u, site, family_at(u, site, 1.0)).ok) {
    double lo = 0.0, hi = 1.0;
    for (int it = 0; it < 7; ++it) {
      double mid = 0.5 * (lo + hi);
      (check_family(u, site, family_at(u, site, mid)).ok ? lo : hi) = mid;
    }
    if (lo == 0.0) throw ValidityError("no positive s keeps the family within eps");
    site.s_max = lo;
  }
  for (int k = 1; k <= 20; ++k) {
    double s = -std::ldexp(1.0, -k);
    if (check_family(u, site, shrink_family_negative(u, site.a, site.b, s)).ok) {
      site.s_min = s;
      break;
    }
  }
  if (site.s_min == 0.0) site.notes.push_back("no valid negative s found down to -2^-20");
  return site;
}

ProfileW profile_w(const GridFn& u, const StretchSite& site) {
  std::vector<Vec3> pts = site_points(u, site);
  pts.resize(u.size());
  std::vector<Vec2> proj;
  proj.reserve(pts.size());
  for (const Vec3& p : pts) proj.emplace_back(p.x(), p.z());
  const double diam = u.grid().domain().diameter();
  std::vector<int> chain = lower_chain_2d(proj, 1e-12 * diam, false);
  ProfileW w;
  for (int i : chain) {
    w.y1.push_back(proj[i].x());
    w.w.push_back(proj[i].y());
  }
  const double tiny = 1e-12 * diam;
  int il = -1, ir = -1;
  double best_l = -INFINITY, best_r = INFINITY;
  for (int k = 0; k < static_cast<int>(w.y1.size()); ++k) {
    double t = w.y1[k];
    if (std::abs(t) <= tiny) continue;
    double sl = (w.w[k] - site.z0) / t;
    double tie = 1e-12 * (1.0 + std::abs(sl));
    if (t < 0.0) {
      // ties go to the innermost point
      if (il < 0 || sl >= best_l - tie) {
        best_l = std::max(best_l, sl);
        il = k;
      }
    } else if (ir < 0 || sl < best_r - tie) {
      best_r = sl;
      ir = k;
    }
  }
  if (il < 0 || ir < 0) throw ValidityError("support line from the nose misses the profile");
  w.xi_minus = best_l;
  w.xi_plus = best_r;
  w.x_minus = w.y1[il];
  w.x_plus = w.y1[ir];
  if (-w.x_minus >= site.window || w.x_plus >= site.window) {
    throw ValidityError("support line touches the boundary of the working set");
  }

  const double tol = flat_tol(u);
  auto contact = [&](double slope, double base) {
    std::vector<Vec2> face;
    double dmin = INFINITY;
    for (const Vec3& p : pts) dmin = std::min(dmin, p.z() - base - slope * p.x());
    for (const Vec3& p : pts) {
      if (p.z() - base - slope * p.x() <= dmin + tol) face.emplace_back(p.x(), p.y());
    }
    return face;
  };
  auto half_extent = [](const std::vector<Vec2>& face) {
    double lo = INFINITY, hi = -INFINITY;
    for (const Vec2& p : face) {
      lo = std::min(lo, p.y());
      hi = std::max(hi, p.y());
    }
    return 0.5 * (hi - lo);
  };
  w.a_minus = half_extent(contact(w.xi_minus, site.z0));
  w.a_plus = half_extent(contact(w.xi_plus, site.z0));
  w.width.assign(w.y1.size() - 1, 0.0);
  for (int k = il; k < ir; ++k) {
    std::vector<Vec2> face = contact(w.slope(k), 0.0);
    if (face.size() < 3) continue;
    std::vector<int> hull = convex_hull_2d(face, 1e-12 * diam);
    std::vector<Vec2> poly;
    for (int i : hull) poly.push_back(face[i]);
    w.width[k] = poly.size() < 3 ? 0.0 : polygon_area(poly) / (w.y1[k + 1] - w.y1[k]);
  }
  return w;
}

GridFn family_at(const GridFn& u, const StretchSite& site, double s) {
  if (!std::isfinite(s) || s > 1.0) throw RangeError("family parameter must satisfy s <= 1");
  if (s < site.s_min) throw ValidityError("s lies below the validated s0");
  if (s == 0.0) return u;
  if (s < 0.0) return shrink_family_negative(u, site.a, site.b, s);
  LowerSurface surf = blended_surface(u, site, s);
  std::vector<double> values(u.size());
  kernels::plane_max(surf.index(), u.grid().nodes(), values);
  return GridFn(u.grid_ptr(), std::move(values), u.height_cap());
}

FamilyCheck check_family(const GridFn& u, const StretchSite& site, const GridFn& us) {
  if (us.size() != u.size()) throw PreconditionError("family member lives on a different grid");
  FamilyCheck c;
  const Grid& g = u.grid();
  for (int k = 0; k < g.size(); ++k) {
    double d = std::abs(us[k] - u[k]);
    c.max_dev = std::max(c.max_dev, d);
    if ((g.node(k) - site.anchor).norm() >= site.window) c.max_outside = std::max(c.max_outside, d);
  }
  c.ok = c.max_outside <= flat_tol(u) && c.max_dev < site.eps;
  return c;
}

double family_resistance(const GridFn& u, const StretchSite& site, const PressureModel& f, double s) {
  if (!std::isfinite(s) || s > 1.0) throw RangeError("family parameter must satisfy s <= 1");
  if (s < site.s_min) throw ValidityError("s lies below the validated s0");
  if (s == 0.0) return eval_F(u, f);
  if (s < 0.0) {
    // C cut by its expansions about A and B
    PolyBody c = epigraph_body(u);
    const double k = 1.0 - s;
    const double cap = u.height_cap();
    Vec3 inside(site.anchor.x(), site.anchor.y(), 0.75 * cap + 0.25 * site.u0);
    for (const Vec3& p : {site.a, site.b}) {
      Vec3 q = p + (inside - p) / k;
      if (!(u.eval(q.head<2>()) < q.z() - flat_tol(u))) {
        throw DegeneracyError("no common interior point for the negative-side body");
      }
    }
    PolyBody cut = intersect(c, homothety(c, k, site.a), inside);
    cut = intersect(cut, homothety(c, k, site.b), inside);
    return eval_F_body(cut, f) + boundary_sliver_resistance(u, f);
  }
  LowerSurface surf = blended_surface(u, site, s);
  std::vector<Vec2> grads;
  std::vector<double> areas;
  for (const auto& t : surf.triangles()) {
    grads.push_back(t.grad);
    areas.push_back(t.area);
  }
  return kernels::facet_sum(grads, areas, f) + boundary_sliver_resistance(u, f);
}

std::vector<std::pair<double, double>> sweep_resistance(const GridFn& u, const StretchSite& site,
                                                        const PressureModel& f, const std::vector<double>& s_values) {
  std::vector<std::pair<double, double>> out;
  for (double s : s_values) out.emplace_back(s, family_resistance(u, site, f, s));
  return out;
}

QuadraticFit fit_quadratic(const std::vector<std::pair<double, double>>& samples) {
  if (samples.size() < 4) throw FitError("quadratic fit needs at least four samples");
  std::vector<double> distinct;
  for (const auto& [s, F] : samples) {
    if (!std::isfinite(s) || !std::isfinite(F)) throw FitError("non-finite sample");
    if (s < 0.0 || s > 1.0) throw FitError("fit samples must lie in [0, 1]");
    distinct.push_back(s);
  }
  std::sort(distinct.begin(), distinct.end());
  distinct.erase(std::unique(distinct.begin(), distinct.end()), distinct.end());
  if (distinct.size() < 3) throw FitError("quadratic fit needs three distinct s values");
  Eigen::MatrixXd a(samples.size(), 3);
  Eigen::VectorXd y(samples.size());
  for (std::size_t i = 0; i < samples.size(); ++i) {
    double s = samples[i].first;
    a.row(i) << 1.0, s, s * s;
    y[i] = samples[i].second;
  }
  Eigen::Vector3d p = a.colPivHouseholderQr().solve(y);
  QuadraticFit fit;
  fit.p0 = p[0];
  fit.p1 = p[1];
  fit.p2 = p[2];
  fit.samples = static_cast<int>(samples.size());
  double ss = 0.0;
  for (std::size_t i = 0; i < samples.size(); ++i) {
    double r = std::abs((a.row(i) * p)(0) - y[i]);
    fit.max_residual = std::max(fit.max_residual, r);
    ss += r * r;
  }
  fit.rms_residual = std::sqrt(ss / samples.size());
  return fit;
}

AnalyticCoeffs analytic_coeffs(const GridFn& u, const StretchSite& site, const PressureModel& f) {
  ProfileW pw = profile_w(u, site);
  AnalyticCoeffs out;
  QuadCoeffs& q = out.q;
  auto f1 = [&](double xi) { return site.f_site(f, Vec2(xi, 0.0)); };
  const double d = site.delta;
  for (std::size_t k = 0; k + 1 < pw.y1.size(); ++k) {
    if (pw.y1[k] < pw.x_minus || pw.y1[k + 1] > pw.x_plus) continue;
    double dy = pw.y1[k + 1] - pw.y1[k];
    double fk = f1(pw.slope(static_cast<int>(k)));
    q.a3 += 2.0 * d * fk * dy;
    q.b3 += 2.0 * fk * pw.width[k] * dy;
  }
  q.a4 = 2.0 * d * (f1(pw.xi_minus) * (0.0 - pw.x_minus) + f1(pw.xi_plus) * (pw.x_plus - 0.0));
  q.b4 = f1(pw.xi_minus) * (0.0 - pw.x_minus) * pw.a_minus + f1(pw.xi_plus) * pw.x_plus * pw.a_plus;

  const int nprobe = 64;
  for (int k = 1; k < nprobe; ++k) {
    double step = (pw.xi_plus - pw.xi_minus) / nprobe;
    double x = pw.xi_minus + k * step;
    if (!(f1(x) > 0.5 * (f1(x - step) + f1(x + step)))) {
      out.warnings.push_back("f(., 0) is not strictly concave on [xi-, xi+]");
      break;
    }
  }

  std::vector<Vec3> pts = site_points(u, site);
  PolyBody c = PolyBody::from_points(pts);
  const Vec3 A = site_a(site), B = site_b(site);
  PolyBody ct = conv_with_segment(c, Segment3(A, B));
  const double t = 1e-9 * c.extent();

  // classes 0, 1A, 1B, 2A, 2B, 3, 4
  out.class_counts.assign(7, 0);
  std::array<double, 7> sum{};
  int near_ties = 0;
  for (const Facet& fc : c.facets()) {
    double hc = fc.offset, ha = A.dot(fc.normal), hb = B.dot(fc.normal);
    double m = std::max({hc, ha, hb});
    bool inc = hc >= m - t, ina = ha >= m - t, inb = hb >= m - t;
    for (double v : {hc, ha, hb}) {
      if (v < m - t && v >= m - 1e3 * t) ++near_ties;
    }
    int cls;
    if (inc && ina && inb) cls = 6;
    else if (inc && ina) cls = 3;
    else if (inc && inb) cls = 4;
    else if (inc) cls = 0;
    else if (ina && inb) cls = 5;
    else if (ina) cls = 1;
    else cls = 2;
    ++out.class_counts[cls];
    double gv = facet_g(site, f, fc);
    sum[cls] += gv;
    out.F_body += gv;
  }
  if (near_ties > 0) {
    out.warnings.push_back(std::to_string(near_ties) + " facet support values within 1e3 of the classification tolerance");
  }
  double f2c = sum[3] + sum[4];
  q.a0 = sum[0];
  q.a1 = 2.0 * (sum[1] + sum[2]);
  out.b3_facets = 2.0 * sum[5];

  double f2t = 0.0, f4t = 0.0;
  for (const Facet& fc : ct.facets()) {
    bool ina = std::abs(A.dot(fc.normal) - fc.offset) <= t;
    bool inb = std::abs(B.dot(fc.normal) - fc.offset) <= t;
    double gv = facet_g(site, f, fc);
    if (ina && inb) f4t += gv;
    else if (ina || inb) f2t += gv;
  }
  q.b2 = f2t;
  q.a2 = 2.0 * (f2t - f2c);
  out.a4_trapezoids = 2.0 * (f4t - q.b4);
  q.close();
  out.identity_residual = q.a0 + 0.5 * q.a1 + q.b2 - 0.5 * q.a2 + 0.5 * q.b3 - out.F_body;
  if (std::abs(q.b3 - out.b3_facets) > 1e-6 * std::max(1.0, out.F_body)) {
    out.warnings.push_back("b3 from the profile differs from the facets seen only from I");
  }
  return out;
}

Improvement improvement_step(const GridFn& u, const StretchSite& site, const PressureModel& f, double abs_tol) {
  Improvement out;
  out.F_before = eval_F(u, f);
  out.F_after = out.F_before;
  AnalyticCoeffs ac = analytic_coeffs(u, site, f);
  const double slope = ac.q.derivative_at_0();

  std::vector<double> primary, fallback;
  const int depth = 6;
  auto positive = [&](std::vector<double>& v) {
    for (int k = 0; k <= depth; ++k) v.push_back(site.s_max * std::ldexp(1.0, -k));
  };
  auto negative = [&](std::vector<double>& v) {
    if (site.s_min < 0.0) {
      for (int k = 0; k <= depth; ++k) v.push_back(site.s_min * std::ldexp(1.0, -k));
    }
  };
  auto near_one = [&](std::vector<double>& v) {
    for (int k = 4; k >= 1; --k) v.push_back(site.s_max * (1.0 - std::ldexp(1.0, -k)));
    v.push_back(site.s_max);
  };
  if (slope < -abs_tol) {
    positive(primary);
    near_one(fallback);
    negative(fallback);
  } else if (slope > abs_tol) {
    negative(primary);
    near_one(fallback);
    positive(fallback);
  } else {
    near_one(primary);
    positive(fallback);
    negative(fallback);
  }

  std::vector<double> seen;
  auto run = [&](const std::vector<double>& cands) {
    for (double s : cands) {
      if (s == 0.0 || std::find(seen.begin(), seen.end(), s) != seen.end()) continue;
      seen.push_back(s);
      GridFn us = family_at(u, site, s);
      if (!check_family(u, site, us).ok) continue;
      double F = eval_F(us, f);
      out.tried.emplace_back(s, F);
      if (F < out.F_after) {
        out.F_after = F;
        out.s = s;
        out.u = std::move(us);
      }
    }
    return out.F_before - out.F_after > abs_tol;
  };
  out.improved = run(primary) || run(fallback);
  if (!out.improved) {
    out.u.reset();
    out.s = 0.0;
    out.F_after = out.F_before;
    out.reason = out.tried.empty() ? "no sampled s gave a valid family member"
                                   : "no sampled s decreased the resistance by more than the tolerance";
  }
  return out;
}

}  // namespace leastres
