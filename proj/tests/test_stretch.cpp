#include <cmath>

#include "doctest.h"
#include "leastres/fixtures.hpp"
#include "leastres/resistance.hpp"
#include "leastres/stretch.hpp"

using namespace leastres;
using doctest::Approx;

namespace {

struct Paraboloid {
  GridFn u = fixtures::paraboloid(1.0 / 64);
  PressureModel f = PressureModel::newton();
  StretchSite site = prepare_site(u, f, Vec2::Zero(), fixtures::kParaboloidEps, fixtures::paraboloid_site());
};

const Paraboloid& paraboloid() {
  static const Paraboloid p;
  return p;
}

}  // namespace

TEST_CASE("site at the paraboloid vertex") {
  const auto& p = paraboloid();
  const StretchSite& s = p.site;
  CHECK(s.anchor.norm() == 0.0);
  CHECK(s.delta == Approx(fixtures::kParaboloidDelta));
  CHECK(s.z0 == Approx(-0.01));
  // I is along the stiff x2 direction: e1 is the soft axis
  CHECK(std::abs(s.rotation(0, 0)) == Approx(1.0));
  CHECK(s.s_min < 0.0);
  CHECK(s.s_max > 0.0);
  CHECK(s.s_max <= 1.0);
}

TEST_CASE("family validity") {
  const auto& p = paraboloid();
  for (double s : {p.site.s_min, 0.5 * p.site.s_min, 0.25 * p.site.s_max, p.site.s_max}) {
    GridFn us = family_at(p.u, p.site, s);
    FamilyCheck c = check_family(p.u, p.site, us);
    CHECK(c.ok);
    CHECK(c.max_outside == 0.0);
    CHECK(c.max_dev < p.site.eps);
    CHECK(us.convexity_defect() < 1e-9);
  }
  CHECK_THROWS_AS(family_at(p.u, p.site, 1.5), RangeError);
  CHECK_THROWS_AS(family_at(p.u, p.site, 2.0 * p.site.s_min), ValidityError);
}

TEST_CASE("profile of the column minimum") {
  const auto& p = paraboloid();
  ProfileW w = profile_w(p.u, p.site);
  // u = x1^2 + 10 x2^2: w(x1) = x1^2, tangents from (0, -0.01) touch at +-0.1
  CHECK(w.x_plus == Approx(0.1).epsilon(0.05));
  CHECK(w.x_minus == Approx(-0.1).epsilon(0.05));
  CHECK(w.xi_plus == Approx(0.2).epsilon(0.05));
  CHECK(w.xi_minus == Approx(-0.2).epsilon(0.05));
}

TEST_CASE("coefficients and the quadratic law") {
  const auto& p = paraboloid();
  AnalyticCoeffs ac = analytic_coeffs(p.u, p.site, p.f);
  CHECK(ac.q.a3 > ac.q.a4);
  CHECK(std::abs(ac.identity_residual) < 1e-12);
  int total = 0;
  for (int c : ac.class_counts) total += c;
  CHECK(total > 0);

  std::vector<double> s;
  for (int k = 0; k <= 6; ++k) s.push_back(p.site.s_max * k / 6);
  auto samples = sweep_resistance(p.u, p.site, p.f, s);
  CHECK(samples.front().second == Approx(eval_F(p.u, p.f)).epsilon(1e-9));
  QuadraticFit fit = fit_quadratic(samples);
  CHECK(fit.max_residual <= 1e-3 * samples.front().second);
  CHECK(fit.derivative_at_0() == Approx(ac.q.derivative_at_0()).epsilon(1e-6));
  QuadCoeffs q = fit.resolve(ac.q.a4);
  CHECK(q.a3 == Approx(ac.q.a3).epsilon(1e-6));
  CHECK(q.c1 == Approx(ac.q.c1).epsilon(1e-6));
}

TEST_CASE("fit preconditions") {
  CHECK_THROWS_AS(fit_quadratic({{0, 1}, {0.5, 1}, {1, 1}}), FitError);
  CHECK_THROWS_AS(fit_quadratic({{0, 1}, {0, 1}, {0.5, 1}, {0.5, 1}}), FitError);
  CHECK_THROWS_AS(fit_quadratic({{0, 1}, {0.5, 1}, {1, 1}, {1.5, 1}}), FitError);
  QuadraticFit f = fit_quadratic({{0, 1}, {0.25, 1.25 - 0.0625}, {0.5, 1.25}, {1, 1}});
  CHECK(f.p0 == Approx(1));
  CHECK(f.p1 == Approx(1));
  CHECK(f.p2 == Approx(-1));
}

TEST_CASE("improvement step") {
  const auto& p = paraboloid();
  Improvement imp = improvement_step(p.u, p.site, p.f);
  REQUIRE(imp.improved);
  CHECK(imp.F_after < imp.F_before);
  FamilyCheck c = check_family(p.u, p.site, *imp.u);
  CHECK(c.ok);
  CHECK(c.max_dev < p.site.eps);

  SUBCASE("a model affine on the gradient range leaves F unchanged") {
    PressureModel a = PressureModel::affine_plus(Vec2(0, 0.01), 1.0);
    Improvement none = improvement_step(p.u, p.site, a);
    CHECK_FALSE(none.improved);
    CHECK_FALSE(none.reason.empty());
    for (auto [s, F] : none.tried) CHECK(F == Approx(none.F_before).epsilon(1e-12));
  }
}

TEST_CASE("site hypotheses") {
  const auto& p = paraboloid();
  SUBCASE("convex f has no negative eigenvalue") {
    try {
      prepare_site(p.u, PressureModel::quadratic(), Vec2::Zero(), 0.02, fixtures::paraboloid_site());
      FAIL("expected a precondition error");
    } catch (const PreconditionError& e) {
      CHECK(std::string(e.what()).find("no negative eigenvalue") != std::string::npos);
    }
  }
  SUBCASE("a point on a flat facet is not extreme") {
    GridPtr g = make_grid(Domain::rectangle(-1, 1, -1, 1, 1.0 / 16));
    std::vector<double> v;
    for (const Vec2& x : g->nodes()) v.push_back(std::max(0.0, 2.0 * x.norm() - 1.0));
    GridFn flat(g, v, 2.0 * std::sqrt(2.0) - 1.0);
    try {
      prepare_site(flat, p.f, Vec2(0.1, 0.1), 0.02);
      FAIL("expected a precondition error");
    } catch (const PreconditionError& e) {
      CHECK(std::string(e.what()).find("not an extreme point") != std::string::npos);
    }
  }
  CHECK_THROWS_AS(prepare_site(p.u, p.f, Vec2(3, 0), 0.02), PreconditionError);
  CHECK_THROWS_AS(prepare_site(p.u, p.f, Vec2::Zero(), -1.0), PreconditionError);
}
