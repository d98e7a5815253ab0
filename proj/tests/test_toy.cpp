#include <cmath>

#include "doctest.h"
#include "leastres/toy.hpp"

using namespace leastres;
using doctest::Approx;

TEST_CASE("convex breakpoint functions") {
  ConvexFn1D u({-1, 0, 2}, {1, 0, 2});
  CHECK(u(-0.5) == Approx(0.5));
  CHECK(u(1) == Approx(1));
  CHECK(u.segments() == 2);
  CHECK(u.slope(0) == Approx(-1));
  CHECK_THROWS_AS(ConvexFn1D({0, 1, 2}, {0, 1, 1}), PreconditionError);
  CHECK_THROWS_AS(ConvexFn1D({0, 0, 2}, {0, 1, 2}), PreconditionError);
  CHECK_THROWS_AS(u(3), RangeError);
  CHECK_THROWS_AS(ConvexFn1D::analytic("sin", 0, 1), PreconditionError);

  ConvexFn1D sq = ConvexFn1D::analytic("x^2", -1, 1, 256);
  CHECK(sq(0.5) == Approx(0.25).epsilon(1e-4));
}

TEST_CASE("1D resistance") {
  Pressure1D f = Pressure1D::newton1d();
  // u = x^2 on [-1, 1]: int 1 / (1 + 4 x^2) = arctan 2
  CHECK(resistance_1d(analytic_derivative("x^2"), -1, 1, f) == Approx(std::atan(2.0)).epsilon(1e-10));
  CHECK(resistance_1d(ConvexFn1D::analytic("x^2", -1, 1, 4096), f) == Approx(std::atan(2.0)).epsilon(1e-6));
  // |x|: slope one everywhere
  CHECK(resistance_1d(ConvexFn1D({-1, 0, 1}, {1, 0, 1}), f) == Approx(1.0));
  CHECK(resistance_1d(ConvexFn1D({-1, 0, 1}, {1, 0, 1}), Pressure1D::square()) == Approx(2.0));
}

TEST_CASE("toy family is linear in s") {
  ToyFamily fam(ConvexFn1D::analytic("x^2", -1, 1, 4096), Vec2(0, -0.2));
  // tangents from (0, -0.2) touch x^2 at |x| = sqrt 0.2
  CHECK(fam.xb() == Approx(std::sqrt(0.2)).epsilon(2e-3));
  CHECK(fam.xa() == Approx(-std::sqrt(0.2)).epsilon(2e-3));
  Pressure1D f = Pressure1D::newton1d();
  double F0 = resistance_1d(toy_family_at(fam, 0), f);
  double F1 = resistance_1d(toy_family_at(fam, 1), f);
  for (double s : {0.1, 0.35, 0.5, 0.9}) {
    CHECK(resistance_1d(toy_family_at(fam, s), f) == Approx(F0 + s * (F1 - F0)).epsilon(1e-12));
  }
  // s = 1 is the hull with the nose: two segments meeting at O
  ConvexFn1D top = toy_family_at(fam, 1);
  CHECK(top(0) == Approx(-0.2));
  CHECK_THROWS_AS(toy_family_at(fam, 1.5), RangeError);
}

TEST_CASE("toy slope identity") {
  for (const char* name : {"x^2", "x^4"}) {
    ToyFamily fam(ConvexFn1D::analytic(name, -1, 1, 4096), Vec2(0.1, -0.1));
    ToySlopes s = toy_slope_identity(fam, Pressure1D::newton1d());
    CHECK(s.numeric == Approx(s.analytic).epsilon(1e-9));
    CHECK(s.right == Approx(s.analytic).epsilon(1e-6));
    CHECK(s.left == Approx(s.right).epsilon(1e-4));
  }
}

TEST_CASE("toy preconditions") {
  ConvexFn1D u = ConvexFn1D::analytic("x^2", -1, 1, 256);
  CHECK_THROWS_AS(ToyFamily(u, Vec2(0, 0.5)), PreconditionError);
  CHECK_THROWS_AS(ToyFamily(u, Vec2(1.5, -0.1)), PreconditionError);
  CHECK_THROWS_AS(ToyFamily(u, Vec2(0.99, -5)), ValidityError);
}
