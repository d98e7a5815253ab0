#include <cmath>
#include <numbers>
#include <random>

#include "doctest.h"
#include "leastres/grid_fn.hpp"
#include "leastres/poly_body.hpp"

using namespace leastres;
using doctest::Approx;

namespace {

PolyBody box(const Vec3& lo, const Vec3& hi) {
  std::vector<Vec3> p;
  for (int i = 0; i < 8; ++i) p.emplace_back(i & 1 ? hi.x() : lo.x(), i & 2 ? hi.y() : lo.y(), i & 4 ? hi.z() : lo.z());
  return PolyBody::from_points(p);
}

PolyBody tetra() { return PolyBody::from_points(std::vector<Vec3>{{0, 0, 0}, {1, 0, 0}, {0, 1, 0}, {0, 0, 1}}); }

}  // namespace

TEST_CASE("domains") {
  Domain d = Domain::disk(Vec2(0.5, -0.5), 2.0, 0.25);
  CHECK(d.area() == Approx(4.0 * std::numbers::pi));
  CHECK(d.signed_distance(Vec2(0.5, -0.5)) == Approx(2.0));
  CHECK(d.signed_distance(Vec2(3.5, -0.5)) == Approx(-1.0));
  CHECK(d.diameter() == Approx(4.0));

  Domain r = Domain::rectangle(-1, 1, 0, 3, 0.5);
  CHECK(r.area() == Approx(6.0));
  CHECK(r.rect_area(0, 2, 2, 4) == Approx(1.0));
  CHECK(r.contains(Vec2(1, 3)));
  CHECK_FALSE(r.contains(Vec2(1.01, 3)));

  CHECK_THROWS_AS(Domain::disk(Vec2::Zero(), -1.0, 0.1), PreconditionError);
  CHECK_THROWS_AS(Domain::polygon({{0, 0}, {0, 1}, {1, 0}}, 0.1), PreconditionError);  // clockwise
  CHECK_THROWS_AS(make_grid(Domain::disk(Vec2::Zero(), 1.0, 1.0)), PreconditionError);
}

TEST_CASE("clip area") {
  std::vector<Vec2> tri{{0, 0}, {2, 0}, {0, 2}};
  CHECK(polygon_area(tri) == Approx(2.0));
  CHECK(clip_area(tri, 0, 1, 0, 1) == Approx(1.0));
  CHECK(clip_area(tri, 1, 2, 1, 2) == Approx(0.0));
  CHECK(clip_area(tri, 0.5, 1.5, 0, 1) == Approx(0.875));
}

TEST_CASE("grid cells cover the domain") {
  for (const Domain& d : {Domain::disk(Vec2::Zero(), 1.0, 0.1), Domain::rectangle(0, 1, 0, 2, 0.125),
                          Domain::polygon({{0, 0}, {1, 0}, {0.3, 0.8}}, 0.05)}) {
    Grid g(d);
    double area = 0.0;
    for (const auto& c : g.cells()) area += c.area;
    CHECK(area == Approx(d.area()).epsilon(1e-12));
    int boundary = 0;
    for (int k = 0; k < g.size(); ++k) {
      boundary += g.is_boundary(k);
      CHECK(d.contains(g.node(k), 1e-12));
    }
    CHECK(static_cast<int>(g.boundary_cycle().size()) == boundary);
    CHECK(g.nearest_node(g.node(g.size() / 2)) == g.size() / 2);
  }
}

TEST_CASE("polytope basics") {
  PolyBody c = box(Vec3(0, 0, 0), Vec3(1, 2, 3));
  CHECK(c.dimension() == 3);
  CHECK(c.vertices().size() == 8);
  CHECK(c.facets().size() == 6);
  CHECK(c.edges().size() == 12);
  CHECK(c.volume() == Approx(6.0));
  CHECK((c.centroid() - Vec3(0.5, 1, 1.5)).norm() < 1e-12);
  double area = 0.0;
  for (const auto& f : c.facets()) area += f.area;
  CHECK(area == Approx(22.0));

  SupportResult s = support_function(c, Vec3(0, 0, 1));
  CHECK(s.value == Approx(3.0));
  CHECK(s.face.size() == 4);
  CHECK(support_function(c, Vec3(1, 1, 1).normalized()).face.size() == 1);
}

TEST_CASE("Minkowski blend and homothety") {
  PolyBody a = box(Vec3(0, 0, 0), Vec3(1, 1, 1));
  PolyBody b = tetra();
  std::mt19937_64 rng(2);
  std::normal_distribution<double> N;
  for (double s : {0.0, 0.3, 1.0}) {
    PolyBody m = minkowski_blend(a, b, s);
    for (int i = 0; i < 20; ++i) {
      Vec3 n = Vec3(N(rng), N(rng), N(rng)).normalized();
      double want = (1 - s) * support_function(a, n).value + s * support_function(b, n).value;
      CHECK(support_function(m, n).value == Approx(want).epsilon(1e-12));
    }
  }
  CHECK(minkowski_blend(a, a, 0.5).volume() == Approx(1.0));
  CHECK_THROWS_AS(minkowski_blend(a, b, 1.5), RangeError);

  PolyBody h = homothety(a, 2.0, Vec3(1, 1, 1));
  CHECK(h.volume() == Approx(8.0));
  CHECK(support_function(h, Vec3(-1, 0, 0)).value == Approx(1.0));
  CHECK_THROWS_AS(homothety(a, 0.0, Vec3::Zero()), RangeError);
}

TEST_CASE("hull with a segment and intersection") {
  PolyBody a = box(Vec3(0, 0, 0), Vec3(1, 1, 1));
  PolyBody c = conv_with_segment(a, Segment3(Vec3(0.5, 0.5, -1), Vec3(0.5, 0.5, 2)));
  CHECK(c.vertices().size() == 10);
  CHECK(c.volume() == Approx(1.0 + 2.0 / 3.0));
  CHECK_THROWS_AS(Segment3(Vec3::Zero(), Vec3::Zero()), DegeneracyError);

  PolyBody b = box(Vec3(0.5, 0.5, 0.5), Vec3(2, 2, 2));
  PolyBody i = intersect(a, b);
  CHECK(i.volume() == Approx(0.125));
  CHECK_THROWS_AS(intersect(a, box(Vec3(3, 3, 3), Vec3(4, 4, 4))), DegeneracyError);
}

TEST_CASE("lower surface of a paraboloid sample") {
  std::vector<Vec2> xy;
  std::vector<double> z;
  for (int i = -8; i <= 8; ++i) {
    for (int j = -8; j <= 8; ++j) {
      xy.emplace_back(i / 8.0, j / 8.0);
      z.push_back(xy.back().squaredNorm());
    }
  }
  xy.emplace_back(0.05, 0.05);
  z.push_back(1.0);  // above the surface, not on the hull
  LowerSurface s(xy, z, 0.125);
  CHECK_FALSE(s.on_hull().back());
  int on = 0;
  for (char c : s.on_hull()) on += c;
  CHECK(on == 17 * 17);
  double area = 0.0;
  for (const auto& t : s.triangles()) area += t.area;
  CHECK(area == Approx(4.0));
  CHECK(s.value(Vec2(0, 0)) == Approx(0.0));
  CHECK(s.value(Vec2(1.0 / 16, 0)) == Approx(1.0 / 128));
  CHECK(s.gradient_at(Vec2(0.3, -0.3)).norm() == Approx(0.6 * std::sqrt(2.0)).epsilon(0.15));
}

TEST_CASE("grid functions and the convex envelope") {
  GridPtr g = make_grid(Domain::disk(Vec2::Zero(), 1.0, 0.125));
  std::vector<double> v;
  for (const Vec2& p : g->nodes()) v.push_back(std::min(1.0, p.squaredNorm()));
  GridFn u(g, v, 1.0);
  CHECK(u.convexity_defect() < 1e-12);

  SUBCASE("a dent is removed by the envelope") {
    std::vector<double> w = v;
    int k = g->nearest_node(Vec2(0.5, 0));
    w[k] += 0.2;
    GridFn bad(g, w, 1.0);
    CHECK(bad.convexity_defect() > 0.1);
    GridFn env = lower_convex_envelope(bad);
    CHECK(env.convexity_defect() < 1e-12);
    for (int i = 0; i < env.size(); ++i) CHECK(env[i] <= w[i] + 1e-12);
    CHECK(env[k] < w[k] - 0.1);
  }
  SUBCASE("class membership") {
    std::vector<double> w(v.size(), 1.0);
    for (int i = 0; i < g->size(); ++i) {
      if (!g->is_boundary(i)) w[i] = std::max(0.0, g->node(i).norm() - 0.2);
    }
    CHECK(GridFn(g, w, 1.0).in_class(1e-9));
    w[g->boundary_cycle()[0]] = 0.9;
    CHECK_FALSE(GridFn(g, w, 1.0).in_class(1e-9));
  }
  SUBCASE("epigraph round trip") {
    PolyBody c = epigraph_body(u);
    GridFn back = body_to_fn(c, g, 1.0);
    for (int i = 0; i < u.size(); ++i) CHECK(back[i] == Approx(u[i]).epsilon(1e-9));
  }
}

TEST_CASE("singular and extreme nodes") {
  GridPtr g = make_grid(Domain::rectangle(-1, 1, -1, 1, 0.125));
  SUBCASE("pyramid") {
    std::vector<double> v;
    for (const Vec2& p : g->nodes()) v.push_back(std::max(std::abs(p.x()), std::abs(p.y())));
    GridFn u(g, v, 1.0);
    auto sing = singular_points(u, 0.1);
    for (int k : sing) {
      const Vec2& p = g->node(k);
      CHECK(std::abs(std::abs(p.x()) - std::abs(p.y())) < 1e-12);
    }
    CHECK(std::ranges::count(extreme_nodes(u), g->nearest_node(Vec2::Zero())) == 1);
    NodeCone apex = node_cone(u, g->nearest_node(Vec2::Zero()));
    CHECK(apex.planes == 4);
    CHECK(apex.extreme);
    CHECK(apex.width == Approx(std::numbers::pi / 2));
  }
  SUBCASE("plane") {
    std::vector<double> v;
    for (const Vec2& p : g->nodes()) v.push_back(0.3 * p.x() + 0.5);
    GridFn u(g, v, 1.0);
    CHECK(extreme_nodes(u).empty());
    for (int k : singular_points(u, 0.1)) CHECK(g->is_boundary(k));
  }
}
