#include <algorithm>
#include <random>

#include "doctest.h"
#include "leastres/hull.hpp"

using namespace leastres;

namespace {

// every input point on the inner side of every face
void check_contains(const Hull& h, const std::vector<Vec3>& pts) {
  for (const auto& t : h.triangles) {
    for (const Vec3& p : pts) CHECK(t.normal.dot(p) - t.offset <= 1e-9);
  }
}

// closed 2-manifold: each directed edge appears once and its reverse once
void check_closed(const Hull& h) {
  std::vector<std::pair<int, int>> edges;
  for (const auto& t : h.triangles) {
    for (int e = 0; e < 3; ++e) edges.emplace_back(t.v[e], t.v[(e + 1) % 3]);
  }
  std::sort(edges.begin(), edges.end());
  CHECK(std::adjacent_find(edges.begin(), edges.end()) == edges.end());
  for (auto [a, b] : edges) CHECK(std::binary_search(edges.begin(), edges.end(), std::make_pair(b, a)));
}

}  // namespace

TEST_CASE("cube with interior points") {
  std::vector<Vec3> pts;
  for (int i = 0; i < 8; ++i) pts.emplace_back(i & 1, (i >> 1) & 1, (i >> 2) & 1);
  std::mt19937_64 rng(3);
  std::uniform_real_distribution<double> U(0.1, 0.9);
  for (int i = 0; i < 50; ++i) pts.emplace_back(U(rng), U(rng), U(rng));
  Hull h = convex_hull(pts);
  CHECK(h.dimension == 3);
  CHECK(h.vertices == std::vector<int>{0, 1, 2, 3, 4, 5, 6, 7});
  CHECK(h.triangles.size() == 12);
  check_contains(h, pts);
  check_closed(h);
}

TEST_CASE("lattice with many coplanar and cospherical points") {
  std::vector<Vec3> pts;
  for (int i = 0; i < 5; ++i)
    for (int j = 0; j < 5; ++j)
      for (int k = 0; k < 5; ++k) pts.emplace_back(i, j, k);
  Hull h = convex_hull(pts);
  CHECK(h.dimension == 3);
  CHECK(h.vertices.size() == 8);
  check_contains(h, pts);
  check_closed(h);
}

TEST_CASE("random points on a sphere") {
  std::mt19937_64 rng(11);
  std::normal_distribution<double> N;
  std::vector<Vec3> pts;
  for (int i = 0; i < 400; ++i) pts.push_back(Vec3(N(rng), N(rng), N(rng)).normalized());
  Hull h = convex_hull(pts);
  CHECK(h.vertices.size() == 400);
  CHECK(h.triangles.size() == 2 * 400 - 4);
  check_contains(h, pts);
  check_closed(h);
}

TEST_CASE("lower-dimensional inputs") {
  SUBCASE("empty") { CHECK(convex_hull(std::vector<Vec3>{}).dimension == -1); }
  SUBCASE("single point repeated") {
    std::vector<Vec3> pts(4, Vec3(1, 2, 3));
    Hull h = convex_hull(pts);
    CHECK(h.dimension == 0);
    CHECK(h.vertices.size() == 1);
  }
  SUBCASE("collinear") {
    std::vector<Vec3> pts{{0, 0, 0}, {1, 1, 1}, {0.5, 0.5, 0.5}, {2, 2, 2}};
    Hull h = convex_hull(pts);
    CHECK(h.dimension == 1);
    CHECK(h.vertices == std::vector<int>{0, 3});
  }
  SUBCASE("planar square with a centre point") {
    std::vector<Vec3> pts{{0, 0, 1}, {1, 0, 1}, {1, 1, 1}, {0, 1, 1}, {0.5, 0.5, 1}, {0.5, 0, 1}};
    Hull h = convex_hull(pts);
    CHECK(h.dimension == 2);
    CHECK(h.polygon.size() == 4);
    CHECK(std::abs(std::abs(h.plane_normal.z()) - 1.0) < 1e-12);
  }
}

TEST_CASE("nearly coplanar points keep a consistent hull") {
  // a flat slab of points perturbed at 1e-13: predicates must stay consistent
  std::mt19937_64 rng(5);
  std::uniform_real_distribution<double> U(-1.0, 1.0);
  std::vector<Vec3> pts;
  for (int i = 0; i < 200; ++i) pts.emplace_back(U(rng), U(rng), 1e-13 * U(rng));
  pts.emplace_back(0, 0, 1);
  Hull h = convex_hull(pts);
  CHECK(h.dimension == 3);
  check_closed(h);
}

TEST_CASE("planar chains") {
  std::vector<Vec2> pts{{0, 1}, {1, 0}, {2, 0}, {3, 1}, {1.5, 2}, {1.5, 0}};
  SUBCASE("lower chain") {
    CHECK(lower_chain_2d(pts, 1e-12, false) == std::vector<int>{0, 1, 2, 3});
    CHECK(lower_chain_2d(pts, 1e-12, true) == std::vector<int>{0, 1, 5, 2, 3});
  }
  SUBCASE("hull") {
    std::vector<int> h = convex_hull_2d(pts, 1e-12);
    CHECK(h.size() == 5);
    std::vector<Vec2> poly;
    for (int k : h) poly.push_back(pts[k]);
    double area = 0.0;
    for (std::size_t k = 0; k < poly.size(); ++k) area += cross2(poly[k], poly[(k + 1) % poly.size()]);
    CHECK(area > 0.0);
  }
}
