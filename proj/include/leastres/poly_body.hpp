#pragma once

#include <array>
#include <optional>
#include <span>
#include <utility>
#include <vector>

#include "leastres/core.hpp"

namespace leastres {

struct Facet {
  Vec3 normal;             // outward, unit
  double offset = 0.0;     // normal.dot(x) on the facet plane
  std::vector<int> cycle;  // vertex ids, counterclockwise seen from outside
  double area = 0.0;
};

class PolyBody {
 public:
  PolyBody() = default;
  static PolyBody from_points(std::span<const Vec3> points, double rel_tol = 1e-12);

  const std::vector<Vec3>& vertices() const { return vertices_; }
  const std::vector<Facet>& facets() const { return facets_; }
  const std::vector<std::pair<int, int>>& edges() const { return edges_; }
  // Fan triangulation of the facets, used for OBJ export and plane lookups.
  std::vector<std::array<int, 3>> triangles() const;
  int dimension() const { return dimension_; }
  bool degenerate() const { return dimension_ < 3; }
  double extent() const;  // bounding-box diagonal
  double volume() const;
  Vec3 centroid() const;
  double tolerance() const { return tolerance_; }

 private:
  std::vector<Vec3> vertices_;
  std::vector<Facet> facets_;
  std::vector<std::pair<int, int>> edges_;
  int dimension_ = -1;
  double tolerance_ = 0.0;
};

struct Segment3 {
  Vec3 a;
  Vec3 b;
  bool allow_degenerate = false;

  Segment3(const Vec3& a_, const Vec3& b_, bool allow_degenerate_ = false);
  bool degenerate() const { return a == b; }
};

struct SupportResult {
  double value;
  std::vector<int> face;  // vertex ids within tolerance of the max
};

PolyBody minkowski_blend(const PolyBody& c, const PolyBody& d, double s);
PolyBody homothety(const PolyBody& c, double ratio, const Vec3& center);
PolyBody conv_with_segment(const PolyBody& c, const Segment3& seg);
SupportResult support_function(const PolyBody& c, const Vec3& n);
std::vector<Vec3> extreme_vertices(const PolyBody& c);
// Halfspace intersection through the polar dual. interior, when given, must
// lie strictly inside both bodies.
PolyBody intersect(const PolyBody& c, const PolyBody& d, std::optional<Vec3> interior = std::nullopt);

}  // namespace leastres
