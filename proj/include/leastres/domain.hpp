#pragma once

#include <array>
#include <memory>
#include <vector>

#include "leastres/core.hpp"

namespace leastres {

struct Domain {
  enum class Kind { disk, polygon };

  Kind kind = Kind::disk;
  Vec2 center = Vec2::Zero();
  double radius = 1.0;
  std::vector<Vec2> vertices;  // counterclockwise, convex
  double h = 0.1;

  static Domain disk(const Vec2& center, double radius, double h);
  static Domain polygon(std::vector<Vec2> vertices, double h);
  static Domain rectangle(double x0, double x1, double y0, double y1, double h);

  // Positive inside, Euclidean distance to the boundary.
  double signed_distance(const Vec2& x) const;
  bool contains(const Vec2& x, double tol = 0.0) const { return signed_distance(x) >= -tol; }
  double diameter() const;
  double area() const;
  Vec2 bbox_min() const;
  Vec2 bbox_max() const;
  Vec2 centroid() const;
  // Area of [x0,x1] x [y0,y1] intersected with the domain.
  double rect_area(double x0, double x1, double y0, double y1) const;
  Domain with_step(double step) const;
};

// Area of a convex polygon clipped to an axis-aligned box (Sutherland-Hodgman).
double clip_area(const std::vector<Vec2>& poly, double x0, double x1, double y0, double y1);
double polygon_area(const std::vector<Vec2>& poly);

// Uniform lattice clipped to the domain plus grid-line/boundary intersections.
class Grid {
 public:
  struct Cell {
    int i = 0, j = 0;
    double area = 0.0;
    bool boundary = false;  // cut by the boundary or touching a boundary node
    Vec2 lo = Vec2::Zero();
    std::array<int, 4> corners{-1, -1, -1, -1};  // node ids, -1 when clipped away
  };

  explicit Grid(const Domain& domain);

  const Domain& domain() const { return domain_; }
  double h() const { return domain_.h; }
  int size() const { return static_cast<int>(nodes_.size()); }
  const std::vector<Vec2>& nodes() const { return nodes_; }
  const Vec2& node(int k) const { return nodes_[k]; }
  bool is_boundary(int k) const { return boundary_[k] != 0; }
  // lattice coordinates; -1 for nodes created on the boundary off-lattice
  int lattice_i(int k) const { return li_[k]; }
  int lattice_j(int k) const { return lj_[k]; }
  int node_at(int i, int j) const;
  int nx() const { return nx_; }
  int ny() const { return ny_; }
  Vec2 origin() const { return origin_; }
  Vec2 lattice_point(int i, int j) const { return origin_ + h() * Vec2(i, j); }

  const std::vector<Cell>& cells() const { return cells_; }
  int cell_at(int i, int j) const;
  int cell_of(const Vec2& x) const;
  // Boundary nodes ordered counterclockwise around the centroid.
  const std::vector<int>& boundary_cycle() const { return cycle_; }
  int nearest_node(const Vec2& x) const;

 private:
  int add_node(const Vec2& p, bool boundary, int i, int j);

  Domain domain_;
  Vec2 origin_;
  int nx_ = 0, ny_ = 0;
  std::vector<Vec2> nodes_;
  std::vector<char> boundary_;
  std::vector<int> li_, lj_;
  std::vector<int> lattice_;  // (nx+1)*(ny+1) -> node id
  std::vector<Cell> cells_;
  std::vector<int> cell_index_;  // nx*ny -> cell id
  std::vector<int> cycle_;
};

using GridPtr = std::shared_ptr<const Grid>;

inline GridPtr make_grid(const Domain& d) { return std::make_shared<const Grid>(d); }

}  // namespace leastres
