#pragma once

#include <array>
#include <span>
#include <vector>

#include "leastres/core.hpp"

namespace leastres {

// Planes z = g.x + c, each valid over a triangle footprint, bucketed in xy.
// Every plane is a support plane of one convex function, so the value at a
// point is the max over the planes registered near it.
class PlaneIndex {
 public:
  struct Entry {
    std::array<Vec2, 3> tri;
    Vec2 grad;
    double c;
  };

  PlaneIndex() = default;
  PlaneIndex(std::vector<Entry> entries, double cell_hint);

  const std::vector<Entry>& entries() const { return entries_; }
  bool empty() const { return entries_.empty(); }
  double value(const Vec2& x) const;
  int argmax(const Vec2& x) const;
  // Entries whose plane is within tol of the max at x.
  void active(const Vec2& x, double tol, std::vector<int>& out) const;
  std::span<const int> bucket(const Vec2& x) const;

 private:
  int bucket_id(const Vec2& x) const;

  std::vector<Entry> entries_;
  Vec2 lo_ = Vec2::Zero();
  double cell_ = 1.0;
  int bx_ = 1, by_ = 1;
  std::vector<int> start_;
  std::vector<int> items_;
};

// Lower hull of a point cloud {(x_k, z_k)} viewed as a piecewise-linear
// convex function over conv{x_k}.
class LowerSurface {
 public:
  struct Tri {
    std::array<int, 3> v;  // indices into the input, counterclockwise in xy
    Vec2 grad;
    double c = 0.0;
    double area = 0.0;  // projected area
  };

  LowerSurface(std::span<const Vec2> xy, std::span<const double> z, double cell_hint, double rel_tol = 1e-12);

  const std::vector<Tri>& triangles() const { return tris_; }
  const PlaneIndex& index() const { return index_; }
  double value(const Vec2& x) const { return index_.value(x); }
  int facet_at(const Vec2& x) const { return index_.argmax(x); }
  Vec2 gradient_at(const Vec2& x) const;
  // Points of the input that are hull vertices of the lower surface.
  const std::vector<char>& on_hull() const { return on_hull_; }
  int dropped_points() const { return dropped_; }

 private:
  std::vector<Tri> tris_;
  PlaneIndex index_;
  std::vector<char> on_hull_;
  int dropped_ = 0;
};

}  // namespace leastres
