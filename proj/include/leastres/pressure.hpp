#pragma once

#include <functional>
#include <optional>
#include <string>

#include "leastres/core.hpp"

namespace leastres {

struct PressureModel {
  enum class Kind { newton, quadratic, affine_plus, flat_disk, custom };

  Kind kind = Kind::newton;
  Vec2 a = Vec2::Zero();  // affine_plus
  double b = 0.0;         // affine_plus
  double r = 0.0;         // flat_disk
  std::function<double(const Vec2&)> custom_value;
  std::function<Vec2(const Vec2&)> custom_gradient;
  std::function<Mat2(const Vec2&)> custom_hessian;
  // value of g on (numerically) vertical normals; required for custom models
  std::optional<double> wall_limit;

  static PressureModel newton();
  static PressureModel quadratic();
  static PressureModel affine_plus(const Vec2& a, double b);
  // f = (|xi|^2 - r^2)_+, zero on the disk |xi| <= r
  static PressureModel flat_disk(double r);
  static PressureModel custom(std::function<double(const Vec2&)> value, std::function<Vec2(const Vec2&)> gradient = {},
                              std::function<Mat2(const Vec2&)> hessian = {}, std::optional<double> wall_limit = {});

  std::string name() const;
  double value(const Vec2& xi) const;
  Vec2 gradient(const Vec2& xi) const;
  Mat2 hessian(const Vec2& xi) const;
  // distance (in gradient space) from xi to the crease set; +inf when smooth
  double crease_distance(const Vec2& xi) const;
  double operator()(const Vec2& xi) const { return value(xi); }
};

enum class HessianClass { pos, neg, degen };

const char* to_string(HessianClass c);

// Newton-type one-variable integrand for the toy problem.
struct Pressure1D {
  std::function<double(double)> f;
  std::string name;

  static Pressure1D newton1d();
  static Pressure1D square();
  double operator()(double p) const { return f(p); }
};

}  // namespace leastres
