#include "leastres/pressure.hpp"

#include <cmath>
#include <limits>

namespace leastres {
namespace {

Mat2 fd_hessian(const PressureModel& f, const Vec2& xi) {
  const double step = 1e-4 * std::max(1.0, xi.norm());
  Mat2 h;
  for (int j = 0; j < 2; ++j) {
    Vec2 e = Vec2::Zero();
    e[j] = step;
    Vec2 g = (f.gradient(xi + e) - f.gradient(xi - e)) / (2.0 * step);
    h.col(j) = g;
  }
  return 0.5 * (h + h.transpose());
}

Vec2 fd_gradient(const PressureModel& f, const Vec2& xi) {
  const double step = 1e-6 * std::max(1.0, xi.norm());
  Vec2 g;
  for (int j = 0; j < 2; ++j) {
    Vec2 e = Vec2::Zero();
    e[j] = step;
    g[j] = (f.value(xi + e) - f.value(xi - e)) / (2.0 * step);
  }
  return g;
}

}  // namespace

PressureModel PressureModel::newton() {
  PressureModel m;
  m.kind = Kind::newton;
  m.wall_limit = 0.0;
  return m;
}

PressureModel PressureModel::quadratic() {
  PressureModel m;
  m.kind = Kind::quadratic;
  m.wall_limit = 0.0;
  return m;
}

PressureModel PressureModel::affine_plus(const Vec2& a, double b) {
  PressureModel m;
  m.kind = Kind::affine_plus;
  m.a = a;
  m.b = b;
  m.wall_limit = 0.0;
  return m;
}

PressureModel PressureModel::flat_disk(double r) {
  if (!(r >= 0.0)) throw PreconditionError("flat_disk radius must be nonnegative");
  PressureModel m;
  m.kind = Kind::flat_disk;
  m.r = r;
  m.wall_limit = 0.0;
  return m;
}

PressureModel PressureModel::custom(std::function<double(const Vec2&)> value, std::function<Vec2(const Vec2&)> gradient,
                                    std::function<Mat2(const Vec2&)> hessian, std::optional<double> wall_limit) {
  if (!value) throw PreconditionError("custom pressure model needs a value callable");
  PressureModel m;
  m.kind = Kind::custom;
  m.custom_value = std::move(value);
  m.custom_gradient = std::move(gradient);
  m.custom_hessian = std::move(hessian);
  m.wall_limit = wall_limit;
  return m;
}

std::string PressureModel::name() const {
  switch (kind) {
    case Kind::newton: return "newton";
    case Kind::quadratic: return "quadratic";
    case Kind::affine_plus: return "affine_plus";
    case Kind::flat_disk: return "flat_disk";
    case Kind::custom: return "custom";
  }
  return "unknown";
}

double PressureModel::value(const Vec2& xi) const {
  switch (kind) {
    case Kind::newton: return 1.0 / (1.0 + xi.squaredNorm());
    case Kind::quadratic: return xi.squaredNorm();
    case Kind::affine_plus: return std::max(0.0, -a.dot(xi) + b);
    case Kind::flat_disk: return std::max(0.0, xi.squaredNorm() - r * r);
    case Kind::custom: return custom_value(xi);
  }
  return 0.0;
}

Vec2 PressureModel::gradient(const Vec2& xi) const {
  switch (kind) {
    case Kind::newton: {
      double q = 1.0 + xi.squaredNorm();
      return -2.0 * xi / (q * q);
    }
    case Kind::quadratic: return 2.0 * xi;
    case Kind::affine_plus: return -a.dot(xi) + b > 0.0 ? Vec2(-a) : Vec2::Zero();
    case Kind::flat_disk: return xi.squaredNorm() > r * r ? Vec2(2.0 * xi) : Vec2::Zero();
    case Kind::custom: return custom_gradient ? custom_gradient(xi) : fd_gradient(*this, xi);
  }
  return Vec2::Zero();
}

Mat2 PressureModel::hessian(const Vec2& xi) const {
  switch (kind) {
    case Kind::newton: {
      double q = 1.0 + xi.squaredNorm();
      return -2.0 / (q * q) * Mat2::Identity() + 8.0 / (q * q * q) * xi * xi.transpose();
    }
    case Kind::quadratic: return 2.0 * Mat2::Identity();
    case Kind::affine_plus: return Mat2::Zero();
    case Kind::flat_disk: return xi.squaredNorm() > r * r ? Mat2(2.0 * Mat2::Identity()) : Mat2(Mat2::Zero());
    case Kind::custom: return custom_hessian ? custom_hessian(xi) : fd_hessian(*this, xi);
  }
  return Mat2::Zero();
}

double PressureModel::crease_distance(const Vec2& xi) const {
  switch (kind) {
    case Kind::affine_plus: {
      double n = a.norm();
      return n > 0.0 ? std::abs(-a.dot(xi) + b) / n : std::numeric_limits<double>::infinity();
    }
    case Kind::flat_disk: return std::abs(xi.norm() - r);
    default: return std::numeric_limits<double>::infinity();
  }
}

const char* to_string(HessianClass c) {
  switch (c) {
    case HessianClass::pos: return "POS";
    case HessianClass::neg: return "NEG";
    case HessianClass::degen: return "DEGEN";
  }
  return "?";
}

Pressure1D Pressure1D::newton1d() { return {[](double p) { return 1.0 / (1.0 + p * p); }, "newton1d"}; }

Pressure1D Pressure1D::square() { return {[](double p) { return p * p; }, "square"}; }

}  // namespace leastres
