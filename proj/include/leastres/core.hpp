#pragma once

#include <Eigen/Dense>
#include <stdexcept>
#include <string>

namespace leastres {

using Vec2 = Eigen::Vector2d;
using Vec3 = Eigen::Vector3d;
using Mat2 = Eigen::Matrix2d;

// Exit code 2 family: hypotheses, ranges, validity of constructed families.
class PreconditionError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class DegeneracyError : public PreconditionError {
 public:
  using PreconditionError::PreconditionError;
};

class RangeError : public PreconditionError {
 public:
  using PreconditionError::PreconditionError;
};

class CoverageError : public PreconditionError {
 public:
  using PreconditionError::PreconditionError;
};

class NonSmoothError : public PreconditionError {
 public:
  using PreconditionError::PreconditionError;
};

class ValidityError : public PreconditionError {
 public:
  using PreconditionError::PreconditionError;
};

class ResolutionError : public PreconditionError {
 public:
  using PreconditionError::PreconditionError;
};

class FitError : public PreconditionError {
 public:
  using PreconditionError::PreconditionError;
};

// Exit code 3 family.
class IoError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

inline double cross2(const Vec2& a, const Vec2& b) { return a.x() * b.y() - a.y() * b.x(); }

}  // namespace leastres
