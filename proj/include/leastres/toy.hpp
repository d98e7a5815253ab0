#pragma once

#include <functional>
#include <string>
#include <vector>

#include "leastres/core.hpp"
#include "leastres/pressure.hpp"

namespace leastres {

// Convex piecewise-linear function on [x.front(), x.back()].
class ConvexFn1D {
 public:
  ConvexFn1D(std::vector<double> x, std::vector<double> y, double tol = 1e-12);

  // Dense sampling of "x^2", "|x|" or "x^4" on [a, b].
  static ConvexFn1D analytic(const std::string& name, double a, double b, int segments = 4096);

  const std::vector<double>& x() const { return x_; }
  const std::vector<double>& y() const { return y_; }
  double a() const { return x_.front(); }
  double b() const { return x_.back(); }
  int segments() const { return static_cast<int>(x_.size()) - 1; }
  double slope(int seg) const { return (y_[seg + 1] - y_[seg]) / (x_[seg + 1] - x_[seg]); }
  double operator()(double t) const;

 private:
  std::vector<double> x_, y_;
};

// Derivative of a named analytic function, for quadrature checks.
std::function<double(double)> analytic_derivative(const std::string& name);

double resistance_1d(const ConvexFn1D& u, const Pressure1D& f);
// Resistance of a function given by its derivative on [a, b], adaptive Simpson.
double resistance_1d(const std::function<double(double)>& du, double a, double b, const Pressure1D& f,
                     double tol = 1e-10);

struct ToyFamily {
  ConvexFn1D u;
  Vec2 nose;      // O, strictly below the graph
  int left = 0;   // breakpoint index of the left tangency A0
  int right = 0;  // breakpoint index of the right tangency B0
  double slope_left = 0.0;
  double slope_right = 0.0;
  // working interval U = [lo, hi]; the family must leave u unchanged outside it.
  // Defaults to halfway between the tangency points and the interval ends.
  double window_lo = 0.0;
  double window_hi = 0.0;

  ToyFamily(ConvexFn1D u, const Vec2& nose);
  double xa() const { return u.x()[left]; }
  double xb() const { return u.x()[right]; }
};

// s in [0,1]: lower boundary of (1-s) epi u + s conv(epi u, O).
// s < 0: max of u and its expansion about O by the factor 1-s.
ConvexFn1D toy_family_at(const ToyFamily& fam, double s);

struct ToySlopes {
  double numeric = 0.0;   // least-squares slope of F over s = 0, 0.1, ..., 1
  double analytic = 0.0;  // F(OA0) + F(OB0) - F(A0B0)
  double right = 0.0;     // one-sided derivative at 0+
  double left = 0.0;      // one-sided derivative at 0-
};

ToySlopes toy_slope_identity(const ToyFamily& fam, const Pressure1D& f, double step = 1e-4);

}  // namespace leastres
