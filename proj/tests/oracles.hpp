#pragma once

#include <functional>
#include <vector>

// Reference computations that share no code with the library.
namespace oracle {

struct RadialDP {
  double resistance = 0.0;
  double height = 0.0;      // rise of the chosen profile, <= M
  double nose_radius = 0.0; // end of the zero-slope ring
  double lambda = 0.0;
};

// Radial profiles with nondecreasing slopes, total rise at most M, over
// `radii` rings and `slopes` slope levels in [0, p_max]. The height budget is
// handled by a Lagrange multiplier found by bisection.
RadialDP radial_dp(double L, double M, const std::function<double(double)>& f, int radii = 200, int slopes = 200,
                   double p_max = 8.0);

// Adaptive Simpson on [a, b].
double integrate(const std::function<double(double)>& g, double a, double b, double tol = 1e-13);

// Root of g on [a, b] by bisection; g(a) and g(b) must differ in sign.
double bisect(const std::function<double(double)>& g, double a, double b, double tol = 1e-15);

// Tangent points from (0, z0) to the graph of w(x) = c x^2, z0 < 0.
double parabola_tangent(double c, double z0);

struct ToyClosedForm {
  double F0 = 0.0;     // F(u) on [-1, 1]
  double F1 = 0.0;     // F of the hull with the nose
  double slope = 0.0;  // F(OA0) + F(OB0) - F(A0B0)
};

// u = x^2 on [-1, 1], nose (0, z0), f(p) = 1 / (1 + p^2).
ToyClosedForm toy_parabola(double z0);

struct NoseCoeffs {
  double a3 = 0.0;
  double a4 = 0.0;
};

// Quadratic-law coefficients at the vertex of u = c1 x1^2 + c2 x2^2 with the
// nose at depth z0 and half-width delta, newton f, by quadrature over the
// column-minimum profile w(x1) = c1 x1^2.
NoseCoeffs paraboloid_coeffs(double c1, double z0, double delta);

// det of the Newton Hessian at (t, 0), closed form.
double newton_det_hessian(double t);

}  // namespace oracle
