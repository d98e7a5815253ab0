#pragma once

#include <span>
#include <vector>

#include "leastres/domain.hpp"
#include "leastres/lower_surface.hpp"
#include "leastres/pressure.hpp"

// Data-parallel inner loops. Each OpenMP kernel has a plain serial twin used
// as the reference in tests and benchmarks. Reductions sum fixed-size blocks
// and then add the block partials in order, so results do not depend on the
// thread count.
namespace leastres::kernels {

constexpr int kBlock = 512;

void set_threads(int n);
int threads();

// sum_k f(grads[k]) * weights[k]
double facet_sum_serial(std::span<const Vec2> grads, std::span<const double> weights, const PressureModel& f);
double facet_sum(std::span<const Vec2> grads, std::span<const double> weights, const PressureModel& f);

// out[k] = max over indexed planes at pts[k]
void plane_max_serial(const PlaneIndex& planes, std::span<const Vec2> pts, std::span<double> out);
void plane_max(const PlaneIndex& planes, std::span<const Vec2> pts, std::span<double> out);

// out[k] = max(u[k], s z_P + (1-s) v((x_k - s x_P)/(1-s))) over anchors P, where
// v is the function carried by planes; arguments outside the domain are skipped.
void family_max_serial(const PlaneIndex& planes, const Domain& domain, std::span<const Vec2> nodes,
                       std::span<const double> u, std::span<const Vec3> anchors, double s, std::span<double> out);
void family_max(const PlaneIndex& planes, const Domain& domain, std::span<const Vec2> nodes, std::span<const double> u,
                std::span<const Vec3> anchors, double s, std::span<double> out);

// sum over triangles T and masked cells Q of f(grad T) * area(T cut by Q)
double clipped_sum_serial(std::span<const LowerSurface::Tri> tris, std::span<const Vec2> xy, const Grid& grid,
                          std::span<const char> cell_mask, const PressureModel& f);
double clipped_sum(std::span<const LowerSurface::Tri> tris, std::span<const Vec2> xy, const Grid& grid,
                   std::span<const char> cell_mask, const PressureModel& f);

}  // namespace leastres::kernels
