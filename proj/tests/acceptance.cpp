// Acceptance run: one PASS/FAIL line per criterion, then a summary.
//
//   acceptance [--only 1,4,7] [--known-red 9] [--mesh solution.json]
//
// Criteria listed in --known-red still print FAIL but do not change the exit
// status. --mesh skips the 2D solve and runs 9 and 10 on a saved solution.

#include <CLI11.hpp>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <numbers>
#include <optional>
#include <random>
#include <set>
#include <string>
#include <vector>

#include "leastres/fixtures.hpp"
#include "leastres/io.hpp"
#include "leastres/optimizer.hpp"
#include "leastres/radial.hpp"
#include "leastres/resistance.hpp"
#include "leastres/stretch.hpp"
#include "leastres/toy.hpp"
#include "leastres/verify.hpp"
#include "oracles.hpp"

using namespace leastres;

namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t0) { return std::chrono::duration<double>(Clock::now() - t0).count(); }

std::string fmt(const char* f, auto... args) {
  char buf[512];
  std::snprintf(buf, sizeof buf, f, args...);
  return buf;
}

struct Outcome {
  bool pass = false;
  std::string detail;
};

double rel(double a, double b) { return std::abs(a - b) / std::abs(b); }

// 1. F along the toy family is linear in s.
Outcome toy_linearity() {
  auto t0 = Clock::now();
  ToyFamily fam(ConvexFn1D::analytic("x^2", -1, 1), Vec2(0, -0.2));
  Pressure1D f = Pressure1D::newton1d();
  double F0 = resistance_1d(toy_family_at(fam, 0), f);
  double F1 = resistance_1d(toy_family_at(fam, 1), f);
  double worst = 0;
  for (int k = 0; k <= 10; ++k) {
    double s = k / 10.0;
    worst = std::max(worst, std::abs(resistance_1d(toy_family_at(fam, s), f) - (F0 + s * (F1 - F0))));
  }
  double dt = seconds_since(t0);
  oracle::ToyClosedForm cf = oracle::toy_parabola(-0.2);
  return {worst <= 1e-8 && dt < 1.0,
          fmt("max chord residual %.3g <= 1e-8, %.3f s < 1 s (F0 %.10f, F1 %.10f; closed form %.10f, %.10f)", worst,
              dt, F0, F1, cf.F0, cf.F1)};
}

// 2. Slope at s = 0 equals F(OA0) + F(OB0) - F(A0B0).
Outcome toy_derivative() {
  ToyFamily fam(ConvexFn1D::analytic("x^2", -1, 1), Vec2(0, -0.2));
  ToySlopes s = toy_slope_identity(fam, Pressure1D::newton1d());
  double two_sided = 0.5 * (s.left + s.right);
  double e_fit = std::abs(two_sided - s.analytic);
  double e_lr = std::abs(s.left - s.right);
  double closed = oracle::toy_parabola(-0.2).slope;
  return {e_fit <= 1e-6 && e_lr <= 1e-6,
          fmt("|numeric - analytic| %.3g <= 1e-6, |left - right| %.3g <= 1e-6 (analytic %.10f, continuum %.10f)",
              e_fit, e_lr, s.analytic, closed)};
}

std::vector<std::pair<std::string, PolyBody>> polyhedral_fixtures() {
  std::vector<std::pair<std::string, PolyBody>> out;
  auto add = [&](const std::string& name, const std::vector<Vec3>& pts) {
    out.emplace_back(name, PolyBody::from_points(pts));
  };
  std::vector<Vec3> cube;
  for (int k = 0; k < 8; ++k) cube.emplace_back(k & 1, (k >> 1) & 1, (k >> 2) & 1);
  add("cube", cube);
  add("tetrahedron", {{1, 1, 1}, {1, -1, -1}, {-1, 1, -1}, {-1, -1, 1}});
  add("octahedron", {{1, 0, 0}, {-1, 0, 0}, {0, 1, 0}, {0, -1, 0}, {0, 0, 1}, {0, 0, -1}});
  std::mt19937_64 rng(11);
  std::normal_distribution<double> N;
  std::vector<Vec3> cloud;
  for (int k = 0; k < 60; ++k) cloud.emplace_back(N(rng), 0.5 * N(rng), 2 + N(rng));
  add("random hull", cloud);
  GridPtr g = make_grid(Domain::disk(Vec2(0.3, -0.1), 1.0, 1.0 / 12));
  std::vector<double> v;
  for (int k = 0; k < g->size(); ++k) {
    Vec2 x = g->node(k) - Vec2(0.3, -0.1);
    v.push_back(g->is_boundary(k) ? 1.0 : std::min(1.0, x.squaredNorm() + 0.2 * std::abs(x.x())));
  }
  out.emplace_back("disk epigraph", epigraph_body(GridFn(g, v, 1.0)));
  return out;
}

// 3. F(r C) = r^2 F(C).
Outcome homothety_scaling() {
  PressureModel f = PressureModel::newton();
  double worst = 0;
  int n = 0;
  for (const auto& [name, c] : polyhedral_fixtures()) {
    double F = eval_F_body(c, f);
    for (double r : {0.5, 2.0}) {
      worst = std::max(worst, rel(eval_F_body(homothety(c, r, Vec3(0.2, -0.4, 0.7)), f), r * r * F));
      ++n;
    }
  }
  return {worst <= 1e-10 && n == 10, fmt("max relative error %.3g <= 1e-10 over %d fixture/ratio pairs", worst, n)};
}

struct NoseRun {
  GridFn u;
  PressureModel f = PressureModel::newton();
  StretchSite site;
  AnalyticCoeffs coeffs;
  double seconds = 0;
};

const NoseRun& paraboloid_128() {
  static const NoseRun run = [] {
    auto t0 = Clock::now();
    NoseRun r{fixtures::paraboloid(1.0 / 128)};
    r.site = prepare_site(r.u, r.f, Vec2::Zero(), fixtures::kParaboloidEps, fixtures::paraboloid_site());
    r.coeffs = analytic_coeffs(r.u, r.site, r.f);
    r.seconds = seconds_since(t0);
    return r;
  }();
  return run;
}

// 4. F(s) is quadratic with the right a3.
Outcome quadratic_law() {
  auto t0 = Clock::now();
  const NoseRun& p = paraboloid_128();
  std::vector<double> s;
  for (int k = 0; k <= 10; ++k) s.push_back(k / 10.0);
  auto samples = sweep_resistance(p.u, p.site, p.f, s);
  QuadraticFit fit = fit_quadratic(samples);
  double a3 = fit.resolve(p.coeffs.q.a4).a3;
  double F = samples.front().second;
  oracle::NoseCoeffs want = oracle::paraboloid_coeffs(1.0, -0.01, fixtures::kParaboloidDelta);
  double dt = p.seconds + seconds_since(t0);
  double ra = rel(a3, want.a3);
  return {fit.max_residual <= 1e-3 * F && ra <= 0.02 && dt < 60,
          fmt("fit residual %.3g <= %.3g, a3 %.7f vs %.7f off %.2f%% <= 2%%, %.1f s < 60 s", fit.max_residual,
              1e-3 * F, a3, want.a3, 100 * ra, dt)};
}

// 5. a3 > a4 on every valid site of the suite; paraboloid value.
Outcome strict_inequality() {
  const NoseRun& p = paraboloid_128();
  double d = p.coeffs.q.a3 - p.coeffs.q.a4;
  oracle::NoseCoeffs want = oracle::paraboloid_coeffs(1.0, -0.01, fixtures::kParaboloidDelta);
  double dw = want.a3 - want.a4;

  struct Case {
    const char* name;
    double c1, c2, h;
    Vec2 check;
    SiteOptions opt;
  };
  SiteOptions defaults;
  std::vector<Case> suite{
      {"x1^2 + 10 x2^2", 1, 10, 1.0 / 64, Vec2::Zero(), fixtures::paraboloid_site()},
      {"x1^2 + 10 x2^2, automatic delta", 1, 10, 1.0 / 64, Vec2::Zero(), defaults},
      {"2 x1^2 + 5 x2^2", 2, 5, 1.0 / 64, Vec2::Zero(), defaults},
      {"x1^2 + 4 x2^2", 1, 4, 1.0 / 64, Vec2::Zero(), defaults},
  };
  int valid = 1, positive = d > 0;
  double least = d;
  std::string skipped;
  for (const Case& c : suite) {
    GridPtr g = make_grid(Domain::rectangle(-1, 1, -1, 1, c.h));
    std::vector<double> v;
    for (const Vec2& x : g->nodes()) v.push_back(c.c1 * x.x() * x.x() + c.c2 * x.y() * x.y());
    GridFn u(g, v, c.c1 + c.c2);
    try {
      StretchSite site = prepare_site(u, p.f, c.check, fixtures::kParaboloidEps, c.opt);
      AnalyticCoeffs ac = analytic_coeffs(u, site, p.f);
      double di = ac.q.a3 - ac.q.a4;
      ++valid;
      positive += di > 0;
      least = std::min(least, di);
    } catch (const PreconditionError& e) {
      skipped += std::string(" [") + c.name + ": " + e.what() + "]";
    }
  }
  double rd = rel(d, dw);
  return {positive == valid && rd <= 0.05,
          fmt("a3 - a4 > 0 on %d/%d valid sites (least %.4g); paraboloid a3 - a4 %.5g vs %.5g off %.2f%% <= 5%%%s",
              positive, valid, least, d, dw, 100 * rd, skipped.c_str())};
}

// 6. improvement_step lowers F inside the eps band and window.
Outcome improvement() {
  const NoseRun& p = paraboloid_128();
  Improvement imp = improvement_step(p.u, p.site, p.f);
  if (!imp.improved) return {false, "no improvement: " + imp.reason};
  FamilyCheck c = check_family(p.u, p.site, *imp.u);
  double dF = imp.F_after - imp.F_before;
  return {dF < 0 && c.max_dev < p.site.eps && c.max_outside == 0.0,
          fmt("dF %.4g < 0 at s = %g, max |u~ - u| %.4g < eps %g, max outside U %.3g == 0", dF, imp.s, c.max_dev,
              p.site.eps, c.max_outside)};
}

// 7. det f'' vanishes on |xi| = 1/sqrt 3; analytic Hessian against differences.
Outcome degeneracy_circle() {
  PressureModel f = PressureModel::newton();
  const double want = 1 / std::sqrt(3.0);
  const Vec2 dir = Vec2(3, -1).normalized();
  double root = oracle::bisect([&](double t) { return f.hessian(t * dir).determinant(); }, 0.2, 1.0);
  double oracle_root = oracle::bisect(oracle::newton_det_hessian, 0.2, 1.0);

  std::mt19937_64 rng(7);
  std::uniform_real_distribution<double> U(-2, 2);
  auto grad = [](const Vec2& x) {
    double q = 1 + x.squaredNorm();
    return Vec2(-2 * x / (q * q));
  };
  double worst = 0;
  const double e = 1e-5;
  for (int k = 0; k < 100; ++k) {
    Vec2 x(U(rng), U(rng));
    Mat2 fd;
    fd.col(0) = (grad(x + Vec2(e, 0)) - grad(x - Vec2(e, 0))) / (2 * e);
    fd.col(1) = (grad(x + Vec2(0, e)) - grad(x - Vec2(0, e))) / (2 * e);
    worst = std::max(worst, (f.hessian(x) - fd).norm() / fd.norm());
  }
  double er = std::abs(root - want);
  return {er <= 1e-9 && std::abs(oracle_root - want) <= 1e-9 && worst <= 1e-6,
          fmt("root %.10f, |root - 1/sqrt 3| %.3g <= 1e-9, Hessian relative error %.3g <= 1e-6 at 100 points", root,
              er, worst)};
}

struct SolveRun {
  std::optional<GridFn> u;
  double F = 0, seconds = 0;
  std::string source;
};

// 8. 2D optimizer against the radial optimum.
Outcome radial_agreement(SolveRun& run) {
  PressureModel f = PressureModel::newton();
  auto t0 = Clock::now();
  SolveConfig cfg;
  cfg.grid = 96;
  cfg.budget = 200000;
  cfg.seed = 1;
  SolveResult r = solve_2d(Domain::disk(Vec2::Zero(), 1.0, 2.0 / 96), 1.0, f, cfg);
  run.seconds = seconds_since(t0);
  run.F = r.F;
  run.u = r.u;
  run.source = "fresh solve";

  RadialResult rad = solve_radial_1d(1.0, 1.0, f, 200);
  oracle::RadialDP dp = oracle::radial_dp(1.0, 1.0, [](double p) { return 1 / (1 + p * p); });
  double r2d = rel(r.F, rad.resistance);
  double rdp = rel(rad.resistance, dp.resistance);
  return {r2d <= 0.05 && rdp <= 0.005 && run.seconds < 600,
          fmt("F %.7f vs radial %.7f off %.2f%% <= 5%%, radial vs DP %.7f off %.3f%% <= 0.5%%, %.0f s < 600 s", r.F,
              rad.resistance, 100 * r2d, dp.resistance, 100 * rdp, run.seconds)};
}

// 9. Structural checks on the optimized body.
Outcome structure(const SolveRun& run) {
  VerificationReport r = verify_solution(*run.u, PressureModel::newton());
  const double h = r.h;
  std::string d = fmt(
      "[%s] boundary max |u - M| %.3g == 0 %s; gradient gap share %.4f >= 0.90 %s; extreme near singular %.4f >= "
      "0.95 %s (%d extreme, %d singular); developability %.4g <= 10h = %.4g %s",
      run.source.c_str(), r.boundary_check.value, r.boundary_check.pass ? "ok" : "FAILS", r.gradient_gap.check.value,
      r.gradient_gap.check.pass ? "ok" : "FAILS", r.extreme_vs_singular.value,
      r.extreme_vs_singular.pass ? "ok" : "FAILS", r.extreme_count, r.singular_count, r.developability.value,
      10 * h, r.developability.pass ? "ok" : "FAILS");
  return {r.boundary_check.pass && r.gradient_gap.check.pass && r.extreme_vs_singular.pass && r.developability.pass,
          d};
}

// 10. Body from the hull of its singular set; |x|^2 has none to use.
Outcome reconstruction(const SolveRun& run) {
  const double tol = VerifyTolerances{}.angle_tol;
  Reconstruction rec = reconstruct_from_singular(*run.u, tol);
  GridPtr g = make_grid(Domain::disk(Vec2::Zero(), 1.0, 2.0 / 96));
  std::vector<double> v;
  for (int k = 0; k < g->size(); ++k) v.push_back(g->is_boundary(k) ? 1.0 : g->node(k).squaredNorm());
  Reconstruction bowl = reconstruct_from_singular(GridFn(g, v, 1.0), tol);
  return {rec.possible && rec.check.pass && !bowl.possible,
          fmt("[%s] Hausdorff %.4g h <= 3h; |x|^2 flagged impossible: %s (%d interior singular nodes)",
              run.source.c_str(), rec.check.value, bowl.possible ? "no" : "yes", bowl.singular_interior)};
}

// 11. f = |xi|^2 drives u to the constant M.
Outcome quadratic_floor() {
  auto t0 = Clock::now();
  SolveResult r = solve_2d(Domain::disk(Vec2::Zero(), 1.0, 2.0 / SolveConfig{}.grid), 1.0, PressureModel::quadratic());
  return {r.F <= 1e-6, fmt("F %.3g <= 1e-6 with the default budget of %lld trials, %.0f s", r.F,
                           SolveConfig{}.budget, seconds_since(t0))};
}

const char* kTitles[] = {"",
                         "toy linearity",
                         "toy derivative identity",
                         "homothety scaling",
                         "quadratic law",
                         "strict inequality a3 > a4",
                         "improvement step",
                         "Newton degeneracy circle",
                         "radial oracle agreement",
                         "structural checks",
                         "reconstruction",
                         "quadratic-f floor"};

}  // namespace

int main(int argc, char** argv) {
  CLI::App app("acceptance criteria 1 to 11");
  std::vector<int> only, known_red;
  std::string mesh;
  app.add_option("--only", only, "criteria to run")->delimiter(',')->check(CLI::Range(1, 11));
  app.add_option("--known-red", known_red, "criteria whose failure does not fail the run")
      ->delimiter(',')
      ->check(CLI::Range(1, 11));
  app.add_option("--mesh", mesh, "saved solution for 9 and 10 instead of solving");
  CLI11_PARSE(app, argc, argv);

  std::set<int> run_set(only.begin(), only.end());
  if (run_set.empty()) {
    for (int k = 1; k <= 11; ++k) run_set.insert(k);
  }
  const std::set<int> red(known_red.begin(), known_red.end());
  if (!mesh.empty()) run_set.erase(8);

  SolveRun solution;
  auto need_solution = [&]() -> bool {
    if (solution.u) return true;
    if (mesh.empty()) {
      // 8 did not run: use the solution shipped with the tests
      mesh = std::string(LEASTRES_TEST_DATA) + "/newton_disk_96.json";
    }
    solution.u = io::load_mesh(mesh);
    solution.source = mesh;
    return true;
  };

  int failed = 0, red_failed = 0, passed = 0;
  for (int k : run_set) {
    Outcome o;
    try {
      switch (k) {
        case 1: o = toy_linearity(); break;
        case 2: o = toy_derivative(); break;
        case 3: o = homothety_scaling(); break;
        case 4: o = quadratic_law(); break;
        case 5: o = strict_inequality(); break;
        case 6: o = improvement(); break;
        case 7: o = degeneracy_circle(); break;
        case 8: o = radial_agreement(solution); break;
        case 9: need_solution(); o = structure(solution); break;
        case 10: need_solution(); o = reconstruction(solution); break;
        case 11: o = quadratic_floor(); break;
      }
    } catch (const std::exception& e) {
      o = {false, std::string("error: ") + e.what()};
    }
    const bool is_red = red.count(k) > 0;
    std::printf("%s %2d %s: %s%s\n", o.pass ? "PASS" : "FAIL", k, kTitles[k], o.detail.c_str(),
                !o.pass && is_red ? " (known red)" : "");
    std::fflush(stdout);
    if (o.pass) {
      ++passed;
    } else if (is_red) {
      ++red_failed;
    } else {
      ++failed;
    }
  }
  std::printf("summary: %d passed, %d failed, %d known red\n", passed, failed, red_failed);
  return failed == 0 ? 0 : 1;
}
