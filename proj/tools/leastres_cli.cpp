// Command-line front end: toy, stretch, solve, verify, radial, export-obj.
// Exit codes: 0 ok, 2 precondition or validity failure, 3 I/O or schema error.

#include <CLI11.hpp>
#include <chrono>
#include <cstdio>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "leastres/fixtures.hpp"
#include "leastres/io.hpp"
#include "leastres/kernels.hpp"
#include "leastres/optimizer.hpp"
#include "leastres/radial.hpp"
#include "leastres/resistance.hpp"
#include "leastres/stretch.hpp"
#include "leastres/toy.hpp"
#include "leastres/verify.hpp"

using namespace leastres;
using io::Json;

namespace {

struct Globals {
  std::uint64_t seed = 1;
  int threads = 0;
  std::optional<double> tol_accept, tol_angle, tol_hessian, tol_boundary, tol_gap_fraction, tol_extreme_distance,
      tol_extreme_fraction, tol_extreme_depth, tol_developability, tol_hausdorff;
};

struct ModelArgs {
  std::string name = "newton";
  std::vector<double> a{0.0, 0.0};
  double b = 1.0;
  double r = 0.5;

  void add(CLI::App* app) {
    app->add_option("--f", name, "pressure model: newton, quadratic, affine_plus, flat_disk")->capture_default_str();
    app->add_option("--fa", a, "affine_plus vector a")->expected(2);
    app->add_option("--fb", b, "affine_plus offset b");
    app->add_option("--fr", r, "flat_disk radius");
  }

  PressureModel model() const {
    if (name == "newton") return PressureModel::newton();
    if (name == "quadratic") return PressureModel::quadratic();
    if (name == "affine_plus") return PressureModel::affine_plus(Vec2(a[0], a[1]), b);
    if (name == "flat_disk") return PressureModel::flat_disk(r);
    throw PreconditionError("unknown pressure model '" + name + "'");
  }
};

void emit(const std::string& path, const std::string& text) {
  if (path.empty() || path == "-") {
    std::cout << text;
  } else {
    io::write_file(path, text);
  }
}

VerifyTolerances tolerances(const Globals& g) {
  VerifyTolerances t;
  if (g.tol_boundary) t.boundary = *g.tol_boundary;
  if (g.tol_gap_fraction) t.gap_fraction = *g.tol_gap_fraction;
  if (g.tol_extreme_distance) t.extreme_distance = *g.tol_extreme_distance;
  if (g.tol_extreme_fraction) t.extreme_fraction = *g.tol_extreme_fraction;
  if (g.tol_extreme_depth) t.extreme_depth = *g.tol_extreme_depth;
  if (g.tol_developability) t.developability = *g.tol_developability;
  if (g.tol_hausdorff) t.hausdorff = *g.tol_hausdorff;
  if (g.tol_angle) t.angle_tol = *g.tol_angle;
  return t;
}

// "x^2", "|x|", "x^4", or inline breakpoints "x0:y0,x1:y1,..."
ConvexFn1D parse_fn(const std::string& text, double a, double b, int segments) {
  if (text.find(':') == std::string::npos) return ConvexFn1D::analytic(text, a, b, segments);
  std::vector<double> x, y;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    auto colon = item.find(':');
    if (colon == std::string::npos) throw PreconditionError("breakpoint '" + item + "' is not x:y");
    try {
      x.push_back(std::stod(item.substr(0, colon)));
      y.push_back(std::stod(item.substr(colon + 1)));
    } catch (const std::exception&) {
      throw PreconditionError("breakpoint '" + item + "' is not numeric");
    }
  }
  return ConvexFn1D(std::move(x), std::move(y));
}

Pressure1D pressure_1d(const std::string& name) {
  if (name == "newton1d") return Pressure1D::newton1d();
  if (name == "square") return Pressure1D::square();
  throw PreconditionError("unknown 1D pressure '" + name + "'");
}

Json coeffs_json(const QuadCoeffs& q) {
  return Json{{"a0", q.a0}, {"a1", q.a1}, {"a2", q.a2}, {"a3", q.a3}, {"a4", q.a4},
              {"b2", q.b2}, {"b3", q.b3}, {"b4", q.b4}, {"c0", q.c0}, {"c1", q.c1}};
}

Json vec_json(const Vec2& v) { return Json::array({v.x(), v.y()}); }
Json vec_json(const Vec3& v) { return Json::array({v.x(), v.y(), v.z()}); }

// --- toy -------------------------------------------------------------------

struct ToyArgs {
  std::string u = "x^2";
  std::vector<double> range{-1.0, 1.0};
  std::vector<double> o{0.0, -0.2};
  std::string f = "newton1d";
  int n = 11;
  int segments = 4096;
  std::string csv = "-", json = "-";
};

int run_toy(const ToyArgs& a) {
  if (a.n < 1) throw PreconditionError("need at least one sample");
  ToyFamily fam(parse_fn(a.u, a.range[0], a.range[1], a.segments), Vec2(a.o[0], a.o[1]));
  Pressure1D f = pressure_1d(a.f);
  auto F = [&](double s) { return resistance_1d(toy_family_at(fam, s), f); };
  const double F0 = F(0.0), F1 = F(1.0);
  std::vector<std::vector<double>> rows;
  double worst = 0.0;
  for (int k = 0; k < a.n; ++k) {
    double s = a.n == 1 ? 0.0 : static_cast<double>(k) / (a.n - 1);
    double v = k == 0 ? F0 : (k == a.n - 1 ? F1 : F(s));
    double chord = F0 + s * (F1 - F0);
    rows.push_back({s, v, chord, v - chord});
    worst = std::max(worst, std::abs(v - chord));
  }
  ToySlopes sl = toy_slope_identity(fam, f);
  Json j;
  j["u"] = a.u;
  j["range"] = a.range;
  j["nose"] = a.o;
  j["f"] = a.f;
  j["samples"] = a.n;
  j["F0"] = F0;
  j["F1"] = F1;
  j["max_residual"] = worst;
  j["tangency"] = Json{{"x_left", fam.xa()},
                       {"x_right", fam.xb()},
                       {"slope_left", fam.slope_left},
                       {"slope_right", fam.slope_right}};
  j["slopes"] = Json{{"numeric", sl.numeric}, {"analytic", sl.analytic}, {"right", sl.right}, {"left", sl.left}};
  emit(a.csv, io::csv({"s", "F", "chord", "residual"}, rows));
  emit(a.json, io::dump(j));
  return 0;
}

// --- stretch ---------------------------------------------------------------

struct StretchArgs {
  std::string mesh;
  std::string fixture;
  double h = 1.0 / 64.0;
  std::vector<double> x{0.0, 0.0};
  double eps = fixtures::kParaboloidEps;
  std::optional<double> delta, z0, radius;
  int samples = 11;
  bool improve = false;
  ModelArgs model;
  std::string out = "-";
};

int run_stretch(const StretchArgs& a, const Globals& g) {
  std::optional<GridFn> u;
  SiteOptions opt;
  if (!a.fixture.empty()) {
    if (a.fixture != "paraboloid") throw PreconditionError("unknown fixture '" + a.fixture + "'");
    u = fixtures::paraboloid(a.h);
    opt = fixtures::paraboloid_site();
  } else if (!a.mesh.empty()) {
    u = io::load_mesh(a.mesh);
  } else {
    throw PreconditionError("stretch needs --mesh or --fixture");
  }
  if (a.delta) opt.delta = a.delta;
  if (a.z0) opt.z0 = a.z0;
  if (a.radius) opt.radius = a.radius;
  if (g.tol_hessian) opt.hessian_tol = *g.tol_hessian;
  opt.seed = g.seed;
  if (a.samples < 4) throw PreconditionError("the quadratic fit needs at least four samples");
  const PressureModel f = a.model.model();

  StretchSite site = prepare_site(*u, f, Vec2(a.x[0], a.x[1]), a.eps, opt);
  AnalyticCoeffs ac = analytic_coeffs(*u, site, f);
  std::vector<double> s_values;
  for (int k = 0; k < a.samples; ++k) s_values.push_back(site.s_max * k / (a.samples - 1));
  auto samples = sweep_resistance(*u, site, f, s_values);
  QuadraticFit fit = fit_quadratic(samples);
  QuadCoeffs fq = fit.resolve(ac.q.a4);

  Json j;
  j["site"] = Json{{"check", vec_json(site.check)},
                   {"anchor", vec_json(site.anchor)},
                   {"eps", site.eps},
                   {"e1", vec_json(Vec2(site.rotation.col(0)))},
                   {"shear", site.shear},
                   {"u0", site.u0},
                   {"z0", site.z0},
                   {"delta", site.delta},
                   {"A", vec_json(site.a)},
                   {"B", vec_json(site.b)},
                   {"radius", site.radius},
                   {"window", site.window},
                   {"s_min", site.s_min},
                   {"s_max", site.s_max}};
  Json an = coeffs_json(ac.q);
  an["a4_trapezoids"] = ac.a4_trapezoids;
  an["b3_facets"] = ac.b3_facets;
  an["F_body"] = ac.F_body;
  an["identity_residual"] = ac.identity_residual;
  an["class_counts"] = ac.class_counts;
  an["a3_minus_a4"] = ac.q.a3 - ac.q.a4;
  j["coeffs_analytic"] = an;
  Json fj = coeffs_json(fq);
  fj["p"] = Json::array({fit.p0, fit.p1, fit.p2});
  j["coeffs_fit"] = fj;
  Json sj = Json::array();
  for (const auto& [s, F] : samples) sj.push_back(Json::array({s, F}));
  j["samples"] = sj;
  j["derivative_at_0"] = Json{{"analytic", ac.q.derivative_at_0()}, {"fit", fit.derivative_at_0()}};
  j["residuals"] = Json{{"max", fit.max_residual}, {"rms", fit.rms_residual}};
  if (a.improve) {
    Improvement imp = improvement_step(*u, site, f);
    Json ij{{"improved", imp.improved}, {"s", imp.s}, {"F_before", imp.F_before}, {"F_after", imp.F_after}};
    if (!imp.reason.empty()) ij["reason"] = imp.reason;
    j["improvement"] = ij;
  }
  std::vector<std::string> warnings = site.notes;
  warnings.insert(warnings.end(), ac.warnings.begin(), ac.warnings.end());
  j["warnings"] = warnings;
  emit(a.out, io::dump(j));
  return 0;
}

// --- solve -----------------------------------------------------------------

struct SolveArgs {
  std::string domain = "disk";
  double R = 1.0;
  double M = 1.0;
  ModelArgs model;
  SolveConfig cfg;
  std::string out, trace, report, obj;
};

int run_solve(SolveArgs a, const Globals& g) {
  a.cfg.seed = g.seed;
  if (g.tol_accept) a.cfg.accept_tol = *g.tol_accept;
  if (g.tol_angle) a.cfg.angle_tol = *g.tol_angle;
  if (g.tol_hessian) a.cfg.hessian_tol = *g.tol_hessian;
  if (!(a.R > 0.0)) throw PreconditionError("--R must be positive");
  Domain shape;
  if (a.domain == "disk") {
    shape = Domain::disk(Vec2::Zero(), a.R, a.R / 8.0);
  } else if (a.domain == "square") {
    shape = Domain::rectangle(-a.R, a.R, -a.R, a.R, a.R / 8.0);
  } else {
    throw PreconditionError("unknown domain '" + a.domain + "'");
  }
  const PressureModel f = a.model.model();
  auto t0 = std::chrono::steady_clock::now();
  SolveResult res = solve_2d(shape, a.M, f, a.cfg);
  double dt = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();

  if (!a.out.empty()) io::save_mesh(a.out, res.u);
  if (!a.trace.empty()) {
    std::vector<std::vector<double>> rows;
    for (const TraceRow& r : res.trace) rows.push_back({static_cast<double>(r.iter), static_cast<double>(r.level), r.F});
    io::write_file(a.trace, io::csv({"iter", "level", "F"}, rows));
  }
  if (!a.obj.empty()) io::write_file(a.obj, io::obj(res.u));
  Json j;
  j["F"] = res.F;
  j["trials"] = res.trials;
  j["grid"] = a.cfg.grid;
  j["seed"] = a.cfg.seed;
  auto moves = [](const MoveStats& m) { return Json{{"proposed", m.proposed}, {"accepted", m.accepted}}; };
  j["moves"] = Json{{"lower", moves(res.lower)},
                    {"raise", moves(res.raise)},
                    {"plane", moves(res.plane)},
                    {"stretch", moves(res.stretch)}};
  j["notes"] = res.notes;
  if (!a.report.empty()) {
    VerificationReport rep = verify_solution(res.u, f, tolerances(g));
    io::write_file(a.report, io::dump(io::report_to_json(rep)));
    j["verification_pass"] = rep.all_pass();
  }
  std::cout << io::dump(j);
  std::fprintf(stderr, "solve: %.1f s\n", dt);
  return 0;
}

// --- verify, radial, export-obj ---------------------------------------------

int run_verify(const std::string& mesh, const ModelArgs& model, const std::string& out, const Globals& g) {
  GridFn u = io::load_mesh(mesh);
  if (!u.in_class(envelope_tol(u.height_cap()))) throw ValidityError("mesh is not a function of the admissible class");
  VerificationReport rep = verify_solution(u, model.model(), tolerances(g));
  Json j = io::report_to_json(rep);
  j["F"] = eval_F(u, model.model());
  emit(out, io::dump(j));
  return 0;
}

int run_radial(double L, double M, int n, const ModelArgs& model, const std::string& out, const std::string& json) {
  RadialResult r = solve_radial_1d(L, M, model.model(), n);
  std::vector<std::vector<double>> rows;
  for (std::size_t k = 0; k < r.r.size(); ++k) rows.push_back({r.r[k], r.phi[k]});
  emit(out, io::csv({"r", "phi"}, rows));
  if (!json.empty()) {
    Json j{{"L", L}, {"M", M}, {"n", n}, {"resistance", r.resistance}, {"flat_radius_rings", r.best_start},
           {"starts", r.starts}, {"iterations", r.iterations}};
    emit(json, io::dump(j));
  }
  return 0;
}

int run_export(const std::string& mesh, const std::string& out, bool body) {
  GridFn u = io::load_mesh(mesh);
  emit(out, body ? io::obj(epigraph_body(u)) : io::obj(u));
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Minimal-resistance bodies: toy variations, nose stretching, 2D solver and verification"};
  app.require_subcommand(1);
  Globals g;
  app.add_option("--seed", g.seed, "random seed")->capture_default_str();
  app.add_option("--threads", g.threads, "OpenMP threads, 0 keeps the runtime default");
  app.add_option("--tol-accept", g.tol_accept, "solver acceptance threshold, relative to the initial F");
  app.add_option("--tol-angle", g.tol_angle, "singular-point angle between support normals, radians");
  app.add_option("--tol-hessian", g.tol_hessian, "Hessian sign classification tolerance");
  app.add_option("--tol-boundary", g.tol_boundary, "verify: max |u - M| on the boundary");
  app.add_option("--tol-gap-fraction", g.tol_gap_fraction, "verify: least share of regular cells outside the gap");
  app.add_option("--tol-extreme-distance", g.tol_extreme_distance, "verify: extreme-to-singular distance, in h");
  app.add_option("--tol-extreme-fraction", g.tol_extreme_fraction, "verify: least share of extreme vertices near sing");
  app.add_option("--tol-extreme-depth", g.tol_extreme_depth, "verify: extreme vertex depth, in h");
  app.add_option("--tol-developability", g.tol_developability, "verify: max |lambda_min|, in h");
  app.add_option("--tol-hausdorff", g.tol_hausdorff, "verify: reconstruction distance, in h");

  ToyArgs toy;
  auto* c_toy = app.add_subcommand("toy", "1D nose variation: F along the family and the slope identity");
  c_toy->add_option("--u", toy.u, "x^2, |x|, x^4 or breakpoints x0:y0,x1:y1,...")->capture_default_str();
  c_toy->add_option("--range", toy.range, "interval a b")->expected(2);
  c_toy->add_option("--o", toy.o, "nose point O")->expected(2);
  c_toy->add_option("--f", toy.f, "newton1d or square")->capture_default_str();
  c_toy->add_option("--n", toy.n, "samples in [0, 1]")->capture_default_str();
  c_toy->add_option("--segments", toy.segments, "breakpoints for analytic u")->capture_default_str();
  c_toy->add_option("--csv", toy.csv, "CSV output, - for stdout");
  c_toy->add_option("--json", toy.json, "summary output, - for stdout");

  StretchArgs st;
  auto* c_st = app.add_subcommand("stretch", "nose stretch at one site: coefficients, sweep and fit");
  c_st->set_help_flag("--help", "print this help message and exit");  // frees -h for the grid step
  c_st->add_option("--mesh", st.mesh, "input mesh JSON");
  c_st->add_option("--fixture", st.fixture, "built-in input instead of --mesh: paraboloid");
  c_st->add_option("--h", st.h, "grid step of the built-in fixture");
  c_st->add_option("--x", st.x, "check point near the site")->expected(2);
  c_st->add_option("--eps", st.eps, "deformation bound")->capture_default_str();
  c_st->add_option("--delta", st.delta, "half-length of I");
  c_st->add_option("--z0", st.z0, "height of I");
  c_st->add_option("--radius", st.radius, "concavity radius r");
  c_st->add_option("--samples", st.samples, "sweep samples in [0, s_max]")->capture_default_str();
  c_st->add_flag("--improve", st.improve, "also run one improvement step");
  c_st->add_option("--out", st.out, "report JSON, - for stdout");
  st.model.add(c_st);

  SolveArgs so;
  auto* c_so = app.add_subcommand("solve", "minimize F over convex u with u = M on the boundary");
  c_so->add_option("--domain", so.domain, "disk or square")->capture_default_str();
  c_so->add_option("--R", so.R, "disk radius or square half-side")->capture_default_str();
  c_so->add_option("--M", so.M, "height")->capture_default_str();
  c_so->add_option("--grid", so.cfg.grid, "cells across the domain on the finest level")->capture_default_str();
  c_so->add_option("--budget", so.cfg.budget, "perturbation trials")->capture_default_str();
  c_so->add_option("--levels", so.cfg.levels, "grid levels")->capture_default_str();
  c_so->add_option("--stretch-every", so.cfg.stretch_every, "trials between nose stretches, 0 disables")
      ->capture_default_str();
  c_so->add_option("--out", so.out, "solution mesh JSON");
  c_so->add_option("--trace", so.trace, "trace CSV");
  c_so->add_option("--report", so.report, "verification report JSON");
  c_so->add_option("--obj", so.obj, "surface OBJ");
  so.model.add(c_so);

  std::string v_mesh, v_out = "-";
  ModelArgs v_model;
  auto* c_v = app.add_subcommand("verify", "structural checks on a mesh");
  c_v->add_option("--mesh", v_mesh, "input mesh JSON")->required();
  c_v->add_option("--out", v_out, "report JSON, - for stdout");
  v_model.add(c_v);

  double r_L = 1.0, r_M = 1.0;
  int r_n = 1000;
  std::string r_out = "-", r_json;
  ModelArgs r_model;
  auto* c_r = app.add_subcommand("radial", "radially symmetric optimum");
  c_r->add_option("--L", r_L, "radius")->capture_default_str();
  c_r->add_option("--M", r_M, "height")->capture_default_str();
  c_r->add_option("--n", r_n, "rings")->capture_default_str();
  c_r->add_option("--out", r_out, "profile CSV (r, phi), - for stdout");
  c_r->add_option("--json", r_json, "summary JSON");
  r_model.add(c_r);

  std::string e_mesh, e_out = "-";
  bool e_body = false;
  auto* c_e = app.add_subcommand("export-obj", "OBJ of the lower surface of a mesh");
  c_e->add_option("--mesh", e_mesh, "input mesh JSON")->required();
  c_e->add_option("--out", e_out, "OBJ output, - for stdout");
  c_e->add_flag("--body", e_body, "export the closed body C = {u <= z <= M} instead");

  for (auto* sub : app.get_subcommands({})) sub->fallthrough();

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;
  }

  try {
    if (g.threads > 0) kernels::set_threads(g.threads);
    if (c_toy->parsed()) return run_toy(toy);
    if (c_st->parsed()) return run_stretch(st, g);
    if (c_so->parsed()) return run_solve(so, g);
    if (c_v->parsed()) return run_verify(v_mesh, v_model, v_out, g);
    if (c_r->parsed()) return run_radial(r_L, r_M, r_n, r_model, r_out, r_json);
    if (c_e->parsed()) return run_export(e_mesh, e_out, e_body);
  } catch (const IoError& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 3;
  } catch (const PreconditionError& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 2;
  }
  return 2;
}
