#include "leastres/optimizer.hpp"

#include <algorithm>
#include <cmath>
#include <optional>
#include <random>

#include "leastres/kernels.hpp"
#include "leastres/lower_surface.hpp"
#include "leastres/resistance.hpp"
#include "leastres/stretch.hpp"

namespace leastres {
namespace {

double u01(std::mt19937_64& rng) { return static_cast<double>(rng() >> 11) * 0x1.0p-53; }

enum class Move { lower, raise, plane };

struct Proposal {
  Move move = Move::lower;
  int node = -1;
  double value = 0.0;  // new node value (lower, raise)
  Vec2 grad = Vec2::Zero();  // plane z = c + grad.(x - node)
  double c = 0.0;
};

struct Screen {
  double delta = 0.0;
  std::vector<double> values;  // empty when screened out
};

struct Outcome {
  bool ok = false;
  double F = 0.0;
  std::vector<double> values;
};

class Level {
 public:
  Level(GridPtr grid, std::vector<double> values, double M, const PressureModel& f, const SolveConfig& cfg)
      : grid_(std::move(grid)), M_(M), f_(f), cfg_(cfg), cur_(grid_, std::move(values), M) {
    F_ = eval_F(cur_, f_);
    for (int k = 0; k < grid_->size(); ++k) {
      if (!grid_->is_boundary(k)) interior_.push_back(k);
    }
    patches_.resize(grid_->size());
    for (int k : interior_) patches_[k] = neighbourhood(grid_->node(k), cfg_.patch_radius * grid_->h());
  }

  const GridFn& current() const { return cur_; }
  double F() const { return F_; }
  const std::vector<int>& interior() const { return interior_; }
  const Grid& grid() const { return *grid_; }

  Proposal propose(std::mt19937_64& rng, double amp) const {
    Proposal p;
    double r = u01(rng);
    p.move = r < 0.45 ? Move::lower : (r < 0.85 ? Move::raise : Move::plane);
    p.node = interior_[static_cast<std::size_t>(u01(rng) * interior_.size())];
    double step = amp * M_ * u01(rng);
    double v = cur_[p.node];
    if (p.move == Move::lower) {
      p.value = std::max(0.0, v - step);
    } else if (p.move == Move::raise) {
      p.value = std::min(M_, v + step);
    } else {
      p.grad = u01(rng) * cur_.gradient_at(grid_->node(p.node));
      p.c = v + step;
    }
    return p;
  }

  // Candidate values and a local estimate of the change in F; screened out
  // proposals come back without values.
  Screen screen(const Proposal& p, double tol) const {
    Screen out;
    std::vector<int> changed;
    std::vector<double> vals;
    if (p.move == Move::plane) {
      const Vec2& x0 = grid_->node(p.node);
      double c = p.c;
      for (int b : grid_->boundary_cycle()) c = std::min(c, M_ - p.grad.dot(grid_->node(b) - x0));
      vals = cur_.values();
      double reach = 0.0;
      for (int k = 0; k < grid_->size(); ++k) {
        double l = c + p.grad.dot(grid_->node(k) - x0);
        if (l > vals[k]) {
          vals[k] = grid_->is_boundary(k) ? M_ : l;
          changed.push_back(k);
          reach = std::max(reach, (grid_->node(k) - x0).norm());
        }
      }
      if (changed.empty()) return out;
      if (static_cast<int>(changed.size()) <= kMaxPlanePatch) {
        out.delta = patch_delta(neighbourhood(x0, reach + cfg_.patch_radius * grid_->h()), vals);
        if (out.delta >= -tol) return out;
      } else {
        out.delta = -INFINITY;
      }
    } else {
      if (p.value == cur_[p.node]) return out;
      vals = cur_.values();
      vals[p.node] = p.value;
      out.delta = patch_delta(patches_[p.node], vals);
      if (out.delta >= -tol) return out;
    }
    out.values = std::move(vals);
    return out;
  }

  Outcome confirm(std::vector<double> vals, double tol) const {
    Outcome out;
    GridFn cand(grid_, std::move(vals), M_);
    double F = eval_F(cand, f_);
    if (!(F < F_ - tol)) return out;
    out.ok = true;
    out.F = F;
    out.values.resize(cand.size());
    kernels::plane_max(cand.surface().index(), grid_->nodes(), out.values);
    for (int k = 0; k < grid_->size(); ++k) {
      if (grid_->is_boundary(k)) out.values[k] = M_;
      out.values[k] = std::clamp(out.values[k], 0.0, M_);
    }
    return out;
  }

  void accept(std::vector<double> values, double F) {
    cur_ = GridFn(grid_, std::move(values), M_);
    F_ = F;
  }

 private:
  std::vector<int> neighbourhood(const Vec2& x, double rho) const {
    std::vector<int> out;
    const Vec2 o = grid_->origin();
    const double h = grid_->h();
    int i0 = static_cast<int>(std::floor((x.x() - rho - o.x()) / h)), i1 = static_cast<int>(std::ceil((x.x() + rho - o.x()) / h));
    int j0 = static_cast<int>(std::floor((x.y() - rho - o.y()) / h)), j1 = static_cast<int>(std::ceil((x.y() + rho - o.y()) / h));
    for (int i = i0; i <= i1; ++i) {
      for (int j = j0; j <= j1; ++j) {
        int id = grid_->node_at(i, j);
        if (id >= 0 && (grid_->node(id) - x).norm() <= rho) out.push_back(id);
      }
    }
    // off-lattice boundary nodes close by
    for (int b : grid_->boundary_cycle()) {
      if (grid_->lattice_i(b) < 0 && (grid_->node(b) - x).norm() <= rho) out.push_back(b);
    }
    return out;
  }

  double patch_delta(const std::vector<int>& ids, const std::vector<double>& vals) const {
    std::vector<Vec2> xy;
    std::vector<double> z0, z1;
    for (int id : ids) {
      xy.push_back(grid_->node(id));
      z0.push_back(cur_[id]);
      z1.push_back(vals[id]);
    }
    auto patch_F = [&](const std::vector<double>& z) {
      LowerSurface s(xy, z, grid_->h());
      double sum = 0.0;
      for (const auto& t : s.triangles()) sum += f_.value(t.grad) * t.area;
      return sum;
    };
    return patch_F(z1) - patch_F(z0);
  }

  static constexpr int kMaxPlanePatch = 400;

  GridPtr grid_;
  double M_;
  const PressureModel& f_;
  const SolveConfig& cfg_;
  GridFn cur_;
  double F_ = 0.0;
  std::vector<int> interior_;
  std::vector<std::vector<int>> patches_;
};

std::vector<int> level_cells(const SolveConfig& cfg) {
  std::vector<int> out;
  for (int l = cfg.levels - 1; l >= 0; --l) {
    int n = std::max(cfg.min_cells, cfg.grid >> l);
    n = std::min(n, cfg.grid);
    if (out.empty() || n > out.back()) out.push_back(n);
  }
  return out;
}

GridFn prolong(const GridFn& coarse, const GridPtr& fine, double M) {
  std::vector<Vec3> samples;
  const Grid& g = coarse.grid();
  for (int k = 0; k < g.size(); ++k) samples.emplace_back(g.node(k).x(), g.node(k).y(), coarse[k]);
  for (int b : fine->boundary_cycle()) samples.emplace_back(fine->node(b).x(), fine->node(b).y(), M);
  GridFn u = lower_convex_envelope(fine, samples, M);
  std::vector<double> v = u.values();
  for (int k = 0; k < fine->size(); ++k) {
    if (fine->is_boundary(k)) v[k] = M;
    v[k] = std::clamp(v[k], 0.0, M);
  }
  return GridFn(fine, std::move(v), M);
}

// Nose stretch at extreme nodes far from the singular set.
std::optional<GridFn> try_stretch(const Level& lv, const PressureModel& f, const SolveConfig& cfg, double M,
                                  double tol, std::uint64_t seed, std::vector<std::string>& notes) {
  const GridFn& u = lv.current();
  double angle = cfg.angle_tol > 0.0 ? cfg.angle_tol : default_angle_tol(lv.grid());
  std::vector<int> sing = singular_points(u, angle);
  std::vector<std::pair<double, int>> cand;
  for (int k : extreme_nodes(u)) {
    try {
      if (classify_hessian(f, node_cone(u, k).mean_grad, cfg.hessian_tol) != HessianClass::neg) continue;
    } catch (const NonSmoothError&) {
      continue;
    }
    double d = INFINITY;
    for (int s : sing) {
      if (s != k) d = std::min(d, (lv.grid().node(s) - lv.grid().node(k)).norm());
    }
    cand.emplace_back(-d, k);
  }
  std::sort(cand.begin(), cand.end());
  int tried = 0;
  for (const auto& [negd, k] : cand) {
    if (tried++ >= cfg.stretch_sites) break;
    try {
      SiteOptions opt;
      opt.seed = seed;
      opt.hessian_tol = cfg.hessian_tol;
      StretchSite site = prepare_site(u, f, lv.grid().node(k), cfg.stretch_eps * M, opt);
      Improvement imp = improvement_step(u, site, f, tol);
      if (!imp.improved) continue;
      const auto& v = imp.u->values();
      if (*std::min_element(v.begin(), v.end()) < 0.0) continue;
      return std::move(*imp.u);
    } catch (const PreconditionError& e) {
      std::string note = std::string("nose stretch skipped: ") + e.what();
      if (std::find(notes.begin(), notes.end(), note) == notes.end()) notes.push_back(std::move(note));
    }
  }
  return std::nullopt;
}

}  // namespace

GridFn initial_guess(const GridPtr& grid, double M) {
  if (!(M >= 0.0) || !std::isfinite(M)) throw PreconditionError("height must be nonnegative");
  const Domain& d = grid->domain();
  std::vector<double> sd(grid->size());
  double top = 0.0;
  for (int k = 0; k < grid->size(); ++k) {
    sd[k] = std::max(0.0, d.signed_distance(grid->node(k)));
    top = std::max(top, sd[k]);
  }
  std::vector<double> v(grid->size());
  for (int k = 0; k < grid->size(); ++k) v[k] = grid->is_boundary(k) || top == 0.0 ? M : M * (1.0 - sd[k] / top);
  GridFn u = lower_convex_envelope(GridFn(grid, std::move(v), M));
  std::vector<double> w = u.values();
  for (int k = 0; k < grid->size(); ++k) {
    if (grid->is_boundary(k)) w[k] = M;
  }
  return GridFn(grid, std::move(w), M);
}

SolveResult solve_2d(const Domain& shape, double M, const PressureModel& f, const SolveConfig& cfg) {
  if (cfg.grid < 4) throw PreconditionError("grid must have at least four cells across");
  if (cfg.budget < 0) throw PreconditionError("budget must be nonnegative");
  if (!(M >= 0.0) || !std::isfinite(M)) throw PreconditionError("height must be nonnegative");
  if (cfg.batch < 1 || cfg.halve_after < 1) throw PreconditionError("batch and halving counts must be positive");
  if (!(cfg.amplitude > 0.0) || !(cfg.accept_tol >= 0.0)) throw PreconditionError("invalid perturbation settings");

  const std::vector<int> cells = level_cells(cfg);
  const double diam = shape.diameter();
  std::mt19937_64 rng(cfg.seed);
  std::vector<TraceRow> trace;
  MoveStats stats[4];
  std::vector<std::string> notes;
  long long trials = 0;
  double tol = 0.0;
  std::optional<GridFn> prev;

  for (std::size_t li = 0; li < cells.size(); ++li) {
    GridPtr grid = make_grid(shape.with_step(diam / cells[li]));
    GridFn start = prev ? prolong(*prev, grid, M) : initial_guess(grid, M);
    Level lv(grid, start.values(), M, f, cfg);
    if (li == 0) tol = cfg.accept_tol * lv.F();
    trace.push_back({trials, static_cast<int>(li), lv.F()});
    const long long share = (cfg.budget - trials) / static_cast<long long>(cells.size() - li);
    const long long stop = trials + share;
    double amp = cfg.amplitude;
    long long misses = 0, next_stretch = trials + cfg.stretch_every;
    bool stretch_stalled = false;
    while (trials < stop && !lv.interior().empty() && amp >= cfg.min_amplitude && M > 0.0) {
      const int nb = static_cast<int>(std::min<long long>(cfg.batch, stop - trials));
      std::vector<Proposal> props(nb);
      for (auto& p : props) p = lv.propose(rng, amp);
      std::vector<Screen> scr(nb);
#pragma omp parallel for schedule(dynamic)
      for (int i = 0; i < nb; ++i) scr[i] = lv.screen(props[i], tol);
      std::vector<int> order;
      for (int i = 0; i < nb; ++i) {
        stats[static_cast<int>(props[i].move)].proposed++;
        if (!scr[i].values.empty()) order.push_back(i);
      }
      std::stable_sort(order.begin(), order.end(), [&](int a, int b) { return scr[a].delta < scr[b].delta; });
      trials += nb;
      bool accepted = false;
      // most promising first; the first global improvement wins
      for (int i : order) {
        Outcome out = lv.confirm(std::move(scr[i].values), tol);
        if (!out.ok) continue;
        stats[static_cast<int>(props[i].move)].accepted++;
        lv.accept(std::move(out.values), out.F);
        trace.push_back({trials, static_cast<int>(li), lv.F()});
        accepted = true;
        break;
      }
      if (accepted) {
        misses = 0;
      } else if ((misses += nb) >= cfg.halve_after) {
        amp *= 0.5;
        misses = 0;
      }
      if (cfg.stretch_every > 0 && trials >= next_stretch && !stretch_stalled) {
        next_stretch += cfg.stretch_every;
        stats[3].proposed++;
        std::optional<GridFn> v = try_stretch(lv, f, cfg, M, tol, cfg.seed + trials, notes);
        double F = v ? eval_F(*v, f) : INFINITY;
        if (v && F < lv.F() - tol) {
          stats[3].accepted++;
          lv.accept(v->values(), F);
          trace.push_back({trials, static_cast<int>(li), F});
        } else {
          stretch_stalled = amp < 1e-3;
        }
      }
    }
    prev = lv.current();
    if (li + 1 == cells.size()) {
      SolveResult res{lv.current(), lv.F(), std::move(trace), trials, stats[0], stats[1], stats[2], stats[3],
                      std::move(notes)};
      return res;
    }
  }
  throw PreconditionError("no grid levels");
}

}  // namespace leastres
