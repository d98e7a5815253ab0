#include "leastres/radial.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <numbers>

namespace leastres {
namespace {

struct Problem {
  const PressureModel& f;
  double L, M, dr;
  std::vector<double> w;  // 2 pi r_i dr

  double value(const std::vector<double>& p) const {
    double s = 0.0;
    for (std::size_t i = 0; i < p.size(); ++i) s += w[i] * f.value(Vec2(p[i], 0.0));
    return s;
  }

  // weighted projection onto {q nondecreasing, q >= 0, sum q dr <= M}
  std::vector<double> project(const std::vector<double>& y) const {
    auto clipped = [&](double lambda) {
      std::vector<double> z(y.size());
      for (std::size_t i = 0; i < y.size(); ++i) z[i] = y[i] - lambda * dr / w[i];
      std::vector<double> q = isotonic_regression(z, w);
      for (double& v : q) v = std::max(v, 0.0);
      return q;
    };
    auto rise = [&](const std::vector<double>& q) {
      double s = 0.0;
      for (double v : q) s += v * dr;
      return s;
    };
    std::vector<double> q = clipped(0.0);
    if (rise(q) <= M) return q;
    double lo = 0.0, hi = 1.0;
    while (rise(clipped(hi)) > M) hi *= 2.0;
    for (int it = 0; it < 80; ++it) {
      double mid = 0.5 * (lo + hi);
      (rise(clipped(mid)) > M ? lo : hi) = mid;
    }
    return clipped(hi);
  }
};

}  // namespace

std::vector<double> isotonic_regression(const std::vector<double>& y, const std::vector<double>& w) {
  struct Block {
    double mean, weight;
    std::size_t len;
  };
  std::vector<Block> st;
  for (std::size_t i = 0; i < y.size(); ++i) {
    st.push_back({y[i], w[i], 1});
    while (st.size() >= 2 && st[st.size() - 2].mean > st.back().mean) {
      Block b = st.back();
      st.pop_back();
      Block& a = st.back();
      double wt = a.weight + b.weight;
      a.mean = (a.mean * a.weight + b.mean * b.weight) / wt;
      a.weight = wt;
      a.len += b.len;
    }
  }
  std::vector<double> out;
  out.reserve(y.size());
  for (const Block& b : st) out.insert(out.end(), b.len, b.mean);
  return out;
}

RadialResult solve_radial_1d(double L, double M, const PressureModel& f, int n, const RadialOptions& opt) {
  if (!(L > 0.0) || !std::isfinite(L)) throw PreconditionError("radius must be positive");
  if (!(M >= 0.0) || !std::isfinite(M)) throw PreconditionError("height must be nonnegative");
  if (n < 2) throw PreconditionError("need at least two rings");
  Problem pb{f, L, M, L / n, {}};
  pb.w.resize(n);
  for (int i = 0; i < n; ++i) pb.w[i] = 2.0 * std::numbers::pi * (i + 0.5) * pb.dr * pb.dr;

  // Zero slopes are stationary for integrands with f'(0) = 0 and slopes past
  // the concave range are pushed up, so descent keeps the flat nose of its
  // start. The nose ring count is searched outside the descent: a coarse
  // ladder, then hill climbing with halving steps.
  struct Run {
    double J;
    std::vector<double> p;
    int it;
  };
  auto descend = [&](int nose) {
    std::vector<double> p(n, 0.0);
    for (int i = nose; i < n; ++i) p[i] = M / ((n - nose) * pb.dr);
    p = pb.project(p);
    double J = pb.value(p);
    double eta = 1.0;
    int it = 0;
    for (; it < opt.max_iterations; ++it) {
      std::vector<double> g(n);
      for (int i = 0; i < n; ++i) g[i] = f.gradient(Vec2(p[i], 0.0)).x();
      bool moved = false;
      while (eta > 1e-12) {
        std::vector<double> y(n);
        for (int i = 0; i < n; ++i) y[i] = p[i] - eta * g[i];
        std::vector<double> q = pb.project(y);
        double Jq = pb.value(q);
        double dec = 0.0;
        for (int i = 0; i < n; ++i) dec += pb.w[i] * g[i] * (p[i] - q[i]);
        if (Jq <= J - 1e-4 * dec && Jq < J) {
          moved = J - Jq > opt.rel_tol * std::abs(J);
          p = std::move(q);
          J = Jq;
          eta *= 1.5;
          break;
        }
        eta *= 0.5;
      }
      if (!moved) break;
    }
    return Run{J, std::move(p), it};
  };
  std::map<int, Run> runs;
  auto eval = [&](int nose) -> const Run& {
    nose = std::clamp(nose, 0, n - 1);
    auto it = runs.find(nose);
    if (it == runs.end()) it = runs.emplace(nose, descend(nose)).first;
    return it->second;
  };
  const int ladder = std::min(n - 1, 40);
  int best_nose = 0;
  for (int k = 0; k < ladder; ++k) {
    int nose = k * n / ladder;
    if (eval(nose).J < eval(best_nose).J) best_nose = nose;
  }
  for (int step = std::max(1, n / ladder / 2); step >= 1; step /= 2) {
    bool improved = true;
    while (improved) {
      improved = false;
      for (int cand : {best_nose - step, best_nose + step}) {
        if (cand < 0 || cand >= n) continue;
        if (eval(cand).J < eval(best_nose).J) {
          best_nose = cand;
          improved = true;
        }
      }
    }
  }
  const Run& run = eval(best_nose);
  RadialResult best;
  best.resistance = run.J;
  best.best_start = best_nose;
  best.iterations = run.it;
  best.starts = static_cast<int>(runs.size());
  best.r.assign(n + 1, 0.0);
  best.phi.assign(n + 1, 0.0);
  for (int i = 0; i < n; ++i) {
    best.r[i + 1] = (i + 1) * pb.dr;
    best.phi[i + 1] = std::min(M, best.phi[i] + run.p[i] * pb.dr);
  }
  best.r[n] = L;
  return best;
}

}  // namespace leastres
