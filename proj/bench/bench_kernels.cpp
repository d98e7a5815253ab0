// Serial twins against the OpenMP kernels. Thread count is the second argument
// of the parallel runs; on a single core expect them to tie.

#include <benchmark/benchmark.h>

#include <random>

#include "leastres/grid_fn.hpp"
#include "leastres/kernels.hpp"
#include "leastres/resistance.hpp"

using namespace leastres;

namespace {

GridFn surface_at(int cells) {
  GridPtr g = make_grid(Domain::disk(Vec2::Zero(), 1.0, 2.0 / cells));
  std::vector<double> v;
  for (int k = 0; k < g->size(); ++k) {
    const Vec2& p = g->node(k);
    v.push_back(g->is_boundary(k) ? 1.0 : std::max(0.0, 1.4 * p.norm() - 0.4 + 0.05 * p.x() * p.y()));
  }
  return GridFn(g, v, 1.0);
}

struct Grads {
  std::vector<Vec2> g;
  std::vector<double> w;
  explicit Grads(std::size_t n) : g(n), w(n) {
    std::mt19937_64 rng(1);
    std::normal_distribution<double> N;
    for (std::size_t k = 0; k < n; ++k) {
      g[k] = Vec2(N(rng), N(rng));
      w[k] = std::abs(N(rng));
    }
  }
};

void BM_facet_sum_serial(benchmark::State& st) {
  Grads d(st.range(0));
  PressureModel f = PressureModel::newton();
  for (auto _ : st) benchmark::DoNotOptimize(kernels::facet_sum_serial(d.g, d.w, f));
  st.SetItemsProcessed(st.iterations() * st.range(0));
}

void BM_facet_sum(benchmark::State& st) {
  Grads d(st.range(0));
  PressureModel f = PressureModel::newton();
  kernels::set_threads(static_cast<int>(st.range(1)));
  for (auto _ : st) benchmark::DoNotOptimize(kernels::facet_sum(d.g, d.w, f));
  st.SetItemsProcessed(st.iterations() * st.range(0));
}

void BM_plane_max(benchmark::State& st, bool parallel) {
  GridFn u = surface_at(static_cast<int>(st.range(0)));
  const auto& nodes = u.grid().nodes();
  std::vector<double> out(nodes.size());
  if (parallel) kernels::set_threads(static_cast<int>(st.range(1)));
  for (auto _ : st) {
    if (parallel) {
      kernels::plane_max(u.surface().index(), nodes, out);
    } else {
      kernels::plane_max_serial(u.surface().index(), nodes, out);
    }
    benchmark::DoNotOptimize(out.data());
  }
  st.SetItemsProcessed(st.iterations() * nodes.size());
}

void BM_clipped_sum(benchmark::State& st, bool parallel) {
  GridFn u = surface_at(static_cast<int>(st.range(0)));
  const Grid& g = u.grid();
  std::vector<char> mask(g.cells().size());
  for (std::size_t c = 0; c < mask.size(); ++c) mask[c] = c % 3 != 0;
  PressureModel f = PressureModel::newton();
  const auto& tris = u.surface().triangles();
  if (parallel) kernels::set_threads(static_cast<int>(st.range(1)));
  for (auto _ : st) {
    benchmark::DoNotOptimize(parallel ? kernels::clipped_sum(tris, g.nodes(), g, mask, f)
                                      : kernels::clipped_sum_serial(tris, g.nodes(), g, mask, f));
  }
}

void BM_eval_F(benchmark::State& st) {
  GridFn u = surface_at(static_cast<int>(st.range(0)));
  PressureModel f = PressureModel::newton();
  for (auto _ : st) benchmark::DoNotOptimize(eval_F(u, f));
}

}  // namespace

BENCHMARK(BM_facet_sum_serial)->Arg(1 << 16);
BENCHMARK(BM_facet_sum)->Args({1 << 16, 1})->Args({1 << 16, 4});
BENCHMARK_CAPTURE(BM_plane_max, serial, false)->Args({96, 1});
BENCHMARK_CAPTURE(BM_plane_max, omp, true)->Args({96, 1})->Args({96, 4});
BENCHMARK_CAPTURE(BM_clipped_sum, serial, false)->Args({96, 1});
BENCHMARK_CAPTURE(BM_clipped_sum, omp, true)->Args({96, 1})->Args({96, 4});
BENCHMARK(BM_eval_F)->Arg(48)->Arg(96);

BENCHMARK_MAIN();
