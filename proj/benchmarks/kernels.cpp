#include <cmath>
#include <numbers>

#include <benchmark/benchmark.h>

#include <geoflow/graph_mcf.hpp>
#include <geoflow/lax.hpp>
#include <geoflow/metric_flows.hpp>
#include <geoflow/presets.hpp>
#include <geoflow/spectral.hpp>
#include <geoflow/spin_flows.hpp>
#include <geoflow/stencil.hpp>
#include <geoflow/surface.hpp>

using namespace geoflow;

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

Grid2D square(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  return Grid2D(n, n, kTwoPi, kTwoPi);
}

StencilOrder order_arg(benchmark::State& state) { return stencil_order_from_int(static_cast<int>(state.range(1))); }

void BM_Derivative(benchmark::State& state) {
  const Grid2D g = square(state);
  const ScalarField f = random_smooth_scalar(g, 1, 3, 1.0);
  const StencilOrder o = order_arg(state);
  for (auto _ : state) benchmark::DoNotOptimize(derivative(f, Deriv::XY, o));
  state.SetItemsProcessed(state.iterations() * static_cast<long>(g.size()));
}
BENCHMARK(BM_Derivative)->ArgsProduct({{64, 128, 256}, {2, 4}});

void BM_Antiderivative(benchmark::State& state) {
  const Grid2D g = square(state);
  const ScalarField f = dx(random_smooth_scalar(g, 2, 3, 1.0), StencilOrder::Second);
  const AntiderivativeMode mode = state.range(1) == 0 ? AntiderivativeMode::Spectral : AntiderivativeMode::Stencil2;
  for (auto _ : state) benchmark::DoNotOptimize(antiderivative_x(f, 1e-6, mode));
  state.SetItemsProcessed(state.iterations() * static_cast<long>(g.size()));
}
BENCHMARK(BM_Antiderivative)->ArgsProduct({{64, 128, 256}, {0, 1}});

void BM_HfRhs(benchmark::State& state) {
  const Grid2D g = square(state);
  const VectorField3 S = random_smooth_spin(g, 3, 3, 0.3, false);
  const StencilOrder o = order_arg(state);
  for (auto _ : state) benchmark::DoNotOptimize(hf_rhs(S, o));
}
BENCHMARK(BM_HfRhs)->ArgsProduct({{64, 128}, {2, 4}});

void BM_MiRhsWithConstraint(benchmark::State& state) {
  const Grid2D g = square(state);
  const VectorField3 S = twisted_profile(g, 0.3, 0, 2);
  const StencilOrder o = order_arg(state);
  for (auto _ : state) {
    const ScalarField u = mi_constraint_u(S, o);
    benchmark::DoNotOptimize(mi_rhs(S, u, o));
  }
}
BENCHMARK(BM_MiRhsWithConstraint)->ArgsProduct({{64, 128}, {2, 4}});

void BM_McfGraphRhs(benchmark::State& state) {
  const Grid2D g = square(state);
  const ScalarField phi = random_smooth_scalar(g, 4, 3, 0.3);
  for (auto _ : state) benchmark::DoNotOptimize(mcf_graph_rhs(phi, Vec3{}, order_arg(state)));
}
BENCHMARK(BM_McfGraphRhs)->ArgsProduct({{64, 128, 256}, {2, 4}});

void BM_ConformalRfRhs(benchmark::State& state) {
  const Grid2D g = square(state);
  const ScalarField phi = random_smooth_scalar(g, 5, 3, 0.3);
  for (auto _ : state) benchmark::DoNotOptimize(conformal_rf_rhs(phi, true, order_arg(state)));
}
BENCHMARK(BM_ConformalRfRhs)->ArgsProduct({{64, 128, 256}, {2, 4}});

void BM_Brioschi(benchmark::State& state) {
  const Grid2D g = square(state);
  const Metric2 m{ScalarField(g, 1.0), random_smooth_scalar(g, 6, 3, 0.3),
                  random_smooth_scalar(g, 7, 3, 0.3) + ScalarField(g, 1.5)};
  for (auto _ : state) benchmark::DoNotOptimize(scalar_curvature_brioschi(m, order_arg(state)));
}
BENCHMARK(BM_Brioschi)->ArgsProduct({{64, 128}, {2, 4}});

void BM_HfLaxResidual(benchmark::State& state) {
  const Grid2D g(static_cast<int>(state.range(0)), 8, kTwoPi, 1.0);
  FlowParams p;
  p.dt = 0.25 * max_stable_dt(SpinFlow::HF, g, p);
  const SpinTrajectory tr = evolve(SpinFlow::HF, make_spin_state(SpinFlow::HF, magnon(g, 1.0, 1), p), p, 2, 1);
  std::vector<VectorField3> levels;
  for (const SpinState& s : tr.levels) levels.push_back(s.S);
  for (auto _ : state) benchmark::DoNotOptimize(hf_zero_curvature_residual(levels, p.dt, 1, 1.0));
}
BENCHMARK(BM_HfLaxResidual)->Arg(64)->Arg(256);

}  // namespace

BENCHMARK_MAIN();
