#include <benchmark/benchmark.h>

#include <vector>

#include "gpsplit/background.hpp"
#include "gpsplit/field.hpp"
#include "gpsplit/integrators.hpp"
#include "gpsplit/transforms.hpp"

using namespace gpsplit;

namespace {

Field smooth(const Grid& g) {
  return Field::sample(g, [](double x, double y) { return Complex{1.0 + 0.1 * std::cos(x), 0.1 * std::sin(x + y)}; });
}

void BM_FourierRoundTrip(benchmark::State& state) {
  const int dim = static_cast<int>(state.range(0));
  const Grid g = make_grid(dim, 5.0, static_cast<int>(state.range(1)), BoundaryKind::periodic);
  FourierTransform fft(g);
  Field u = smooth(g);
  for (auto _ : state) {
    fft.forward(u.values());
    fft.inverse(u.values());
    benchmark::DoNotOptimize(u.values().data());
  }
  state.SetItemsProcessed(state.iterations() * static_cast<long>(g.size()));
}
BENCHMARK(BM_FourierRoundTrip)->Args({1, 1024})->Args({1, 4096})->Args({2, 128})->Args({2, 256});

void BM_SineRoundTrip(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  SineTransform dst(n);
  std::vector<Complex> x(n, Complex{0.5, -0.25});
  for (auto _ : state) {
    dst.forward(x);
    dst.inverse(x);
    benchmark::DoNotOptimize(x.data());
  }
  state.SetItemsProcessed(state.iterations() * n);
}
BENCHMARK(BM_SineRoundTrip)->Arg(1023)->Arg(4095);

void BM_StrangSoliton1D(benchmark::State& state) {
  const Grid g = make_grid(1, 60.0, static_cast<int>(state.range(0)), BoundaryKind::dirichlet);
  const DarkSoliton soliton{1.3};
  SplittingStepper stepper(g, ZeroPotential{}, PhysParams{});
  FlowState s = FlowState::u_form(eval_background(soliton, g), 0.0, background_limits(soliton));
  for (auto _ : state) {
    stepper.strang_step(s, 1e-3);
    benchmark::DoNotOptimize(s.field.values().data());
  }
}
BENCHMARK(BM_StrangSoliton1D)->Arg(1023)->Arg(4095);

void BM_StrangMovingGaussian2D(benchmark::State& state) {
  const Grid g = make_grid(2, 5.0, static_cast<int>(state.range(0)), BoundaryKind::periodic);
  SplittingStepper stepper(g, MovingGaussian{}, PhysParams{0.1, 15.0});
  FlowState s = FlowState::u_form(smooth(g));
  for (auto _ : state) {
    stepper.strang_step(s, 1e-3);
    benchmark::DoNotOptimize(s.field.values().data());
  }
}
BENCHMARK(BM_StrangMovingGaussian2D)->Arg(128)->Arg(256);

}  // namespace

BENCHMARK_MAIN();
