#include <benchmark/benchmark.h>

#include <complex>

#include "forge/branch.hpp"
#include "forge/contour.hpp"
#include "forge/curvature.hpp"
#include "forge/holo.hpp"
#include "forge/so_engine.hpp"

using namespace forge;

namespace {

HoloData linear_data() {
  return reality_complete(
      make_holo(TauSpec{}, {parse("z"), parse("i*z")}, 10.0, true));
}

HoloData fs_data() {
  return fubini_study_data(std::polar(1.0, kPi / 3.0),
                           std::polar(1.0, 2.0 * kPi / 3.0));
}

void BM_ContourIntegrate(benchmark::State& state) {
  Contour c{cx{0, 0}, 1.0, static_cast<std::size_t>(state.range(0))};
  auto f = [](cx z) { return std::exp(z) / (z * z); };
  for (auto _ : state) benchmark::DoNotOptimize(contour_integrate(f, c));
}

void BM_BranchTrack(benchmark::State& state) {
  Contour c{cx{0, 0}, 1.0, 512};
  cx r{0.04, 0.01}, s{23, -4};
  auto g = [r, s](cx z) { return (z * z - r) * (z * z - s); };
  for (auto _ : state) benchmark::DoNotOptimize(branch_sqrt_track(g, c));
}

void BM_FrameIntegrals(benchmark::State& state) {
  HoloData d = linear_data();
  cx r{0.04, 0.01}, s = 1.0 / std::conj(r);
  for (auto _ : state) benchmark::DoNotOptimize(compute_AB(d, r, s));
}

void BM_FrameIntegralsFS(benchmark::State& state) {
  HoloData d = fs_data();
  cx r = (cx{0.1, 1.0} - kI) / (cx{0.1, 1.0} + kI);
  cx s = 1.0 / std::conj(r);
  for (auto _ : state) benchmark::DoNotOptimize(compute_AB(d, r, s));
}

void BM_RealMetric(benchmark::State& state) {
  HoloData d = linear_data();
  for (auto _ : state)
    benchmark::DoNotOptimize(real_metric(d, {0.3, 0.7, 0.1, -0.2}));
}

void BM_WeylSplit(benchmark::State& state) {
  HoloData d = linear_data();
  MetricFn g = [d](const Vec4& x) {
    MetricSample m = real_metric(d, x);
    Mat4 out{};
    for (int i = 0; i < 4; ++i)
      for (int j = 0; j < 4; ++j) out[i][j] = m.g[i][j].real();
    return out;
  };
  Vec4 x{0.3, 0.7, 0.1, -0.2};
  for (auto _ : state) benchmark::DoNotOptimize(weyl_split(g, x));
}

}  // namespace

BENCHMARK(BM_ContourIntegrate)->Arg(256)->Arg(1024);
BENCHMARK(BM_BranchTrack);
BENCHMARK(BM_FrameIntegrals);
BENCHMARK(BM_FrameIntegralsFS);
BENCHMARK(BM_RealMetric);
BENCHMARK(BM_WeylSplit);

BENCHMARK_MAIN();
