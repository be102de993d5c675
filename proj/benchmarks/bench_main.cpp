#include <benchmark/benchmark.h>

#include "cascade/polarization.hpp"
#include "cascade/spectrometer.hpp"
#include "cascade/tomography.hpp"

using namespace cascade;

namespace {

Medium bench_segment(double length, double b2_dc) {
  Medium m;
  m.kind = MediumKind::nonlinear;
  m.length = length;
  m.k_qpm = 100000.0;
  m.profile.pump_H = m.profile.pump_V = {11900000.0, 4.9e-9, 0.0};
  m.profile.dc_H = m.profile.dc_V = {5900000.0, 4.9e-9, b2_dc};
  return m;
}

MiddleSection bench_middle(double length) {
  MiddleSection mid;
  mid.medium.kind = MediumKind::linear;
  mid.medium.length = length;
  mid.medium.profile.pump_H = mid.medium.profile.pump_V = {11800000.0, 4.92e-9, 0.0};
  mid.medium.profile.dc_H = mid.medium.profile.dc_V = {5900000.0, 4.9e-9, -2.2e-26};
  return mid;
}

CascadeConfig bench_config(int segments, int points) {
  CascadeConfig cfg;
  cfg.segments.assign(segments, bench_segment(0.25, -2.2e-26));
  cfg.middles.assign(segments - 1, bench_middle(5.0));
  cfg.pump.omega_bar_p = 2.4e15;
  cfg.pump.coherence_time = 1e-10;
  cfg.mode = PumpMode::partial;
  cfg.grid = {5e13, points};
  return cfg;
}

void BM_JointSpectrumTwoSegments(benchmark::State& state) {
  const CascadeConfig cfg = bench_config(2, static_cast<int>(state.range(0)));
  for (auto _ : state) {
    benchmark::DoNotOptimize(joint_spectrum(cfg));
  }
  state.SetItemsProcessed(state.iterations() * state.range(0));
}
BENCHMARK(BM_JointSpectrumTwoSegments)->Arg(1025)->Arg(4097)->Arg(16385);

void BM_JointSpectrumEightSegments(benchmark::State& state) {
  const CascadeConfig cfg = bench_config(8, 4097);
  for (auto _ : state) {
    benchmark::DoNotOptimize(joint_spectrum(cfg));
  }
}
BENCHMARK(BM_JointSpectrumEightSegments);

void BM_SpectrumMetrics(benchmark::State& state) {
  CascadeConfig cfg = bench_config(2, 65537);
  cfg.grid.span = 3e14;
  const SpectrumTable t = joint_spectrum(cfg);
  for (auto _ : state) {
    benchmark::DoNotOptimize(spectrum_metrics(t));
  }
}
BENCHMARK(BM_SpectrumMetrics);

void BM_DensityMatrixFull(benchmark::State& state) {
  CascadeConfig cfg = bench_config(2, static_cast<int>(state.range(0)));
  cfg.middles[0].jones_dc = make_unitary(0.5, 0.2, -0.1);
  for (auto _ : state) {
    benchmark::DoNotOptimize(density_matrix_full(cfg));
  }
}
BENCHMARK(BM_DensityMatrixFull)->Arg(257)->Arg(4097);

void BM_Concurrence(benchmark::State& state) {
  CascadeConfig cfg = bench_config(2, 257);
  cfg.middles[0].jones_dc = make_unitary(kPi / 4.0, 0.0, 0.0);
  const PolDensityMatrix rho = density_matrix_full(cfg);
  for (auto _ : state) {
    benchmark::DoNotOptimize(concurrence(rho));
  }
}
BENCHMARK(BM_Concurrence);

void BM_TomographyRoundTrip(benchmark::State& state) {
  CascadeConfig cfg = bench_config(2, 257);
  const PolDensityMatrix rho = density_matrix_full(cfg);
  const ProjectorSet set = ProjectorSet::standard16();
  std::uint64_t seed = 0;
  for (auto _ : state) {
    const CountRecord rec = simulate_counts(rho, 100000, seed++);
    benchmark::DoNotOptimize(reconstruct(rec, set));
  }
}
BENCHMARK(BM_TomographyRoundTrip);

void BM_SpectrometerRoundTrip(benchmark::State& state) {
  const CascadeConfig cfg = bench_config(2, 8193);
  const SpectrumTable t = joint_spectrum(cfg);
  SpectrometerModel model;
  model.dispersion_length_ps_per_nm = 340.0;
  model.coincidence_window_ps = 256.0;
  model.reference_wavelength_nm = wavelength_nm_from_omega(0.5 * cfg.pump.omega_bar_p);
  for (auto _ : state) {
    benchmark::DoNotOptimize(recover_spectrum(map_to_histogram(t, model), model));
  }
}
BENCHMARK(BM_SpectrometerRoundTrip);

}  // namespace

BENCHMARK_MAIN();
