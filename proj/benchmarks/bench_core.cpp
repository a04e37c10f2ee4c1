#include <benchmark/benchmark.h>

#include "meridian/harness.hpp"
#include "meridian/numeric_oracle.hpp"
#include "meridian/sphere_curves.hpp"

using namespace meridian;

namespace {

void BM_FdMeanCurvature(benchmark::State& state) {
  const BuiltCase c = build_case_surface(default_case(Theorem::QuasiA));
  const Immersion z = [&c](double u, double v) { return c.surface(u, v); };
  const Interval us = c.surface.u_span();
  const Interval vs = c.surface.v_span();
  const double u = us.lo + 0.5 * us.width();
  const double v = vs.lo + 0.5 * vs.width();
  for (auto _ : state) benchmark::DoNotOptimize(mean_curvature_fd(z, u, v));
}
BENCHMARK(BM_FdMeanCurvature);

void BM_IntegrateFrenet(benchmark::State& state) {
  const auto family = static_cast<CurveFamily>(state.range(0));
  for (auto _ : state) {
    benchmark::DoNotOptimize(
        integrate_frenet(family, CurvatureLaw::constant(0.8), standard_initial_frame(family), {0.0, 2.0}, 1e-3));
  }
}
BENCHMARK(BM_IntegrateFrenet)->DenseRange(0, 2);

void BM_IntegrateProfile(benchmark::State& state) {
  const CaseSpec s = default_case(Theorem::CmcA);
  const PhiFunction phi = phi_closed_form(PhiKind::Cmc, ProfileFamily::Ma, s.params);
  for (auto _ : state) benchmark::DoNotOptimize(integrate_profile(phi, s.f0, s.u_span, s.step));
}
BENCHMARK(BM_IntegrateProfile);

void BM_VerifyCase(benchmark::State& state) {
  const CaseSpec s = default_case(static_cast<Theorem>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(verify_case(s));
}
BENCHMARK(BM_VerifyCase)
    ->Arg(static_cast<int>(Theorem::MinimalA))
    ->Arg(static_cast<int>(Theorem::QuasiB))
    ->Arg(static_cast<int>(Theorem::CmcC))
    ->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
