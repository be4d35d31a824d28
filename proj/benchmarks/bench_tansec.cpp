#include "tansec/asymptotic_estimator.hpp"
#include "tansec/convex_measures.hpp"
#include "tansec/convex_sample.hpp"
#include "tansec/john_ellipsoid.hpp"
#include "tansec/recovery.hpp"
#include "tansec/sphere.hpp"
#include "tansec/tangent_geometry.hpp"

#include <benchmark/benchmark.h>

using namespace tansec;

namespace {

AffineFlat north(const RadialBody& body) {
  return tangent_hyperplanes(body, Vec::Unit(body.dimension(), body.dimension() - 1)).front();
}

void BM_SectionSample(benchmark::State& state) {
  const int d = static_cast<int>(state.range(0));
  const PerturbationFamily fam(RadialBody::ball(d), Polynomial::constant(1.0));
  const AffineFlat flat = north(fam.base());
  for (auto _ : state) benchmark::DoNotOptimize(section_body(fam, flat, 1.0 / 256));
}
BENCHMARK(BM_SectionSample)->Arg(2)->Arg(3)->Unit(benchmark::kMillisecond);

void BM_CapSample(benchmark::State& state) {
  const int d = static_cast<int>(state.range(0));
  const PerturbationFamily fam(RadialBody::ball(d), Polynomial::constant(1.0));
  const AffineFlat flat = north(fam.base());
  for (auto _ : state) benchmark::DoNotOptimize(cap_body(fam, flat, 1.0 / 256));
}
BENCHMARK(BM_CapSample)->Arg(2)->Arg(3)->Unit(benchmark::kMillisecond);

void BM_IntrinsicVolume(benchmark::State& state) {
  const int m = static_cast<int>(state.range(0));
  const int k = static_cast<int>(state.range(1));
  SamplingOptions so;
  so.force_monte_carlo = m > 3;
  const ConvexSample s = ellipsoid_sample(EllipsoidSpec::axis_aligned(Vec::Ones(m)), so);
  for (auto _ : state) benchmark::DoNotOptimize(intrinsic_volume(s, k));
}
BENCHMARK(BM_IntrinsicVolume)->Args({2, 1})->Args({3, 1})->Args({3, 2})->Args({3, 3})->Args({4, 2})
    ->Unit(benchmark::kMillisecond);

void BM_JohnEllipsoid(benchmark::State& state) {
  const int m = static_cast<int>(state.range(0));
  Vec semi = Vec::LinSpaced(m, 1.0, 1.5);
  const ConvexSample s = ellipsoid_sample(EllipsoidSpec::axis_aligned(semi));
  for (auto _ : state) benchmark::DoNotOptimize(max_inscribed_ellipsoid(s.points));
}
BENCHMARK(BM_JohnEllipsoid)->Arg(2)->Arg(3)->Unit(benchmark::kMillisecond);

void BM_SweepAndExtract(benchmark::State& state) {
  const PerturbationFamily fam(RadialBody::ball(3), Polynomial::constant(1.0));
  const AffineFlat flat = north(fam.base());
  const FunctionalDescriptor v2{FunctionalKind::IntrinsicVolume, 2};
  for (auto _ : state) {
    const MeasurementSeries s = sweep(fam, flat, v2, EpsilonGrid::geometric(), SweepMode::Section);
    benchmark::DoNotOptimize(extract_limit(s));
  }
}
BENCHMARK(BM_SweepAndExtract)->Unit(benchmark::kMillisecond);

void BM_RecoverField(benchmark::State& state) {
  Vec semi(3);
  semi << 1.0, 1.2, 1.5;
  const PerturbationFamily fam(RadialBody::ellipsoid(semi), Polynomial({{0.3, {}}, {0.1, {2}}}));
  const auto flats = tangent_hyperplanes(fam.base(), direction_grid(3, 16).directions);
  RecoveryOptions opt;
  opt.functional = {FunctionalKind::IntrinsicVolume, 2};
  opt.jobs = static_cast<int>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(recover_field(fam, flats, opt));
}
BENCHMARK(BM_RecoverField)->Arg(1)->Arg(4)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
