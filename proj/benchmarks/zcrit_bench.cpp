#include "zcrit/charge.hpp"
#include "zcrit/pointform.hpp"
#include "zcrit/stability.hpp"

#include <benchmark/benchmark.h>

namespace {

using namespace zcrit;

const SurfaceData& blowup() {
  static const SurfaceData X = presets::blowup_plane();
  return X;
}

const SheafChern kBundle(3, CohClass{2, -3}, Rational(-7, 4));
const SheafChern kSub(1, CohClass{1, -1}, Rational(-1, 2));
const StabilityVector kRho{GaussianRational(1), GaussianRational(0, Rational(-1, 3)), GaussianRational(-1, 1)};

void ChargeSurface(benchmark::State& state) {
  const CentralCharge Z = make_charge(vectors::dhym(), b_field_unitary(CohClass{Rational(1, 2), 0}, blowup()));
  for (auto _ : state) benchmark::DoNotOptimize(charge_surface(Z, blowup(), kBundle));
}
BENCHMARK(ChargeSurface);

void ComparisonIdentity(benchmark::State& state) {
  const CentralCharge Z = make_charge(kRho, exp_kahler_unitary(Rational(2), blowup()));
  for (auto _ : state) benchmark::DoNotOptimize(comparison_identity(Z, blowup(), kBundle, kSub));
}
BENCHMARK(ComparisonIdentity);

void BundlePositivity(benchmark::State& state) {
  const CentralCharge Z = make_charge(vectors::dhym(), trivial_unitary(blowup()));
  for (auto _ : state) benchmark::DoNotOptimize(z_positive_bundle(Z, blowup(), kBundle));
}
BENCHMARK(BundlePositivity);

void DestabilizerScan(benchmark::State& state) {
  for (auto _ : state) benchmark::DoNotOptimize(destabilizer_scan(kRho, blowup(), kBundle, kSub));
}
BENCHMARK(DestabilizerScan);

void GiesekerCompare(benchmark::State& state) {
  const SheafChern L = line_bundle(CohClass{3, -9}, blowup());
  const SheafChern E = sum(L, structure_sheaf(blowup()));
  for (auto _ : state) benchmark::DoNotOptimize(gieseker_compare(E, L, blowup(), blowup().kahler()));
}
BENCHMARK(GiesekerCompare);

void PositivityGram(benchmark::State& state) {
  using namespace pointform;
  const MatrixForm R = Complex(3.0) * fs_curvature_tp2() - Complex(0.5) * kahler_form(2);
  for (auto _ : state) benchmark::DoNotOptimize(positivity_gram(R));
}
BENCHMARK(PositivityGram);

void FormWedge(benchmark::State& state) {
  std::mt19937_64 rng(7);
  const int rank = static_cast<int>(state.range(0));
  const auto a = pointform::random_form(rng, rank, 1, 1);
  const auto b = pointform::random_form(rng, rank, 1, 1);
  for (auto _ : state) benchmark::DoNotOptimize(pointform::wedge(a, b));
}
BENCHMARK(FormWedge)->Arg(2)->Arg(3)->Arg(5);

void IdentitySuites(benchmark::State& state) {
  const auto trials = static_cast<std::uint64_t>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(pointform::run_identity_suites(11, trials, 1e-10));
  state.SetItemsProcessed(static_cast<std::int64_t>(state.iterations() * trials));
}
BENCHMARK(IdentitySuites)->Arg(1000)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
