#include "eitcv/cloning.hpp"
#include "eitcv/fock_oracle.hpp"
#include "eitcv/qnd_storage.hpp"
#include "eitcv/stirap.hpp"

#include <benchmark/benchmark.h>

#include <array>
#include <numbers>

namespace {

using namespace eitcv;

void BM_CorrelationReport(benchmark::State& state) {
  const SpinMoments spin = spin_moments(make_bec_medium_from_population(100, 0.5, std::numbers::pi / 4));
  const PolaritonAngle angle = PolaritonAngle::from_theta(std::numbers::pi / 4);
  for (auto _ : state) {
    benchmark::DoNotOptimize(correlation_report(QuadratureMoments::coherent(0, 0), spin, angle));
  }
}
BENCHMARK(BM_CorrelationReport);

void BM_Clone(benchmark::State& state) {
  const AtomicMediumState medium = make_bec_medium_from_population(100, 0.5, std::numbers::pi / 4);
  for (auto _ : state) {
    benchmark::DoNotOptimize(clone(QuadratureMoments::coherent(1.0, 0.5), medium));
  }
}
BENCHMARK(BM_Clone);

void BM_ExactBecMoments(benchmark::State& state) {
  const BecMedium m = make_bec_medium_from_population(static_cast<unsigned>(state.range(0)), 0.3, 0.7);
  for (auto _ : state) benchmark::DoNotOptimize(exact_bec_moments(m));
}
BENCHMARK(BM_ExactBecMoments)->Arg(10)->Arg(100)->Arg(200);

void BM_StirapPreset(benchmark::State& state) {
  const auto variant = state.range(0) == 0 ? EquationVariant::printed : EquationVariant::symmetrized;
  const StirapPreset preset = counterintuitive_preset(variant);
  for (auto _ : state) {
    benchmark::DoNotOptimize(integrate(preset.initial, preset.params, preset.t_end));
  }
}
BENCHMARK(BM_StirapPreset)->Arg(0)->Arg(1)->Unit(benchmark::kMillisecond);

void BM_OracleBeamsplitter(benchmark::State& state) {
  const auto cutoff = static_cast<std::size_t>(state.range(0));
  const std::array<oracle::Factor, 2> factors{
      oracle::ModeFactor{"f", cutoff, oracle::CoherentSpec{1.0}},
      oracle::ModeFactor{"xi", cutoff, oracle::SqueezedSpec{0.0, 0.3, 0.0}}};
  const oracle::FockState s = oracle::build_state(factors);
  for (auto _ : state) {
    benchmark::DoNotOptimize(oracle::apply_beamsplitter(s, "f", "xi", 0.6));
  }
}
BENCHMARK(BM_OracleBeamsplitter)->Arg(20)->Arg(30)->Unit(benchmark::kMillisecond);

void BM_OracleSqueezer(benchmark::State& state) {
  const auto cutoff = static_cast<std::size_t>(state.range(0));
  const std::array<oracle::Factor, 2> factors{
      oracle::ModeFactor{"f", cutoff, oracle::VacuumSpec{}},
      oracle::ModeFactor{"c", cutoff, oracle::VacuumSpec{}}};
  const oracle::FockState s = oracle::build_state(factors);
  for (auto _ : state) {
    benchmark::DoNotOptimize(oracle::apply_two_mode_squeezer(s, "f", "c"));
  }
}
BENCHMARK(BM_OracleSqueezer)->Arg(44)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
