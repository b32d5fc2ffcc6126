#include <benchmark/benchmark.h>

#include <numbers>
#include <vector>

#include "qdo/coupling.hpp"
#include "qdo/dispersion.hpp"
#include "qdo/entanglement.hpp"
#include "qdo/gaussian_state.hpp"
#include "qdo/geometry.hpp"
#include "qdo/qubit.hpp"

namespace {

qdo::SiteSet square_sites(int side) {
  const std::vector<int> dims{side, side};
  return qdo::build_lattice(qdo::GeometryKind::square, dims, 2.5);
}

qdo::PotentialMatrix square(int side) { return qdo::build_potential(qdo::build_coupling(square_sites(side))); }

// Coupling assembly plus the symmetric eigendecomposition of V.
void BM_Potential(benchmark::State& state) {
  const auto w = qdo::build_coupling(square_sites(static_cast<int>(state.range(0))));
  for (auto _ : state) benchmark::DoNotOptimize(qdo::build_potential(w));
  state.SetLabel(std::to_string(w.n_modes()) + " modes");
}
BENCHMARK(BM_Potential)->Arg(5)->Arg(11)->Arg(15)->Unit(benchmark::kMillisecond);

void BM_GroundStateCM(benchmark::State& state) {
  const auto spec = qdo::spectrum(square(static_cast<int>(state.range(0))));
  for (auto _ : state) benchmark::DoNotOptimize(qdo::ground_state_cm(spec));
}
BENCHMARK(BM_GroundStateCM)->Arg(5)->Arg(11)->Unit(benchmark::kMillisecond);

void BM_MonogamyAudit(benchmark::State& state) {
  const auto cm = qdo::ground_state_cm(square(static_cast<int>(state.range(0))));
  for (auto _ : state) benchmark::DoNotOptimize(qdo::monogamy_audit(cm));
}
BENCHMARK(BM_MonogamyAudit)->Arg(5)->Arg(11)->Unit(benchmark::kMillisecond);

void BM_TrimerPipeline(benchmark::State& state) {
  for (auto _ : state) {
    const auto sites = qdo::build_trimer(2.5, 2.0);
    const auto w = qdo::build_coupling(sites);
    const auto spec = qdo::spectrum(qdo::build_potential(w));
    benchmark::DoNotOptimize(qdo::energy_breakdown(spec, sites, 60));
    benchmark::DoNotOptimize(qdo::monogamy_audit(qdo::ground_state_cm(spec)));
  }
}
BENCHMARK(BM_TrimerPipeline)->Unit(benchmark::kMicrosecond);

void BM_MixedPairTangle(benchmark::State& state) {
  const auto cm = qdo::ground_state_cm(qdo::build_potential(qdo::build_coupling(qdo::build_trimer(1.9, 2.0))));
  const auto sf = qdo::reduce_two_mode(cm, 0, 4);
  for (auto _ : state) benchmark::DoNotOptimize(qdo::mixed_pair_tangle(sf));
}
BENCHMARK(BM_MixedPairTangle)->Unit(benchmark::kMicrosecond);

void BM_QubitGroundState(benchmark::State& state) {
  const auto sites = qdo::build_chain(static_cast<int>(state.range(0)), 2.5, std::numbers::pi);
  const auto model = qdo::build_qubit_model(qdo::build_coupling(sites));
  for (auto _ : state) benchmark::DoNotOptimize(qdo::qubit_ground_state(model));
  state.SetLabel(std::to_string(model.qubits()) + " qubits");
}
BENCHMARK(BM_QubitGroundState)->Arg(3)->Arg(4)->Unit(benchmark::kMillisecond);

}  // namespace
