// Serial reference kernels against their OpenMP counterparts on the
// exhaustive axiom scans that dominate checking time.

#include <benchmark/benchmark.h>

#include "qlab/check.hpp"
#include "qlab/kernels.hpp"
#include "qlab/quantale.hpp"
#include "qlab/workbench/generators.hpp"

using namespace qlab;

namespace {

const SupportedQuantale& rel3() {
  static const SupportedQuantale q = rel_quantale(3);
  return q;
}

// Associativity of Rel(3): 512^3 triples.
template <class Scan>
void associativity(benchmark::State& state, Scan scan) {
  const auto& b = rel3().based;
  const std::uint64_t n = b.size();
  for (auto _ : state) {
    const auto r = scan(n * n * n, [&](std::uint64_t i) {
      const Elem x = static_cast<Elem>(i / (n * n)), y = static_cast<Elem>(i / n % n), z = static_cast<Elem>(i % n);
      return b.mul(b.mul(x, y), z) != b.mul(x, b.mul(y, z));
    });
    benchmark::DoNotOptimize(r);
  }
  state.SetItemsProcessed(static_cast<std::int64_t>(state.iterations() * n * n * n));
}

void BM_AssociativitySerial(benchmark::State& state) {
  associativity(state, [](std::uint64_t c, auto&& p) { return kernels::serial::scan(c, p); });
}
void BM_AssociativityOpenMP(benchmark::State& state) {
  associativity(state, [](std::uint64_t c, auto&& p) { return kernels::omp::scan(c, p); });
}

// The full groupoid-quantale certification of Rel(2) under each default.
void certification(benchmark::State& state, kernels::Exec exec) {
  const auto q = rel_quantale(2);
  kernels::set_default_exec(exec);
  for (auto _ : state) {
    auto rep = is_groupoid_quantale(q.based, &*q.sigma, &*q.upsilon);
    benchmark::DoNotOptimize(rep);
  }
  kernels::set_default_exec(kernels::Exec::serial);
}

void BM_CertifyRel2Serial(benchmark::State& state) { certification(state, kernels::Exec::serial); }
void BM_CertifyRel2OpenMP(benchmark::State& state) { certification(state, kernels::Exec::parallel); }

}  // namespace

BENCHMARK(BM_AssociativitySerial)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_AssociativityOpenMP)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_CertifyRel2Serial)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_CertifyRel2OpenMP)->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
