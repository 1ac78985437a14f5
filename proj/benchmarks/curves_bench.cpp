#include <benchmark/benchmark.h>

#include "negamm/curves.hpp"

namespace {

void BM_CsemmBranch(benchmark::State& state) {
  double x = 0.1;
  for (auto _ : state) {
    benchmark::DoNotOptimize(negamm::csemm_y_from_x(x, 3.0, 5.0));
    x = x < 5.9 ? x + 0.01 : 0.1;
  }
}
BENCHMARK(BM_CsemmBranch);

// Bisection cost of placing a superellipse pool at a target price.
void BM_CsemmPriceInversion(benchmark::State& state) {
  const double alpha = static_cast<double>(state.range(0));
  double p = -5.0;
  for (auto _ : state) {
    benchmark::DoNotOptimize(negamm::csemm_x_from_price(p, alpha, alpha));
    p = p < 5.0 ? p + 0.37 : -5.0;
  }
}
BENCHMARK(BM_CsemmPriceInversion)->Arg(3)->Arg(10)->Arg(30);

void BM_CcmmStateAtPrice(benchmark::State& state) {
  const auto spec = negamm::CurveSpec::ccmm(1.0);
  double p = -5.0;
  for (auto _ : state) {
    benchmark::DoNotOptimize(negamm::state_at_price(spec, p));
    p = p < 5.0 ? p + 0.37 : -5.0;
  }
}
BENCHMARK(BM_CcmmStateAtPrice);

}  // namespace
