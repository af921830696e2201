#include <benchmark/benchmark.h>

#include <memory>
#include <vector>

#include "fibercone/artinian.hpp"
#include "fibercone/invariants.hpp"
#include "fibercone/numsgp.hpp"
#include "fibercone/sgpideal.hpp"

namespace {

using fibercone::FiberAnalysis;
using fibercone::LocalCalculus;
using fibercone::NumericalSemigroup;
using fibercone::RationalField;
using fibercone::RawPoly;
using fibercone::SemigroupCalculus;
using fibercone::TruncatedRing;

// Repeated squaring-free power chain of a three-generator curve ideal.
void BM_CurvePowerChain(benchmark::State& state) {
  auto sgp = NumericalSemigroup::from_generators({7, 15, 17, 33});
  SemigroupCalculus calc(sgp);
  auto i = fibercone::ideal_from_monomials(sgp, {7, 17, 33});
  for (auto _ : state) {
    auto p = fibercone::power(i, static_cast<long long>(state.range(0)));
    benchmark::DoNotOptimize(p);
  }
}

// Full invariant report for a one-dimensional example, from scratch.
void BM_CurveFullReport(benchmark::State& state) {
  auto sgp = NumericalSemigroup::from_generators({7, 15, 17, 33});
  SemigroupCalculus calc(sgp);
  auto i = fibercone::ideal_from_monomials(sgp, {7, 17, 33});
  auto j = fibercone::ideal_from_monomials(sgp, {7});
  for (auto _ : state) {
    FiberAnalysis<SemigroupCalculus> an(calc, i, j);
    auto rep = an.report();
    benchmark::DoNotOptimize(rep);
  }
}

std::shared_ptr<const TruncatedRing<RationalField>> plane_ring(int trunc) {
  return std::make_shared<TruncatedRing<RationalField>>(
      2, trunc, RationalField{}, std::vector<std::string>{"x", "y"});
}

// Ideal product in a truncated two-variable power-series ring.
void BM_StaircaseProduct(benchmark::State& state) {
  auto ring = plane_ring(static_cast<int>(state.range(0)));
  LocalCalculus<RationalField> calc(ring);
  auto i = calc.from_polys({RawPoly::monomial({3, 0}), RawPoly::monomial({2, 1}),
                            RawPoly::monomial({0, 3})});
  for (auto _ : state) {
    auto p = calc.product(i, i);
    benchmark::DoNotOptimize(p);
  }
}

// One cell of the two-variable multiplicity table for the staircase
// ideal, including analysis construction.
void BM_MixedCell(benchmark::State& state) {
  auto ring = plane_ring(30);
  LocalCalculus<RationalField> calc(ring);
  auto i = calc.from_polys({RawPoly::monomial({3, 0}), RawPoly::monomial({2, 1}),
                            RawPoly::monomial({0, 3})});
  for (auto _ : state) {
    FiberAnalysis<LocalCalculus<RationalField>> an(calc, i);
    long long v = an.mixed_multiplicity(1, 1);
    benchmark::DoNotOptimize(v);
  }
}

BENCHMARK(BM_CurvePowerChain)->Arg(4)->Arg(8)->Arg(16);
BENCHMARK(BM_CurveFullReport);
BENCHMARK(BM_StaircaseProduct)->Arg(12)->Arg(20);
BENCHMARK(BM_MixedCell);

}  // namespace

BENCHMARK_MAIN();
