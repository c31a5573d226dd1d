#include <benchmark/benchmark.h>

#include <random>

#include "deltachow/io.hpp"
#include "deltachow/poly.hpp"

using namespace deltachow;

namespace {

DiffPoly dense_poly(const RingPtr& ring, int nterms, unsigned seed) {
  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<int> var(0, static_cast<int>(ring->size()) - 1);
  std::uniform_int_distribution<int> ord(0, 3);
  std::uniform_int_distribution<int> exp(1, 3);
  std::uniform_int_distribution<int> coeff(-50, 50);
  std::vector<Term> terms;
  for (int i = 0; i < nterms; ++i) {
    std::vector<VarPow> f;
    for (int j = 0; j < 3; ++j)
      f.push_back({key_of(DerVar{static_cast<std::uint32_t>(var(rng)),
                                 static_cast<std::uint32_t>(ord(rng))}),
                   static_cast<std::uint32_t>(exp(rng))});
    int c = coeff(rng);
    terms.push_back({Monomial::from_factors(std::move(f)),
                     Coef::integer(ring->field(), c ? c : 1)});
  }
  return DiffPoly::from_terms(ring, std::move(terms));
}

void BM_PolyMul(benchmark::State& state) {
  auto ring = RingContext::make(FieldKind::Rationals, {"y1", "y2", "y3"});
  DiffPoly a = dense_poly(ring, static_cast<int>(state.range(0)), 1);
  DiffPoly b = dense_poly(ring, static_cast<int>(state.range(0)), 2);
  for (auto _ : state) {
    DiffPoly c = a * b;
    benchmark::DoNotOptimize(c);
  }
}
BENCHMARK(BM_PolyMul)->Arg(16)->Arg(64)->Arg(256);

void BM_Differentiate(benchmark::State& state) {
  auto ring = RingContext::make(FieldKind::Rationals, {"y1", "y2", "y3"});
  DiffPoly a = dense_poly(ring, static_cast<int>(state.range(0)), 3);
  for (auto _ : state) {
    DiffPoly d = a.differentiate();
    benchmark::DoNotOptimize(d);
  }
}
BENCHMARK(BM_Differentiate)->Arg(64)->Arg(256);

}  // namespace
