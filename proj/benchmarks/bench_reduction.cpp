#include <benchmark/benchmark.h>

#include <random>

#include "deltachow/chain.hpp"
#include "deltachow/io.hpp"

using namespace deltachow;

namespace {

void BM_RittReduce(benchmark::State& state) {
  auto r = RingContext::make(FieldKind::Rationals, {"y1", "y2"});
  DiffChain A({parse_poly("y1'^2-4*y1", r), parse_poly("y2'*y1-1", r)},
              Ranking::orderly(r));
  std::mt19937_64 rng(1);
  std::uniform_int_distribution<int> coeff(-9, 9);
  std::vector<DiffPoly> inputs;
  for (int i = 0; i < 16; ++i) {
    DiffPoly p = parse_poly("y1''*y2'' + y1'*y2 - y2'^2", r);
    inputs.push_back(p.scaled(Coef::from_mpq(mpq_class(coeff(rng) ? coeff(rng) : 1))) *
                     parse_poly("y1+1", r));
  }
  std::size_t i = 0;
  for (auto _ : state) {
    ReductionCertificate c = ritt_reduce(inputs[i++ % inputs.size()], A);
    benchmark::DoNotOptimize(c);
  }
}
BENCHMARK(BM_RittReduce);

void BM_Charset(benchmark::State& state) {
  auto r = RingContext::make(FieldKind::Rationals, {"y1", "y2"});
  std::vector<DiffPoly> gens = {parse_poly("y1'-y2", r), parse_poly("y2'-y1", r),
                                parse_poly("y1''-y1", r)};
  for (auto _ : state) {
    CharsetResult cs = charset(gens, Ranking::orderly(r));
    benchmark::DoNotOptimize(cs);
  }
}
BENCHMARK(BM_Charset);

}  // namespace
