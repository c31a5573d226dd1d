#include <benchmark/benchmark.h>

#include "deltachow/chow.hpp"
#include "deltachow/io.hpp"

using namespace deltachow;

namespace {

RingPtr qring(std::vector<std::string> names) {
  return RingContext::make(FieldKind::Rationals, std::move(names));
}

DiffChain chain_of(const RingPtr& r, std::vector<std::string> polys) {
  std::vector<DiffPoly> ps;
  for (const auto& s : polys) ps.push_back(parse_poly(s, r));
  return *charset(ps, Ranking::orderly(r)).chain;
}

void BM_ChowHypersurface(benchmark::State& state) {
  auto r = qring({"y1"});
  DiffPoly p = parse_poly("y1'^2-4*y1", r);
  for (auto _ : state) {
    ChowForm C = chow_hypersurface(p);
    benchmark::DoNotOptimize(C);
  }
}
BENCHMARK(BM_ChowHypersurface);

void BM_ChowPipeline49(benchmark::State& state) {
  auto r = qring({"y1", "y2"});
  DiffChain A = chain_of(r, {"y1'+1", "y2'"});
  for (auto _ : state) {
    ChowForm C = chow_form(A);
    benchmark::DoNotOptimize(C);
  }
}
BENCHMARK(BM_ChowPipeline49);

void BM_DifferentialResultant206(benchmark::State& state) {
  auto r = qring({"y"});
  for (auto _ : state) {
    ChowForm R = generalized_chow(std::nullopt, r,
                                  {GenericShape{0, 2}, GenericShape{1, 2}});
    benchmark::DoNotOptimize(R);
  }
}
BENCHMARK(BM_DifferentialResultant206);

void BM_MatrixCertificate(benchmark::State& state) {
  auto r = qring({"y"});
  ChowForm R = generalized_chow(std::nullopt, r,
                                {GenericShape{0, 2}, GenericShape{1, 2}});
  for (auto _ : state) {
    MatrixCertificate cert = resultant_matrix_1var(R);
    benchmark::DoNotOptimize(cert);
  }
}
BENCHMARK(BM_MatrixCertificate);

}  // namespace
