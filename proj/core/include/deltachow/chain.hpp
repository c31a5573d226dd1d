#pragma once

#include <optional>
#include <vector>

#include "deltachow/ranking.hpp"

namespace deltachow {

// One element of a delta-chain with its cached rank decomposition.
struct ChainElem {
  DiffPoly poly;
  DerVar leader;
  DiffPoly initial;
  DiffPoly separant;
  std::uint32_t degree = 0;
};

// Ordered autoreduced set (delta-chain): leaders pairwise delta-autoreduced,
// each element partially reduced w.r.t. the others, no initial reduced to
// zero by the chain. Elements stored in nondecreasing rank.
class DiffChain {
 public:
  DiffChain(std::vector<DiffPoly> elems, Ranking ranking);

  const Ranking& ranking() const { return ranking_; }
  const RingPtr& ring() const { return ranking_.ring(); }
  const std::vector<ChainElem>& elements() const { return elems_; }
  std::size_t size() const { return elems_.size(); }
  std::vector<DiffPoly> polys() const;

 private:
  std::vector<ChainElem> elems_;
  Ranking ranking_;
};

// Certificate of Ritt's reduction: prod_i S_i^{d_i} I_i^{e_i} * f == remainder
// modulo [A], with the remainder reduced w.r.t. A.
struct ReductionCertificate {
  DiffPoly remainder;
  std::vector<std::pair<std::uint32_t, std::uint32_t>> multiplier_exponents;  // (d_i, e_i)
  // The accumulated multiplier prod_i S_i^{d_i} I_i^{e_i}.
  DiffPoly multiplier(const DiffChain& chain) const;
};

ReductionCertificate ritt_reduce(const DiffPoly& f, const DiffChain& chain);

// true iff f ritt-reduces to zero; exact membership in sat(A) when the chain
// is a characteristic set of a prime ideal (caller-asserted).
bool sat_membership(const DiffPoly& f, const DiffChain& chain);

// Is f reduced w.r.t. the chain (partially reduced and degree-bounded)?
bool is_reduced_wrt(const DiffPoly& f, const DiffChain& chain);

// Ritt-Wu characteristic set of a finite set. unit_ideal is set when the
// iteration exposes a nonzero base-field/parameter-only element.
struct CharsetResult {
  std::optional<DiffChain> chain;
  bool unit_ideal = false;
};

CharsetResult charset(std::vector<DiffPoly> gens, const Ranking& ranking);

// Dimension / order data of a characteristic set.
struct DimOrder {
  int dimension = 0;
  int order = 0;
  std::vector<std::uint32_t> parametric_set;  // non-leader MAIN variables
};

// Requires an orderly ranking (the order field is only meaningful there).
DimOrder dim_order(const DiffChain& chain);

// Order of a charset of the same generators recomputed under the elimination
// ranking that places `parametric` lowest. nullopt if that charset collapses
// to the unit ideal.
std::optional<int> relative_order(const DiffChain& chain,
                                  const std::vector<std::string>& parametric);

}  // namespace deltachow
