#include "deltachow/chain.hpp"

#include <algorithm>
#include <set>

#include "deltachow/error.hpp"
#include "deltachow/io.hpp"

namespace deltachow {

namespace {

// Sparse pseudo-division w.r.t. x: init(g)^k * f = q*g + r with deg(r,x) <
// deg(g,x); k counts only the multiplications actually performed.
std::pair<DiffPoly, std::uint32_t> pseudo_rem(const DiffPoly& f, const DiffPoly& g,
                                              DerVar x) {
  std::uint32_t dg = g.degree_of(x);
  if (dg == 0) throw MathError("internal", "pseudo-division by x-free divisor");
  DiffPoly init = g.coeff_of_power(x, dg);
  DiffPoly tail = g - init.times_mono(Monomial::var(x, dg));
  DiffPoly r = f;
  std::uint32_t k = 0;
  while (!r.is_zero()) {
    std::uint32_t dr = r.degree_of(x);
    if (dr < dg) break;
    DiffPoly lc = r.coeff_of_power(x, dr);
    // r := init*r - lc*x^{dr-dg}*g  (top x-power cancels)
    DiffPoly rest = r - lc.times_mono(Monomial::var(x, dr));
    r = init * rest - (lc * tail).times_mono(Monomial::var(x, dr - dg));
    ++k;
  }
  return {std::move(r), k};
}

}  // namespace

DiffChain::DiffChain(std::vector<DiffPoly> elems, Ranking ranking)
    : ranking_(std::move(ranking)) {
  if (elems.empty()) throw MathError("bad_chain", "empty chain");
  for (auto& p : elems) {
    require_same_ring(p.ring(), ranking_.ring());
    if (p.is_zero()) throw MathError("bad_chain", "chain contains zero");
    if (!p.has_main_dervar())
      throw MathError("bad_chain", "chain element lies in the parameter/base field");
  }
  std::sort(elems.begin(), elems.end(), [&](const DiffPoly& a, const DiffPoly& b) {
    RankOrder c = compare_rank(a, b, ranking_);
    if (c != RankOrder::Same) return c == RankOrder::Lower;
    return format_poly(a) < format_poly(b);
  });
  for (auto& p : elems) {
    RankDecomposition d = decompose(p, ranking_);
    elems_.push_back({std::move(p), d.leader, std::move(d.initial),
                      std::move(d.separant), d.rank_degree});
  }
  // delta-chain conditions: leaders delta-autoreduced (pairwise distinct
  // variables in the ordinary case) and elements partially reduced.
  for (std::size_t i = 0; i < elems_.size(); ++i) {
    for (std::size_t j = 0; j < elems_.size(); ++j) {
      if (i == j) continue;
      if (elems_[i].leader.var == elems_[j].leader.var)
        throw MathError("bad_chain", "chain leaders are not delta-autoreduced");
      auto ord = elems_[i].poly.order_of(elems_[j].leader.var);
      if (ord && *ord > static_cast<int>(elems_[j].leader.ord))
        throw MathError("bad_chain", "chain element not partially reduced");
    }
  }
  // no initial may reduce to zero by the chain
  for (const auto& e : elems_) {
    if (!e.initial.has_main_dervar()) continue;  // nonzero field/parameter element
    if (ritt_reduce(e.initial, *this).remainder.is_zero())
      throw MathError("bad_chain", "an initial reduces to zero by the chain");
  }
}

std::vector<DiffPoly> DiffChain::polys() const {
  std::vector<DiffPoly> out;
  out.reserve(elems_.size());
  for (const auto& e : elems_) out.push_back(e.poly);
  return out;
}

DiffPoly ReductionCertificate::multiplier(const DiffChain& chain) const {
  DiffPoly m = DiffPoly::integer(chain.ring(), 1);
  for (std::size_t i = 0; i < chain.size(); ++i) {
    const auto& [d, e] = multiplier_exponents[i];
    if (d > 0) m = m * chain.elements()[i].separant.pow(d);
    if (e > 0) m = m * chain.elements()[i].initial.pow(e);
  }
  return m;
}

ReductionCertificate ritt_reduce(const DiffPoly& f, const DiffChain& chain) {
  require_same_ring(f.ring(), chain.ring());
  const auto& elems = chain.elements();
  ReductionCertificate cert;
  cert.multiplier_exponents.assign(elems.size(), {0, 0});
  DiffPoly r = f;

  // Phase 1: eliminate proper derivatives of leaders, highest-ranked first.
  while (!r.is_zero()) {
    bool found = false;
    DerVar worst{};
    std::size_t which = 0;
    for (const auto& t : r.terms()) {
      for (const auto& fac : t.mono.factors()) {
        DerVar v = dervar_of(fac.key);
        for (std::size_t i = 0; i < elems.size(); ++i) {
          if (v.var == elems[i].leader.var && v.ord > elems[i].leader.ord) {
            if (!found || chain.ranking().less(worst, v)) {
              worst = v;
              which = i;
              found = true;
            }
          }
        }
      }
    }
    if (!found) break;
    std::uint32_t k = worst.ord - elems[which].leader.ord;
    DiffPoly b = elems[which].poly.differentiate(k);
    auto [nr, mult] = pseudo_rem(r, b, worst);
    r = std::move(nr);
    cert.multiplier_exponents[which].first += mult;  // separant power
  }

  // Phase 2: algebraic pseudo-division, highest leader first.
  for (std::size_t ri = elems.size(); ri-- > 0;) {
    if (r.is_zero()) break;
    if (r.degree_of(elems[ri].leader) >= elems[ri].degree) {
      auto [nr, mult] = pseudo_rem(r, elems[ri].poly, elems[ri].leader);
      r = std::move(nr);
      cert.multiplier_exponents[ri].second += mult;  // initial power
    }
  }
  cert.remainder = std::move(r);
  return cert;
}

bool sat_membership(const DiffPoly& f, const DiffChain& chain) {
  return ritt_reduce(f, chain).remainder.is_zero();
}

bool is_reduced_wrt(const DiffPoly& f, const DiffChain& chain) {
  for (const auto& e : chain.elements()) {
    auto ord = f.order_of(e.leader.var);
    if (ord && *ord > static_cast<int>(e.leader.ord)) return false;
    if (f.degree_of(e.leader) >= e.degree) return false;
  }
  return true;
}

namespace {

bool reduced_wrt_elem(const DiffPoly& f, const DiffPoly& b, const Ranking& rk) {
  RankDecomposition d = decompose(b, rk);
  auto ord = f.order_of(d.leader.var);
  if (ord && *ord > static_cast<int>(d.leader.ord)) return false;
  if (f.degree_of(d.leader) >= d.rank_degree) return false;
  return true;
}

}  // namespace

CharsetResult charset(std::vector<DiffPoly> gens, const Ranking& ranking) {
  CharsetResult result;
  std::vector<DiffPoly> work;
  std::set<std::string> seen;
  auto push = [&](const DiffPoly& p) {
    if (p.is_zero()) return false;
    if (!p.has_main_dervar()) {
      result.unit_ideal = true;  // nonzero base-field/parameter element
      return true;
    }
    DiffPoly q = p.primitive_normalized();
    std::string key = format_poly(q);
    if (seen.insert(key).second) work.push_back(std::move(q));
    return false;
  };
  bool any = false;
  for (const auto& g : gens) {
    require_same_ring(g.ring(), ranking.ring());
    if (!g.is_zero()) any = true;
    if (push(g)) return result;
  }
  if (!any) throw MathError("bad_input", "characteristic set of the zero set");

  for (int round = 0; round < 10000; ++round) {
    std::sort(work.begin(), work.end(), [&](const DiffPoly& a, const DiffPoly& b) {
      RankOrder c = compare_rank(a, b, ranking);
      if (c != RankOrder::Same) return c == RankOrder::Lower;
      return format_poly(a) < format_poly(b);
    });
    // greedy minimal-rank autoreduced subset
    std::vector<DiffPoly> basic;
    std::vector<bool> in_basic(work.size(), false);
    for (std::size_t i = 0; i < work.size(); ++i) {
      bool ok = true;
      for (const auto& b : basic) {
        if (!reduced_wrt_elem(work[i], b, ranking) ||
            !reduced_wrt_elem(b, work[i], ranking)) {
          ok = false;
          break;
        }
      }
      if (ok) {
        basic.push_back(work[i]);
        in_basic[i] = true;
      }
    }
    DiffChain chain(basic, ranking);
    bool grew = false;
    for (std::size_t i = 0; i < work.size(); ++i) {
      if (in_basic[i]) continue;
      DiffPoly rem = ritt_reduce(work[i], chain).remainder;
      if (rem.is_zero()) continue;
      if (push(rem)) return result;
      grew = true;
    }
    if (!grew) {
      result.chain = std::move(chain);
      return result;
    }
  }
  throw MathError("resource_limit", "characteristic set iteration did not settle");
}

DimOrder dim_order(const DiffChain& chain) {
  if (chain.ranking().kind() != RankingKind::Orderly)
    throw MathError("bad_ranking",
                    "dimension/order are read from an orderly characteristic set");
  DimOrder d;
  std::set<std::uint32_t> leaders;
  for (const auto& e : chain.elements()) {
    d.order += static_cast<int>(e.leader.ord);
    leaders.insert(e.leader.var);
  }
  const RingContext& ring = *chain.ring();
  for (std::uint32_t v : ring.main_vars())
    if (!leaders.count(v)) d.parametric_set.push_back(v);
  d.dimension = static_cast<int>(ring.main_count()) - static_cast<int>(chain.size());
  return d;
}

std::optional<int> relative_order(const DiffChain& chain,
                                  const std::vector<std::string>& parametric) {
  const RingPtr& ring = chain.ring();
  std::vector<std::string> ascending;
  for (std::uint32_t v : ring->parameter_vars()) ascending.push_back(ring->name(v));
  std::set<std::string> in_param(parametric.begin(), parametric.end());
  for (const auto& name : parametric) {
    auto idx = ring->index_of(name);
    if (!idx || !ring->is_main(*idx))
      throw MathError("bad_input", "parametric set member " + name + " is not a MAIN variable");
    ascending.push_back(name);
  }
  for (std::uint32_t v : ring->main_vars())
    if (!in_param.count(ring->name(v))) ascending.push_back(ring->name(v));
  Ranking elim = Ranking::elimination(ring, ascending);
  CharsetResult cs = charset(chain.polys(), elim);
  if (cs.unit_ideal || !cs.chain) return std::nullopt;
  int order = 0;
  for (const auto& e : cs.chain->elements()) order += static_cast<int>(e.leader.ord);
  return order;
}

}  // namespace deltachow
