#include "deltachow/chow.hpp"

#include <algorithm>
#include <set>

#include "deltachow/io.hpp"
#include "deltachow/ratfun.hpp"

namespace deltachow {

std::string chow_var_name(int block, int index) {
  if (index <= 9) return "u" + std::to_string(block) + std::to_string(index);
  return "u" + std::to_string(block) + "_" + std::to_string(index);
}

std::vector<Monomial> shape_monomials(const RingPtr& base_ring,
                                      const GenericShape& shape) {
  if (shape.degree < 1) throw MathError("bad_input", "generic shape needs degree >= 1");
  if (shape.order < 0) throw MathError("bad_input", "generic shape needs order >= 0");
  std::vector<std::uint32_t> mains = base_ring->main_vars();
  // variable sequence: order-major, variable-minor
  std::vector<DerVar> seq;
  for (int k = 0; k <= shape.order; ++k)
    for (std::uint32_t v : mains) seq.push_back(DerVar{v, static_cast<std::uint32_t>(k)});
  std::vector<std::vector<std::uint32_t>> expos;
  std::vector<std::uint32_t> cur(seq.size(), 0);
  std::function<void(std::size_t, int)> rec = [&](std::size_t i, int left) {
    if (i == seq.size()) {
      expos.push_back(cur);
      return;
    }
    for (int e = 0; e <= left; ++e) {
      cur[i] = static_cast<std::uint32_t>(e);
      rec(i + 1, left - e);
    }
    cur[i] = 0;
  };
  rec(0, shape.degree);
  std::sort(expos.begin(), expos.end(),
            [](const std::vector<std::uint32_t>& a, const std::vector<std::uint32_t>& b) {
              std::uint32_t da = 0, db = 0;
              for (auto x : a) da += x;
              for (auto x : b) db += x;
              if (da != db) return da < db;
              return a > b;  // lexicographic descending within a degree
            });
  std::vector<Monomial> out;
  out.reserve(expos.size());
  for (const auto& e : expos) {
    std::vector<VarPow> f;
    for (std::size_t i = 0; i < seq.size(); ++i)
      if (e[i] > 0) f.push_back({key_of(seq[i]), e[i]});
    out.push_back(Monomial::from_factors(std::move(f)));
  }
  return out;
}

namespace {

// Layout of the u-variable blocks over a base y-ring.
struct BlockLayout {
  RingPtr compute_ring;  // y's MAIN, all u's PARAMETER, u00 last
  RingPtr out_ring;      // u's only, natural order, all MAIN
  std::vector<ChowBlock> compute_blocks;  // indices into compute_ring
  std::vector<ChowBlock> out_blocks;      // indices into out_ring
};

BlockLayout make_layout(const RingPtr& base_ring,
                        const std::vector<GenericShape>& shapes) {
  BlockLayout L;
  int d = static_cast<int>(shapes.size()) - 1;
  std::vector<std::vector<Monomial>> monos(shapes.size());
  for (std::size_t i = 0; i < shapes.size(); ++i)
    monos[i] = shape_monomials(base_ring, shapes[i]);

  // computation ring: blocks 1..d in full, block 0 without u00, u00 last
  std::vector<std::string> names;
  std::vector<VarKind> kinds;
  for (int i = 1; i <= d; ++i)
    for (std::size_t j = 0; j < monos[static_cast<std::size_t>(i)].size(); ++j) {
      names.push_back(chow_var_name(i, static_cast<int>(j)));
      kinds.push_back(VarKind::Parameter);
    }
  for (std::size_t j = 1; j < monos[0].size(); ++j) {
    names.push_back(chow_var_name(0, static_cast<int>(j)));
    kinds.push_back(VarKind::Parameter);
  }
  names.push_back(chow_var_name(0, 0));
  kinds.push_back(VarKind::Parameter);
  L.compute_ring = base_ring->extended(names, kinds);

  std::vector<std::string> unames;
  for (std::size_t i = 0; i < shapes.size(); ++i)
    for (std::size_t j = 0; j < monos[i].size(); ++j)
      unames.push_back(chow_var_name(static_cast<int>(i), static_cast<int>(j)));
  L.out_ring = RingContext::make(base_ring->field(), unames);

  for (std::size_t i = 0; i < shapes.size(); ++i) {
    ChowBlock cb, ob;
    cb.monomials = monos[i];
    ob.monomials = monos[i];
    for (std::size_t j = 0; j < monos[i].size(); ++j) {
      auto name = chow_var_name(static_cast<int>(i), static_cast<int>(j));
      cb.vars.push_back(L.compute_ring->index_of(name).value());
      ob.vars.push_back(L.out_ring->index_of(name).value());
    }
    L.compute_blocks.push_back(std::move(cb));
    L.out_blocks.push_back(std::move(ob));
  }
  return L;
}

// P_i = u_{i0} + sum_j u_{ij} * M_j in the computation ring.
DiffPoly generic_poly(const BlockLayout& L, std::size_t block) {
  const ChowBlock& b = L.compute_blocks[block];
  const RingPtr& R = L.compute_ring;
  DiffPoly acc = DiffPoly::var(R, DerVar{b.vars[0], 0});
  for (std::size_t j = 1; j < b.vars.size(); ++j) {
    // base-ring monomials keep their variable indices inside the extension
    DiffPoly m = DiffPoly::from_terms(
        R, {{b.monomials[j], Coef::one(R->field())}});
    acc = acc + DiffPoly::var(R, DerVar{b.vars[j], 0}) * m;
  }
  return acc;
}

void measure_metadata(ChowForm& C) {
  const RingPtr& R = C.poly.ring();
  (void)R;
  // h and g from u00
  DerVar u00{C.blocks[0].vars[0], 0};
  auto h = C.poly.order_of(u00.var);
  if (!h) throw MathError("chow_invariant", "u00 does not occur in the Chow form");
  C.h = *h;
  C.g = C.poly.degree_of(DerVar{u00.var, static_cast<std::uint32_t>(C.h)});
  for (auto& b : C.blocks) {
    auto bo = C.poly.order_of(b.vars[0]);
    if (!bo)
      throw MathError("chow_invariant",
                      "a block's u_{i0} does not occur in the Chow form");
    b.order = *bo;
    // per-block homogeneity degree: uniform term degree in the block's vars
    std::uint32_t deg = 0;
    bool first = true;
    for (const auto& t : C.poly.terms()) {
      std::uint32_t td = 0;
      for (const auto& f : t.mono.factors()) {
        std::uint32_t var = dervar_of(f.key).var;
        if (std::find(b.vars.begin(), b.vars.end(), var) != b.vars.end())
          td += f.exp;
      }
      if (first) {
        deg = td;
        first = false;
      } else if (td != deg) {
        throw MathError("chow_invariant",
                        "Chow form is not homogeneous in a coefficient block");
      }
    }
    b.degree = deg;
  }
}

}  // namespace

void remeasure_chow(ChowForm& C) { measure_metadata(C); }

ChowForm assemble_chow_form(RingPtr base_ring, std::vector<GenericShape> shapes,
                            const DiffPoly& poly_in_uring) {
  if (shapes.empty()) throw MathError("bad_input", "at least one shape required");
  BlockLayout L = make_layout(base_ring, shapes);
  ChowForm C;
  C.base_ring = std::move(base_ring);
  C.poly = poly_in_uring.mapped_by_name(L.out_ring);
  C.n = static_cast<int>(C.base_ring->size());
  C.d = static_cast<int>(shapes.size()) - 1;
  C.shapes = std::move(shapes);
  C.blocks = L.out_blocks;
  measure_metadata(C);
  return C;
}

// ---------------------------------------------------------------------------
// Hypersurface closed form

ChowForm chow_hypersurface(const DiffPoly& p) {
  const RingPtr& base = p.ring();
  if (p.is_constant()) throw MathError("bad_input", "Chow form of a constant");
  if (base->main_count() != base->size())
    throw MathError("bad_input", "hypersurface base ring must be all MAIN variables");
  int n = static_cast<int>(base->size());
  std::vector<GenericShape> shapes(static_cast<std::size_t>(n), GenericShape{0, 1});
  BlockLayout L = make_layout(base, shapes);
  const RingPtr& R = L.compute_ring;
  DiffPoly pc = p.mapped_by_name(R);

  auto uc = [&](int i, int j) {
    return DiffPoly::var(R, DerVar{L.compute_blocks[static_cast<std::size_t>(i)]
                                       .vars[static_cast<std::size_t>(j)],
                                   0});
  };
  // D and the column-replaced D_i
  std::vector<std::vector<DiffPoly>> dm(static_cast<std::size_t>(n),
                                        std::vector<DiffPoly>(static_cast<std::size_t>(n)));
  for (int i = 0; i < n; ++i)
    for (int j = 1; j <= n; ++j) dm[static_cast<std::size_t>(i)][static_cast<std::size_t>(j - 1)] = uc(i, j);
  DiffPoly D = poly_determinant(dm);
  std::vector<DiffPoly> Di;
  for (int col = 0; col < n; ++col) {
    auto m = dm;
    for (int i = 0; i < n; ++i) m[static_cast<std::size_t>(i)][static_cast<std::size_t>(col)] = -uc(i, 0);
    Di.push_back(poly_determinant(m));
  }

  // jets xi_i^{(k)} = N / D^{k+1}
  struct DPow {
    DiffPoly num;
    std::uint32_t k = 0;
  };
  std::vector<std::vector<DPow>> jets(static_cast<std::size_t>(n));
  auto jet = [&](std::uint32_t var, std::uint32_t ord) -> const DPow& {
    auto idx = base->index_of(base->name(var));
    (void)idx;
    auto& js = jets[var];
    if (js.empty()) js.push_back({Di[var], 1});
    while (js.size() <= ord) {
      const DPow& prev = js.back();
      DiffPoly num = prev.num.differentiate() * D -
                     DiffPoly::integer(R, static_cast<long>(prev.k)) * prev.num *
                         D.differentiate();
      js.push_back({std::move(num), prev.k + 1});
    }
    return js[ord];
  };

  // evaluate p at the jets over a common power of D
  std::uint32_t K = 0;
  std::vector<std::pair<DiffPoly, std::uint32_t>> parts;
  for (const auto& t : pc.terms()) {
    DiffPoly num = DiffPoly::constant(R, t.coef);
    std::uint32_t k = 0;
    for (const auto& f : t.mono.factors()) {
      DerVar v = dervar_of(f.key);
      if (v.var >= static_cast<std::uint32_t>(n))
        throw MathError("bad_input", "hypersurface polynomial mentions non-y variables");
      const DPow& j = jet(v.var, v.ord);
      for (std::uint32_t e = 0; e < f.exp; ++e) {
        num = num * j.num;
        k += j.k;
      }
    }
    parts.push_back({std::move(num), k});
    K = std::max(K, k);
  }
  DiffPoly F = DiffPoly::zero(R);
  for (auto& [num, k] : parts) F = F + num * D.pow(K - k);
  if (F.is_zero()) throw MathError("chow_invariant", "hypersurface substitution vanished");
  // minimal denomination: strip every full power of D
  while (true) {
    auto q = exact_divide(F, D);
    if (!q) break;
    F = std::move(*q);
  }

  ChowForm C;
  C.base_ring = base;
  C.poly = F.mapped_by_name(L.out_ring).primitive_normalized();
  if (C.poly.leading_term().coef.is_negative_leading()) C.poly = -C.poly;
  C.n = n;
  C.d = n - 1;
  C.shapes = shapes;
  C.blocks = L.out_blocks;
  measure_metadata(C);
  return C;
}

// ---------------------------------------------------------------------------
// General elimination pipeline

ChowForm generalized_chow(const std::optional<DiffChain>& A, RingPtr base_ring,
                          const std::vector<GenericShape>& shapes,
                          ResourceGuard& guard,
                          std::function<void(const GroebnerBasis&)> trace) {
  if (shapes.empty()) throw MathError("bad_input", "at least one generic shape required");
  if (A) {
    require_same_ring(A->ring(), base_ring);
    if (A->ranking().kind() != RankingKind::Orderly)
      throw MathError("bad_ranking", "chow pipeline expects an orderly characteristic set");
  }
  if (base_ring->main_count() != base_ring->size())
    throw MathError("bad_input", "chow base ring must be all MAIN variables");
  int n = static_cast<int>(base_ring->size());
  int d = A ? dim_order(*A).dimension : n;
  int h = A ? dim_order(*A).order : 0;
  if (static_cast<int>(shapes.size()) != d + 1)
    throw MathError("bad_input",
                    "need dimension+1 generic shapes (d=" + std::to_string(d) + ")");
  if (d == n && A)
    throw MathError("bad_input", "d = n Chow forms exist only for the zero ideal");

  int s = 0;
  for (const auto& sh : shapes) s += sh.order;
  int h0 = h + s - shapes[0].order;

  BlockLayout L = make_layout(base_ring, shapes);
  const RingPtr& R = L.compute_ring;

  // stage A: orderly characteristic set of [I, P_1..P_d]
  std::vector<DiffPoly> gens;
  if (A)
    for (const auto& e : A->elements()) gens.push_back(e.poly.mapped_by_name(R));
  for (int i = 1; i <= d; ++i) gens.push_back(generic_poly(L, static_cast<std::size_t>(i)));
  if (gens.empty()) throw MathError("bad_input", "empty system (zero ideal with d = 0)");
  Ranking orderly = Ranking::orderly(R);
  CharsetResult cs = charset(gens, orderly);
  if (cs.unit_ideal || !cs.chain)
    throw MathError("inconsistent_system",
                    "the intersected system collapsed to the unit ideal");
  const DiffChain& C = *cs.chain;
  if (static_cast<int>(C.size()) != n)
    throw MathError("not_zero_dimensional",
                    "intersection with generic polynomials is not zero-dimensional");
  int horder = 0;
  for (const auto& e : C.elements()) horder += static_cast<int>(e.leader.ord);
  if (horder != h0)
    throw MathError("charset_order_mismatch",
                    "intersection order " + std::to_string(horder) +
                        " differs from the expected " + std::to_string(h0));

  // stage B: prolong to total y-order h + s, adjoin the frozen aP0 chain
  int t = h + s;
  std::vector<DiffPoly> sysPolys = C.polys();
  std::vector<std::uint32_t> bounds;
  for (const auto& e : C.elements())
    bounds.push_back(static_cast<std::uint32_t>(t - static_cast<int>(e.leader.ord)));
  sysPolys.push_back(generic_poly(L, 0));
  bounds.push_back(static_cast<std::uint32_t>(h0));
  AlgSystem sys = prolong(sysPolys, bounds);

  // saturate by the initials and separants that involve Y
  DiffPoly sat = DiffPoly::integer(R, 1);
  std::set<std::string> seen;
  for (const auto& e : C.elements()) {
    for (const DiffPoly* q : {&e.initial, &e.separant}) {
      if (!q->has_main_dervar()) continue;
      DiffPoly qq = q->primitive_normalized();
      if (seen.insert(format_poly(qq)).second) sat = sat * qq;
    }
  }

  auto finish = [&](const GroebnerBasis& gb) -> ChowForm {
    if (gb.generators.empty())
      throw MathError("eliminant_missing",
                      "elimination produced no keep-only generator; the "
                      "prolongation bound did not close the fiber");
    for (const auto& g : gb.generators)
      if (g.is_constant())
        throw MathError("inconsistent_system", "elimination ideal is the unit ideal");

    ChowForm out;
    DiffPoly g0 = gb.generators.front();
    if (gb.generators.size() > 1) {
      for (std::size_t i = 1; i < gb.generators.size(); ++i)
        g0 = alg_gcd(g0, gb.generators[i]);
      out.warnings.push_back("elimination ideal not principal; returning the gcd of " +
                             std::to_string(gb.generators.size()) + " generators");
    }

    std::uint32_t u00 = L.compute_blocks[0].vars[0];
    DerVar u00h{u00, static_cast<std::uint32_t>(h0)};
    if (g0.degree_of(u00h) == 0)
      throw MathError("eliminant_missing_u00h",
                      "eliminant does not involve u00^{(" + std::to_string(h0) +
                          ")}; prolongation bound failure");
    DiffPoly F = primitive_part_wrt(g0, u00h);
    DiffPoly sf = squarefree_part_wrt(F, u00h);
    if (!(sf == F)) {
      out.warnings.push_back("eliminant had repeated factors; squarefree part taken");
      F = sf;
    }

    out.base_ring = base_ring;
    out.poly = F.mapped_by_name(L.out_ring).primitive_normalized();
    if (out.poly.leading_term().coef.is_negative_leading()) out.poly = -out.poly;
    out.n = n;
    out.d = d;
    out.shapes = shapes;
    out.blocks = L.out_blocks;
    measure_metadata(out);
    if (out.h != h0)
      throw MathError("chow_invariant",
                      "computed order " + std::to_string(out.h) +
                          " differs from the expected " + std::to_string(h0));
    for (std::size_t i = 0; i < out.blocks.size(); ++i) {
      int hi = h + s - shapes[i].order;
      if (out.blocks[i].order != hi)
        throw MathError("chow_invariant",
                        "block " + std::to_string(i) + " has order " +
                            std::to_string(out.blocks[i].order) + ", expected " +
                            std::to_string(hi));
    }
    // candidate selection: the squarefree primitive eliminant must satisfy
    // the defining identity
    if (!defining_identity_holds(out, A ? &*A : nullptr))
      throw MathError("chow_candidate_failed",
                      "eliminant candidate fails the defining identity");
    return out;
  };

  // The unsaturated elimination is usually enough and vastly cheaper than the
  // adjoined-inverse construction; every structural invariant is re-checked
  // on the candidate, and a failure falls back to the saturated run.
  if (!sat.is_constant()) {
    try {
      return finish(groebner_eliminate(sys, std::nullopt, guard, trace));
    } catch (const MathError& e) {
      if (e.code() == "resource_limit" || e.code() == "inconsistent_system") throw;
      // fall through to the saturated elimination
    }
  }
  return finish(groebner_eliminate(
      sys, sat.is_constant() ? std::nullopt : std::optional<DiffPoly>(sat), guard,
      std::move(trace)));
}

ChowForm chow_form(const DiffChain& A, ResourceGuard& guard,
                   std::function<void(const GroebnerBasis&)> trace) {
  DimOrder dim = dim_order(A);
  std::vector<GenericShape> shapes(static_cast<std::size_t>(dim.dimension) + 1,
                                   GenericShape{0, 1});
  return generalized_chow(A, A.ring(), shapes, guard, std::move(trace));
}

// ---------------------------------------------------------------------------
// Defining identity, evaluation

bool defining_identity_holds(const ChowForm& C, const DiffChain* A) {
  const RingPtr& base = C.base_ring;
  // combined ring: y's as in the base ring, all u-variables as parameters
  std::vector<std::string> names;
  std::vector<VarKind> kinds;
  for (const auto& b : C.blocks)
    for (std::uint32_t v : b.vars) {
      names.push_back(C.uring()->name(v));
      kinds.push_back(VarKind::Parameter);
    }
  RingPtr Rc = base->extended(names, kinds);
  DiffPoly F = C.poly.mapped_by_name(Rc);

  std::map<VarKey, DiffPoly> assign;
  for (const auto& b : C.blocks) {
    DiffPoly val = DiffPoly::zero(Rc);
    for (std::size_t j = 1; j < b.vars.size(); ++j) {
      auto idx = Rc->index_of(C.uring()->name(b.vars[j])).value();
      DiffPoly mono =
          DiffPoly::from_terms(Rc, {{b.monomials[j], Coef::one(Rc->field())}});
      val = val - DiffPoly::var(Rc, DerVar{idx, 0}) * mono;
    }
    auto u0idx = Rc->index_of(C.uring()->name(b.vars[0])).value();
    auto maxord = F.order_of(u0idx);
    if (!maxord) continue;
    DiffPoly cur = val;
    for (int k = 0; k <= *maxord; ++k) {
      assign[key_of(DerVar{u0idx, static_cast<std::uint32_t>(k)})] = cur;
      cur = cur.differentiate();
    }
  }
  DiffPoly Q = F.substitute(assign);
  if (!A) return Q.is_zero();
  std::vector<DiffPoly> polys;
  for (const auto& e : A->elements()) polys.push_back(e.poly.mapped_by_name(Rc));
  DiffChain chain(polys, Ranking::orderly(Rc));
  return ritt_reduce(Q, chain).remainder.is_zero();
}

std::pair<Coef, Coef> dres_evaluate(const ChowForm& C,
                                    const std::map<std::string, Coef>& assignment) {
  const RingPtr& R = C.uring();
  FieldKind fk = R->field();
  // value jets per variable
  std::vector<std::vector<Coef>> jets(R->size());
  for (std::uint32_t v = 0; v < R->size(); ++v) {
    auto it = assignment.find(R->name(v));
    if (it == assignment.end())
      throw MathError("incomplete_assignment",
                      "no value for " + R->name(v));
    if (it->second.kind() != fk)
      throw MathError("ring_mismatch", "assignment value in the wrong base field");
    jets[v] = {it->second};
  }
  auto value = [&](DerVar dv) -> const Coef& {
    auto& js = jets[dv.var];
    while (js.size() <= dv.ord) js.push_back(js.back().derivative());
    return js[dv.ord];
  };
  auto eval = [&](const DiffPoly& p) {
    Coef acc = Coef::zero(fk);
    for (const auto& t : p.terms()) {
      Coef prod = t.coef;
      for (const auto& f : t.mono.factors()) {
        const Coef& v = value(dervar_of(f.key));
        for (std::uint32_t e = 0; e < f.exp; ++e) prod = prod * v;
      }
      acc = acc + prod;
    }
    return acc;
  };
  DiffPoly SF = C.poly.partial(DerVar{C.blocks[0].vars[0], static_cast<std::uint32_t>(C.h)});
  return {eval(C.poly), eval(SF)};
}

}  // namespace deltachow
