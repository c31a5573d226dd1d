#include "deltachow/verify.hpp"

#include <random>
#include <set>

#include "deltachow/io.hpp"
#include "deltachow/numeric.hpp"
#include "deltachow/ratfun.hpp"

namespace deltachow {

namespace {

long binom(int n, int k) {
  if (k < 0 || k > n) return 0;
  long r = 1;
  for (int i = 1; i <= k; ++i) r = r * (n - k + i) / i;
  return r;
}

std::string fresh_name(const RingPtr& ring, std::string base) {
  while (ring->index_of(base)) base += "_";
  return base;
}

}  // namespace

std::optional<std::uint32_t> check_delta_homogeneous(
    const DiffPoly& F, const std::vector<std::uint32_t>& block_vars) {
  if (F.is_zero()) throw MathError("bad_input", "homogeneity of the zero polynomial");
  if (block_vars.empty()) throw MathError("bad_input", "empty variable block");
  const RingPtr& R0 = F.ring();

  // route (a): symbolic lambda-scaling, v^{(k)} -> delta^k(lambda v)
  std::string lname = fresh_name(R0, "_lambda");
  RingPtr Rl = R0->extended({lname}, {VarKind::Parameter});
  std::uint32_t lidx = Rl->index_of(lname).value();
  DiffPoly Fl = F.mapped_by_name(Rl);
  DiffPoly lambda = DiffPoly::var(Rl, DerVar{lidx, 0});
  std::map<VarKey, DiffPoly> assign;
  for (std::uint32_t v : block_vars) {
    auto maxord = F.order_of(v);
    if (!maxord) continue;
    DiffPoly cur = lambda * DiffPoly::var(Rl, DerVar{v, 0});
    for (int k = 0; k <= *maxord; ++k) {
      assign[key_of(DerVar{v, static_cast<std::uint32_t>(k)})] = cur;
      cur = cur.differentiate();
    }
  }
  std::optional<std::uint32_t> route_a;
  {
    DiffPoly G = Fl.substitute(assign);
    std::uint32_t m = G.degree_in_vars({lidx});
    DiffPoly expected = DiffPoly::var(Rl, DerVar{lidx, 0}, m) * Fl;
    if (G == expected) route_a = m;
  }

  // route (b): Euler identities
  std::optional<std::uint32_t> route_b;
  {
    int maxord = -1;
    for (std::uint32_t v : block_vars) {
      auto o = F.order_of(v);
      if (o) maxord = std::max(maxord, *o);
    }
    bool ok = true;
    std::optional<std::uint32_t> m;
    for (int r = 0; r <= std::max(maxord, 0) && ok; ++r) {
      DiffPoly E = DiffPoly::zero(R0);
      for (std::uint32_t v : block_vars) {
        auto o = F.order_of(v);
        if (!o) continue;
        for (int k = 0; k + r <= *o; ++k) {
          DiffPoly part =
              F.partial(DerVar{v, static_cast<std::uint32_t>(k + r)});
          if (part.is_zero()) continue;
          E = E + DiffPoly::integer(R0, binom(k + r, r)) *
                      DiffPoly::var(R0, DerVar{v, static_cast<std::uint32_t>(k)}) *
                      part;
        }
      }
      if (r == 0) {
        if (E.is_zero()) {
          m = 0;  // F free of the block
        } else {
          auto q = exact_divide(E, F);
          if (!q || !q->is_constant() || q->is_zero()) {
            ok = false;
          } else {
            const Coef& c = q->terms().front().coef;
            // the multiplier must be a nonnegative integer
            if (c.kind() != FieldKind::Rationals || c.q().get_den() != 1 ||
                c.q() < 0) {
              ok = false;
            } else {
              m = static_cast<std::uint32_t>(c.q().get_num().get_ui());
            }
          }
        }
      } else if (!E.is_zero()) {
        ok = false;
      }
    }
    if (ok) route_b = m;
  }

  if (route_a != route_b)
    throw MathError("internal",
                    "lambda-scaling and Euler homogeneity routes disagree");
  return route_a;
}

VerificationReport verify_chow_invariants(const ChowForm& C) {
  VerificationReport rep;
  const DiffPoly& F = C.poly;
  bool linear = true;
  for (const auto& sh : C.shapes)
    if (!(sh == GenericShape{0, 1})) linear = false;

  // (i) order law: ord(F, u_{ij}) = h (or the block order) for all present
  {
    bool ok = true;
    std::string witness;
    for (std::size_t i = 0; i < C.blocks.size(); ++i) {
      int hi = C.blocks[i].order;
      for (std::uint32_t v : C.blocks[i].vars) {
        auto o = F.order_of(v);
        if (!o) continue;
        bool good = linear ? (*o == C.h) : (*o <= hi);
        if (!good) {
          ok = false;
          witness = C.uring()->name(v) + " has order " + std::to_string(*o);
        }
      }
      auto o0 = F.order_of(C.blocks[i].vars[0]);
      if (!o0 || *o0 != hi) {
        ok = false;
        witness = "u_{i0} order mismatch in block " + std::to_string(i);
      }
    }
    rep.add("order_law", ok ? CheckStatus::Pass : CheckStatus::Fail, witness);
  }

  // (ii) u_{i0} occurs for every block
  {
    bool ok = true;
    std::string witness;
    for (std::size_t i = 0; i < C.blocks.size(); ++i)
      if (!F.contains_var(C.blocks[i].vars[0])) {
        ok = false;
        witness = "block " + std::to_string(i);
      }
    rep.add("u_i0_present", ok ? CheckStatus::Pass : CheckStatus::Fail, witness);
  }

  // (iii) block-swap sign symmetry
  if (C.blocks.size() < 2) {
    rep.add("block_swap_sign", CheckStatus::Skipped, "single block");
  } else {
    bool ok = true;
    std::string witness;
    for (std::size_t a = 0; a < C.blocks.size() && ok; ++a)
      for (std::size_t b = a + 1; b < C.blocks.size() && ok; ++b) {
        if (!(C.shapes[a] == C.shapes[b])) continue;
        std::vector<std::uint32_t> perm(C.uring()->size());
        for (std::uint32_t i = 0; i < perm.size(); ++i) perm[i] = i;
        for (std::size_t j = 0; j < C.blocks[a].vars.size(); ++j) {
          perm[C.blocks[a].vars[j]] = C.blocks[b].vars[j];
          perm[C.blocks[b].vars[j]] = C.blocks[a].vars[j];
        }
        DiffPoly swapped = F.mapped(C.uring(), perm);
        if (!(swapped == F || swapped == -F)) {
          ok = false;
          witness = "swapping blocks " + std::to_string(a) + "," + std::to_string(b);
        }
      }
    rep.add("block_swap_sign", ok ? CheckStatus::Pass : CheckStatus::Fail, witness);
  }

  // (iv) leading differential degree matches the metadata
  {
    std::uint32_t g = F.degree_of(
        DerVar{C.blocks[0].vars[0], static_cast<std::uint32_t>(C.h)});
    rep.add("leading_degree", g == C.g ? CheckStatus::Pass : CheckStatus::Fail,
            g == C.g ? "" : "measured " + std::to_string(g));
  }

  // (v) per-block delta-homogeneity; equal degrees in the linear case
  {
    bool ok = true;
    std::string witness;
    std::set<std::uint32_t> degrees;
    for (std::size_t i = 0; i < C.blocks.size(); ++i) {
      auto m = check_delta_homogeneous(F, C.blocks[i].vars);
      if (!m) {
        ok = false;
        witness = "block " + std::to_string(i) + " not delta-homogeneous";
        break;
      }
      if (*m != C.blocks[i].degree) {
        ok = false;
        witness = "block " + std::to_string(i) + " degree " + std::to_string(*m);
        break;
      }
      degrees.insert(*m);
    }
    if (ok && linear && degrees.size() > 1) {
      ok = false;
      witness = "block degrees differ on linear hyperplanes";
    }
    rep.add("delta_homogeneous", ok ? CheckStatus::Pass : CheckStatus::Fail, witness);
  }
  return rep;
}

bool generic_point_check(const ChowForm& C, const DiffChain& A) {
  const RingPtr& U = C.uring();
  const RingPtr& base = C.base_ring;
  require_same_ring(A.ring(), base);
  std::uint32_t u00 = C.blocks[0].vars[0];
  DerVar u00h{u00, static_cast<std::uint32_t>(C.h)};
  DiffPoly SF = C.poly.partial(u00h);
  if (SF.is_zero()) return false;

  // combined ring: y's plus the u-variables as parameters
  std::vector<std::string> names;
  std::vector<VarKind> kinds;
  for (std::uint32_t i = 0; i < U->size(); ++i) {
    names.push_back(U->name(i));
    kinds.push_back(VarKind::Parameter);
  }
  RingPtr Rc = base->extended(names, kinds);

  // xi_rho = dF/du_{0,j(rho)}^{(h)} / S_F with j(rho) the linear y_rho slot
  std::map<std::uint32_t, RatFun> assign;
  for (int rho = 1; rho <= C.n; ++rho) {
    Monomial want = Monomial::var(
        DerVar{base->index_of(base->name(static_cast<std::uint32_t>(rho - 1))).value(), 0});
    std::optional<std::size_t> slot;
    for (std::size_t j = 1; j < C.blocks[0].monomials.size(); ++j)
      if (C.blocks[0].monomials[j] == want) slot = j;
    if (!slot) return false;
    DiffPoly N = C.poly.partial(
        DerVar{C.blocks[0].vars[*slot], static_cast<std::uint32_t>(C.h)});
    assign.emplace(static_cast<std::uint32_t>(rho - 1),
                   RatFun(N.mapped_by_name(Rc), SF.mapped_by_name(Rc)));
  }

  // chain {F} under the elimination ranking with u00 on top
  std::vector<std::string> ascending;
  for (std::uint32_t i = 0; i < U->size(); ++i)
    if (i != u00) ascending.push_back(U->name(i));
  ascending.push_back(U->name(u00));
  Ranking elim = Ranking::elimination(U, ascending);
  DiffChain fchain({C.poly}, elim);

  for (const auto& e : A.elements()) {
    RatFun val = eval_at_ratfun(e.poly.mapped_by_name(Rc), assign);
    DiffPoly Q = val.num.mapped_by_name(U);
    if (!ritt_reduce(Q, fchain).remainder.is_zero()) return false;
  }
  return true;
}

namespace {

// Adjoin one generic polynomial of the given shape over fresh parameter
// coefficients; returns the new ring, the lifted generators, and f.
struct GenericAdjoin {
  RingPtr ring;
  std::vector<DiffPoly> gens;
  DiffPoly f;
};

GenericAdjoin adjoin_generic(const RingPtr& ring, const std::vector<DiffPoly>& gens,
                             const GenericShape& shape, int level) {
  std::vector<Monomial> monos = shape_monomials(ring, shape);
  std::vector<std::string> names;
  std::vector<VarKind> kinds;
  for (std::size_t j = 0; j < monos.size(); ++j) {
    names.push_back(fresh_name(ring, "w" + std::to_string(level) + "_" + std::to_string(j)));
    kinds.push_back(VarKind::Parameter);
  }
  GenericAdjoin out;
  out.ring = ring->extended(names, kinds);
  for (const auto& g : gens) out.gens.push_back(g.mapped_by_name(out.ring));
  DiffPoly f = DiffPoly::var(out.ring, DerVar{out.ring->index_of(names[0]).value(), 0});
  for (std::size_t j = 1; j < monos.size(); ++j) {
    DiffPoly m = DiffPoly::from_terms(out.ring, {{monos[j], Coef::one(out.ring->field())}});
    f = f + DiffPoly::var(out.ring, DerVar{out.ring->index_of(names[j]).value(), 0}) * m;
  }
  out.f = std::move(f);
  out.gens.push_back(out.f);
  return out;
}

IntersectResult settle(const std::vector<DiffPoly>& gens, const RingPtr& ring) {
  CharsetResult cs = charset(gens, Ranking::orderly(ring));
  IntersectResult res;
  if (cs.unit_ideal || !cs.chain) {
    res.unit_ideal = true;
    return res;
  }
  DimOrder d = dim_order(*cs.chain);
  res.dimension = d.dimension;
  res.order = d.order;
  return res;
}

}  // namespace

IntersectResult generic_intersection_check(const DiffChain& A, int order,
                                           bool linear_only, int degree) {
  GenericShape shape{order, linear_only ? 1 : degree};
  GenericAdjoin ga = adjoin_generic(A.ring(), A.polys(), shape, 0);
  return settle(ga.gens, ga.ring);
}

IntersectResult generic_tower(RingPtr base_ring, const std::vector<int>& orders,
                              bool linear_only, int degree) {
  if (orders.empty()) {
    // the zero ideal: dimension n, order 0, every variable parametric
    IntersectResult res;
    res.dimension = static_cast<int>(base_ring->main_count());
    res.order = 0;
    return res;
  }
  RingPtr ring = std::move(base_ring);
  std::vector<DiffPoly> gens;
  int level = 0;
  for (int s : orders) {
    GenericAdjoin ga =
        adjoin_generic(ring, gens, GenericShape{s, linear_only ? 1 : degree}, level++);
    ring = ga.ring;
    gens = std::move(ga.gens);
  }
  return settle(gens, ring);
}

FiberCheckResult numeric_fiber_check(const ChowForm& C, const DiffChain& A,
                                     int samples, std::uint64_t seed,
                                     double gamma_perturbation) {
  if (C.d != 0)
    throw MathError("bad_input", "the fiber check applies to dimension-zero ideals");
  if (!(C.shapes[0] == GenericShape{0, 1}))
    throw MathError("bad_input", "the fiber check applies to linear hyperplane forms");
  if (C.uring()->field() != FieldKind::Rationals)
    throw MathError("bad_input", "the fiber check samples exact rationals over Q");
  const RingPtr& U = C.uring();
  std::uint32_t u00 = C.blocks[0].vars[0];
  std::uint32_t h = static_cast<std::uint32_t>(C.h);
  DerVar u00h{u00, h};

  int K = 0;
  for (const auto& e : A.elements()) {
    auto o = e.poly.total_order();
    if (o) K = std::max(K, *o);
  }

  DiffPoly SF = C.poly.partial(u00h);
  // symbolic xi jets in the u-ring
  std::vector<std::vector<RatFun>> jets(static_cast<std::size_t>(C.n));
  for (int rho = 1; rho <= C.n; ++rho) {
    DiffPoly N = C.poly.partial(DerVar{C.blocks[0].vars[static_cast<std::size_t>(rho)], h});
    jets[static_cast<std::size_t>(rho - 1)].push_back(RatFun(N, SF));
    for (int k = 1; k <= K; ++k)
      jets[static_cast<std::size_t>(rho - 1)].push_back(
          jets[static_cast<std::size_t>(rho - 1)].back().differentiate());
  }
  // delta_tau recursion data: f^{(i)} = S_F u00^{(h+i)} + T_i
  std::vector<DiffPoly> Ti;
  {
    DiffPoly fi = C.poly;
    for (int i = 1; i <= K; ++i) {
      fi = fi.differentiate();
      Ti.push_back(fi - SF * DiffPoly::var(U, DerVar{u00, h + static_cast<std::uint32_t>(i)}));
    }
  }

  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<long> num(-9, 9);
  std::uniform_int_distribution<long> den(1, 4);
  auto sample_rational = [&]() {
    long n = 0;
    while (n == 0) n = num(rng);
    return mpq_class(n, den(rng));
  };

  auto eval_cplx = [&](const DiffPoly& p, const std::map<VarKey, Cplx>& vals) {
    Cplx acc;
    for (const auto& t : p.terms()) {
      Cplx prod(to_f128(t.coef.q()));
      for (const auto& f : t.mono.factors()) {
        auto it = vals.find(f.key);
        if (it == vals.end())
          throw MathError("internal", "fiber evaluation misses a value");
        for (std::uint32_t e = 0; e < f.exp; ++e) prod = prod * it->second;
      }
      acc += prod;
    }
    return acc;
  };

  FiberCheckResult out;
  int done = 0;
  for (int attempt = 0; attempt < samples * 8 && done < samples; ++attempt) {
    std::map<VarKey, mpq_class> sample;
    for (int j = 1; j <= C.n; ++j)
      for (std::uint32_t k = 0; k <= h + static_cast<std::uint32_t>(K); ++k)
        sample[key_of(DerVar{C.blocks[0].vars[static_cast<std::size_t>(j)], k})] =
            sample_rational();
    for (std::uint32_t k = 0; k < h; ++k)
      sample[key_of(DerVar{u00, k})] = sample_rational();

    auto eval_exact = [&](const DiffPoly& p) {
      mpq_class acc(0);
      for (const auto& t : p.terms()) {
        mpq_class prod = t.coef.q();
        for (const auto& f : t.mono.factors()) {
          auto it = sample.find(f.key);
          if (it == sample.end())
            throw MathError("internal", "fiber sample misses a variable");
          for (std::uint32_t e = 0; e < f.exp; ++e) prod *= it->second;
        }
        acc += prod;
      }
      return acc;
    };

    std::vector<DiffPoly> ucoeffs = C.poly.coeffs_wrt(u00h);
    std::vector<mpq_class> poly;
    for (const auto& c : ucoeffs) poly.push_back(eval_exact(c));
    if (poly.back() == 0) continue;  // degenerate sample
    std::vector<Cplx> roots = poly_roots(poly);

    bool used = false;
    for (const Cplx& gamma0 : roots) {
      Cplx gamma = gamma0 + Cplx(static_cast<__float128>(gamma_perturbation));
      std::map<VarKey, Cplx> vals;
      for (const auto& [k, v] : sample) vals[k] = Cplx(to_f128(v));
      vals[key_of(u00h)] = gamma;
      Cplx sf = eval_cplx(SF, vals);
      if (sf.abs() < 1e-8) continue;  // resample guard
      for (int i = 1; i <= K; ++i) {
        Cplx ti = eval_cplx(Ti[static_cast<std::size_t>(i - 1)], vals);
        vals[key_of(DerVar{u00, h + static_cast<std::uint32_t>(i)})] =
            (Cplx() - ti) / sf;
      }
      for (const auto& e : A.elements()) {
        Cplx acc;
        for (const auto& t : e.poly.terms()) {
          Cplx prod(to_f128(t.coef.q()));
          for (const auto& f : t.mono.factors()) {
            DerVar v = dervar_of(f.key);
            const RatFun& jet = jets[v.var][v.ord];
            Cplx jv = eval_cplx(jet.num, vals) / eval_cplx(jet.den, vals);
            for (std::uint32_t x = 0; x < f.exp; ++x) prod = prod * jv;
          }
          acc += prod;
        }
        out.max_residual = std::max(out.max_residual, acc.abs());
      }
      ++out.roots;
      used = true;
    }
    if (used) {
      ++done;
      ++out.samples;
    }
  }
  if (done < samples)
    throw MathError("resample_exhausted",
                    "could not draw enough nondegenerate samples");
  return out;
}

ChowForm linear_transform_chowform(const ChowForm& C,
                                   const std::vector<std::vector<Coef>>& M) {
  for (const auto& sh : C.shapes)
    if (!(sh == GenericShape{0, 1}))
      throw MathError("bad_input", "linear transforms act on hyperplane Chow forms");
  std::size_t n = static_cast<std::size_t>(C.n);
  if (M.size() != n)
    throw MathError("bad_input", "transform matrix must be n x n");
  for (const auto& row : M)
    if (row.size() != n) throw MathError("bad_input", "transform matrix must be n x n");

  // determinant by fraction-free elimination over the base field
  std::vector<std::vector<Coef>> a = M;
  Coef det = Coef::one(a[0][0].kind());
  for (std::size_t k = 0; k < n; ++k) {
    std::size_t pivot = k;
    while (pivot < n && a[pivot][k].is_zero()) ++pivot;
    if (pivot == n) throw MathError("singular_matrix", "transform matrix is singular");
    if (pivot != k) {
      std::swap(a[pivot], a[k]);
      det = -det;
    }
    det = det * a[k][k];
    for (std::size_t i = k + 1; i < n; ++i) {
      Coef f = a[i][k] / a[k][k];
      for (std::size_t j = k; j < n; ++j) a[i][j] = a[i][j] - f * a[k][j];
    }
  }
  if (det.is_zero()) throw MathError("singular_matrix", "transform matrix is singular");

  const RingPtr& U = C.uring();
  std::map<VarKey, DiffPoly> assign;
  for (const auto& b : C.blocks) {
    for (std::size_t j = 1; j <= n; ++j) {
      DiffPoly val = DiffPoly::zero(U);
      for (std::size_t l = 1; l <= n; ++l)
        val = val + DiffPoly::var(U, DerVar{b.vars[l], 0}).scaled(M[l - 1][j - 1]);
      auto maxord = C.poly.order_of(b.vars[j]);
      if (!maxord) continue;
      DiffPoly cur = val;
      for (int k = 0; k <= *maxord; ++k) {
        assign[key_of(DerVar{b.vars[j], static_cast<std::uint32_t>(k)})] = cur;
        cur = cur.differentiate();
      }
    }
  }
  ChowForm out = C;
  out.poly = C.poly.substitute(assign).primitive_normalized();
  if (out.poly.is_zero())
    throw MathError("chow_invariant", "transformed Chow form vanished");
  if (out.poly.leading_term().coef.is_negative_leading()) out.poly = -out.poly;
  std::vector<ChowBlock> old_blocks = C.blocks;
  remeasure_chow(out);
  for (std::size_t i = 0; i < out.blocks.size(); ++i)
    if (out.blocks[i].degree != old_blocks[i].degree)
      throw MathError("chow_invariant",
                      "linear transform changed a block's delta-degree");
  if (out.g != C.g)
    throw MathError("chow_invariant", "linear transform changed the leading degree");
  return out;
}

}  // namespace deltachow
