#include "deltachow/quasivar.hpp"

#include <algorithm>
#include <map>
#include <set>

#include "deltachow/io.hpp"

namespace deltachow {

namespace {

// Split every term's monomial into the a-part and the rest; returns the
// nonzero a-coefficient polynomials of the distinct rest-monomials.
std::vector<DiffPoly> collect_a_coefficients(const DiffPoly& p,
                                             const std::set<std::uint32_t>& avars) {
  std::map<Monomial, std::vector<Term>, CanonicalMonoLess> buckets;
  for (const auto& t : p.terms()) {
    std::vector<VarPow> apart, rest;
    for (const auto& f : t.mono.factors()) {
      if (avars.count(dervar_of(f.key).var))
        apart.push_back(f);
      else
        rest.push_back(f);
    }
    buckets[Monomial::from_factors(std::move(rest))].push_back(
        {Monomial::from_factors(std::move(apart)), t.coef});
  }
  std::vector<DiffPoly> out;
  std::set<std::string> seen;
  for (auto& [mono, terms] : buckets) {
    DiffPoly rel = DiffPoly::from_terms(p.ring(), std::move(terms));
    if (rel.is_zero()) continue;
    rel = rel.primitive_normalized();
    if (rel.leading_term().coef.is_negative_leading()) rel = -rel;
    if (seen.insert(format_poly(rel)).second) out.push_back(std::move(rel));
  }
  return out;
}

// Incremental Gauss elimination for homogeneous linear relations in the
// a-variables; expresses the highest-index variables through the lower ones.
class LinearSolver {
 public:
  explicit LinearSolver(std::vector<std::uint32_t> avars) : avars_(std::move(avars)) {
    for (std::size_t i = 0; i < avars_.size(); ++i) pos_[avars_[i]] = i;
  }

  void add(const DiffPoly& rel) {
    std::vector<mpq_class> row(avars_.size(), mpq_class(0));
    for (const auto& t : rel.terms()) {
      if (t.mono.total_degree() != 1)
        throw MathError("internal", "nonlinear relation fed to the linear solver");
      DerVar v = dervar_of(t.mono.factors()[0].key);
      if (v.ord != 0 || !pos_.count(v.var))
        throw MathError("internal", "linear relation outside the a-variables");
      row[pos_.at(v.var)] += t.coef.q();
    }
    reduce(row);
    if (std::all_of(row.begin(), row.end(), [](const mpq_class& c) { return c == 0; }))
      return;
    // pivot on the highest-index variable present
    std::size_t piv = row.size();
    for (std::size_t i = row.size(); i-- > 0;)
      if (row[i] != 0) {
        piv = i;
        break;
      }
    mpq_class lead = row[piv];
    for (auto& c : row) c /= lead;
    // eliminate the pivot from existing rows
    for (auto& [p, r] : rows_) {
      if (r[piv] != 0) {
        mpq_class f = r[piv];
        for (std::size_t i = 0; i < r.size(); ++i) r[i] -= f * row[i];
      }
    }
    rows_[piv] = std::move(row);
  }

  // substitution a_pivot -> -sum of the free part, as polynomials
  std::map<VarKey, DiffPoly> substitutions(const RingPtr& ring) const {
    std::map<VarKey, DiffPoly> out;
    for (const auto& [piv, row] : rows_) {
      DiffPoly val = DiffPoly::zero(ring);
      for (std::size_t i = 0; i < row.size(); ++i) {
        if (i == piv || row[i] == 0) continue;
        val = val - DiffPoly::var(ring, DerVar{avars_[i], 0})
                        .scaled(Coef::from_mpq(row[i]));
      }
      out[key_of(DerVar{avars_[piv], 0})] = std::move(val);
    }
    return out;
  }

 private:
  void reduce(std::vector<mpq_class>& row) const {
    for (const auto& [piv, r] : rows_) {
      if (row[piv] != 0) {
        mpq_class f = row[piv];
        for (std::size_t i = 0; i < row.size(); ++i) row[i] -= f * r[i];
      }
    }
  }

  std::vector<std::uint32_t> avars_;
  std::map<std::uint32_t, std::size_t> pos_;
  std::map<std::size_t, std::vector<mpq_class>, std::greater<>> rows_;
};

// value num / A0^e with the u00^{(h)} = gamma substitution applied after
// every differentiation
struct AJet {
  DiffPoly num;
  std::uint32_t e = 1;
};

}  // namespace

ChowTemplate build_template(int n, int d, int h, int m,
                            const std::vector<std::string>& support) {
  if (n < 1 || d < 0 || d >= n || h < 0 || m < 1)
    throw MathError("bad_input", "malformed quasi-variety index");
  if (support.empty()) throw MathError("bad_input", "empty template support");
  ChowTemplate T;
  T.n = n;
  T.d = d;
  T.h = h;
  T.m = m;
  std::vector<std::string> ynames;
  for (int i = 1; i <= n; ++i) ynames.push_back("y" + std::to_string(i));
  T.base_ring = RingContext::make(FieldKind::Rationals, ynames);

  std::vector<std::string> unames;
  for (int i = 0; i <= d; ++i)
    for (int j = 0; j <= n; ++j) unames.push_back(chow_var_name(i, j));
  RingPtr uring = RingContext::make(FieldKind::Rationals, unames);

  std::vector<std::string> anames;
  std::vector<VarKind> akinds;
  for (std::size_t i = 1; i <= support.size(); ++i) {
    anames.push_back("a" + std::to_string(i));
    akinds.push_back(VarKind::Parameter);
  }
  T.ring = uring->extended(anames, akinds);
  for (const auto& nm : anames) T.avars.push_back(T.ring->index_of(nm).value());

  std::vector<Monomial> linear = shape_monomials(T.base_ring, GenericShape{0, 1});
  for (int i = 0; i <= d; ++i) {
    ChowBlock b;
    b.monomials = linear;
    for (int j = 0; j <= n; ++j)
      b.vars.push_back(T.ring->index_of(chow_var_name(i, j)).value());
    T.blocks.push_back(std::move(b));
  }

  std::uint32_t u00 = T.blocks[0].vars[0];
  bool carries_u00h = false;
  for (const auto& text : support) {
    DiffPoly p = parse_poly(text, T.ring);
    if (p.nterms() != 1 || !p.terms()[0].coef.is_one())
      throw MathError("bad_input", "support entries must be plain monomials: " + text);
    const Monomial& mono = p.terms()[0].mono;
    for (int i = 0; i <= d; ++i) {
      std::uint32_t deg = 0;
      for (const auto& f : mono.factors()) {
        std::uint32_t var = dervar_of(f.key).var;
        const auto& vars = T.blocks[static_cast<std::size_t>(i)].vars;
        if (std::find(vars.begin(), vars.end(), var) != vars.end()) deg += f.exp;
      }
      if (deg != static_cast<std::uint32_t>(m))
        throw MathError("bad_support", "monomial " + text + " has degree " +
                                           std::to_string(deg) + " in block " +
                                           std::to_string(i) + ", expected " +
                                           std::to_string(m));
    }
    std::uint32_t hdeg = 0;
    for (const auto& f : mono.factors()) {
      DerVar v = dervar_of(f.key);
      if (static_cast<int>(v.ord) > h)
        throw MathError("bad_support",
                        "monomial " + text + " exceeds the order bound " + std::to_string(h));
      const auto& b0 = T.blocks[0].vars;
      if (static_cast<int>(v.ord) == h &&
          std::find(b0.begin(), b0.end(), v.var) != b0.end())
        hdeg += f.exp;
    }
    if (hdeg > 1)
      throw MathError("bad_support",
                      "monomial " + text + " has degree > 1 in the order-h block-0 "
                      "derivatives (g = 1)");
    if (mono.degree_of(key_of(DerVar{u00, static_cast<std::uint32_t>(h)})) == 1)
      carries_u00h = true;
    T.support.push_back(mono);
  }
  if (!carries_u00h)
    throw MathError("bad_support", "no support monomial carries u00^{(h)}");

  std::vector<Term> terms;
  for (std::size_t i = 0; i < T.support.size(); ++i)
    terms.push_back({T.support[i] * Monomial::var(DerVar{T.avars[i], 0}),
                     Coef::one(FieldKind::Rationals)});
  T.form = DiffPoly::from_terms(T.ring, std::move(terms));
  return T;
}

QuasiVarietyPresentation cv1_generate(const ChowTemplate& T, ResourceGuard& guard) {
  QuasiVarietyPresentation out;
  out.tmpl = T;
  std::set<std::uint32_t> aset(T.avars.begin(), T.avars.end());
  LinearSolver solver(T.avars);

  // ---- step 1: lambda-scaling per block ---------------------------------
  {
    std::string lname = "_lambda";
    while (T.ring->index_of(lname)) lname += "_";
    RingPtr Rl = T.ring->extended({lname}, {VarKind::Parameter});
    std::uint32_t lidx = Rl->index_of(lname).value();
    DiffPoly Fl = T.form.mapped_by_name(Rl);
    DiffPoly lambda = DiffPoly::var(Rl, DerVar{lidx, 0});
    for (const auto& b : T.blocks) {
      std::map<VarKey, DiffPoly> assign;
      for (std::uint32_t v : b.vars) {
        auto maxord = T.form.order_of(v);
        if (!maxord) continue;
        DiffPoly cur = lambda * DiffPoly::var(Rl, DerVar{v, 0});
        for (int k = 0; k <= *maxord; ++k) {
          assign[key_of(DerVar{v, static_cast<std::uint32_t>(k)})] = cur;
          cur = cur.differentiate();
        }
      }
      DiffPoly G = Fl.substitute(assign) -
                   DiffPoly::var(Rl, DerVar{lidx, 0}, static_cast<std::uint32_t>(T.m)) * Fl;
      for (const auto& rel : collect_a_coefficients(G, aset)) {
        DiffPoly r = rel.mapped_by_name(T.ring);
        out.relations.push_back(r);
        solver.add(r);
      }
    }
  }

  // ---- step 2: the linear presentation F1 = sum A_j u_{0j}^{(h)} + B ----
  auto resolve = [&]() {
    return T.form.substitute(solver.substitutions(T.ring));
  };
  DiffPoly F1 = resolve();
  std::uint32_t h = static_cast<std::uint32_t>(T.h);
  auto Apart = [&](const DiffPoly& F) {
    std::vector<DiffPoly> A;
    for (int j = 0; j <= T.n; ++j)
      A.push_back(F.partial(DerVar{T.blocks[0].vars[static_cast<std::size_t>(j)], h}));
    return A;
  };
  if (Apart(F1)[0].is_zero())
    throw MathError("template_a0_zero",
                    "the template cannot carry u00^{(h)} after homogenization");

  // ---- step 3: the hyperplane constraints P_sigma(xi) = 0 ---------------
  {
    std::vector<DiffPoly> A = Apart(F1);
    for (int sigma = 1; sigma <= T.d; ++sigma) {
      DiffPoly E = DiffPoly::zero(T.ring);
      for (int j = 0; j <= T.n; ++j)
        E = E + DiffPoly::var(T.ring,
                              DerVar{T.blocks[static_cast<std::size_t>(sigma)]
                                         .vars[static_cast<std::size_t>(j)],
                                     0}) *
                    A[static_cast<std::size_t>(j)];
      for (const auto& rel : collect_a_coefficients(E, aset)) {
        out.relations.push_back(rel);
        solver.add(rel);
      }
    }
  }
  F1 = resolve();
  std::vector<DiffPoly> A = Apart(F1);
  if (A[0].is_zero())
    throw MathError("template_a0_zero",
                    "the template cannot carry u00^{(h)} after the hyperplane step");

  // ---- step 4: F1(S^0 Y, ..., S^d Y) = 0 on the recovered point ---------
  {
    // extend with y's and the skew indeterminates s^i_{jk} (j < k)
    std::vector<std::string> names;
    std::vector<VarKind> kinds;
    for (std::uint32_t i = 0; i < T.base_ring->size(); ++i) {
      names.push_back(T.base_ring->name(i));
      kinds.push_back(VarKind::Main);
    }
    std::vector<std::vector<std::vector<std::string>>> sname(
        static_cast<std::size_t>(T.d) + 1);
    for (int i = 0; i <= T.d; ++i) {
      sname[static_cast<std::size_t>(i)].assign(
          static_cast<std::size_t>(T.n) + 1,
          std::vector<std::string>(static_cast<std::size_t>(T.n) + 1));
      for (int j = 0; j <= T.n; ++j)
        for (int k = j + 1; k <= T.n; ++k) {
          std::string nm = "s" + std::to_string(i) + "_" + std::to_string(j) +
                           std::to_string(k);
          sname[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)]
               [static_cast<std::size_t>(k)] = nm;
          names.push_back(nm);
          kinds.push_back(VarKind::Parameter);
        }
    }
    RingPtr Rq = T.ring->extended(names, kinds);
    std::set<std::uint32_t> svars;
    for (const auto& nm : names)
      if (nm[0] == 's') svars.insert(Rq->index_of(nm).value());

    DiffPoly F1q = F1.mapped_by_name(Rq);
    auto yvar = [&](int k) {
      return DiffPoly::var(Rq, DerVar{Rq->index_of(T.base_ring->name(
                                          static_cast<std::uint32_t>(k - 1))).value(),
                                      0});
    };
    auto svar = [&](int i, int j, int k) {
      return DiffPoly::var(
          Rq, DerVar{Rq->index_of(sname[static_cast<std::size_t>(i)]
                                       [static_cast<std::size_t>(j)]
                                       [static_cast<std::size_t>(k)]).value(),
                     0});
    };
    std::map<VarKey, DiffPoly> assign;
    for (int i = 0; i <= T.d; ++i) {
      for (int j = 0; j <= T.n; ++j) {
        // (S^i Y)_j with Y = (1, y_1..y_n)
        DiffPoly val = DiffPoly::zero(Rq);
        for (int k = 0; k <= T.n; ++k) {
          if (k == j) continue;
          DiffPoly entry = k > j ? svar(i, j, k) : -svar(i, k, j);
          val = val + (k == 0 ? entry : entry * yvar(k));
        }
        std::uint32_t var = T.blocks[static_cast<std::size_t>(i)]
                                .vars[static_cast<std::size_t>(j)];
        auto maxord = F1.order_of(var);
        if (!maxord) continue;
        DiffPoly cur = val;
        for (int k = 0; k <= *maxord; ++k) {
          assign[key_of(DerVar{var, static_cast<std::uint32_t>(k)})] = cur;
          cur = cur.differentiate();
        }
      }
    }
    DiffPoly Phi = F1q.substitute(assign);
    guard.check_terms(Phi.nterms());

    // chi_tau = the (a, y)-coefficients of the distinct s-monomials
    std::set<std::uint32_t> rest_group;
    for (std::uint32_t v = 0; v < Rq->size(); ++v)
      if (!svars.count(v)) rest_group.insert(v);
    std::vector<DiffPoly> chis = collect_a_coefficients(Phi, rest_group);

    // xi jets with the gamma substitution
    DerVar u00h{T.blocks[0].vars[0], h};
    DiffPoly A0q = A[0].mapped_by_name(Rq);
    DiffPoly Ng = F1q - A0q * DiffPoly::var(Rq, u00h);  // A_1 u01^(h)+...+B
    auto subst_gamma = [&](AJet f) {
      std::uint32_t deg = f.num.degree_of(u00h);
      if (deg == 0) return f;
      std::vector<DiffPoly> cs = f.num.coeffs_wrt(u00h);
      DiffPoly num = DiffPoly::zero(Rq);
      for (std::uint32_t i = 0; i <= deg; ++i)
        num = num + cs[i] * (-Ng).pow(i) * A0q.pow(deg - i);
      return AJet{std::move(num), f.e + deg};
    };
    DiffPoly A0d = A0q.differentiate();
    auto differentiate_jet = [&](const AJet& f) {
      DiffPoly num = f.num.differentiate() * A0q -
                     DiffPoly::integer(Rq, static_cast<long>(f.e)) * f.num * A0d;
      return subst_gamma(AJet{std::move(num), f.e + 1});
    };
    std::vector<std::vector<AJet>> jets(static_cast<std::size_t>(T.n));
    int maxyord = 0;
    for (const auto& chi : chis)
      for (std::uint32_t v = 0; v < T.base_ring->size(); ++v) {
        auto ov = chi.order_of(Rq->index_of(T.base_ring->name(v)).value());
        if (ov) maxyord = std::max(maxyord, *ov);
      }
    for (int j = 1; j <= T.n; ++j) {
      auto& js = jets[static_cast<std::size_t>(j - 1)];
      js.push_back(AJet{A[static_cast<std::size_t>(j)].mapped_by_name(Rq), 1});
      for (int k = 1; k <= maxyord; ++k) js.push_back(differentiate_jet(js.back()));
    }

    // substitute the jets into each chi, clear the A0 powers, and collect
    for (const auto& chi : chis) {
      std::vector<std::pair<DiffPoly, std::uint32_t>> parts;
      std::uint32_t E = 0;
      for (const auto& t : chi.terms()) {
        DiffPoly num = DiffPoly::constant(Rq, t.coef);
        std::uint32_t e = 0;
        std::vector<VarPow> untouched;
        for (const auto& f : t.mono.factors()) {
          DerVar v = dervar_of(f.key);
          auto yidx = T.base_ring->index_of(Rq->name(v.var));
          if (!yidx) {
            untouched.push_back(f);
            continue;
          }
          const AJet& jet = jets[*yidx][v.ord];
          for (std::uint32_t x = 0; x < f.exp; ++x) {
            num = num * jet.num;
            e += jet.e;
          }
        }
        if (!untouched.empty())
          num = num.times_mono(Monomial::from_factors(std::move(untouched)));
        parts.push_back({std::move(num), e});
        E = std::max(E, e);
      }
      DiffPoly p = DiffPoly::zero(Rq);
      for (auto& [num, e] : parts) p = p + num * A0q.pow(E - e);
      guard.check_terms(p.nterms());
      guard.check_deadline();
      for (const auto& rel : collect_a_coefficients(p, aset))
        out.relations.push_back(rel.mapped_by_name(T.ring));
    }
  }

  // deduplicate while keeping emission order
  {
    std::set<std::string> seen;
    std::vector<DiffPoly> unique;
    for (auto& r : out.relations)
      if (seen.insert(format_poly(r)).second) unique.push_back(std::move(r));
    out.relations = std::move(unique);
  }

  // excluded locus: coefficients of the initial of F w.r.t. u00 >> u_{ij}
  DerVar u00h{T.blocks[0].vars[0], h};
  for (std::size_t i = 0; i < T.support.size(); ++i)
    if (T.support[i].degree_of(key_of(u00h)) == 1)
      out.excluded.push_back(T.avars[i]);
  return out;
}

std::vector<DiffPoly> QuasiVarietyPresentation::interreduced() const {
  LinearSolver solver(tmpl.avars);
  std::vector<DiffPoly> nonlinear;
  for (const auto& r : relations) {
    bool linear = r.total_degree() == 1 && r.total_order() == std::optional<int>(0);
    if (linear)
      solver.add(r);
    else
      nonlinear.push_back(r);
  }
  auto subs = solver.substitutions(tmpl.ring);
  std::vector<DiffPoly> out;
  std::set<std::string> seen;
  for (const auto& [k, v] : subs) {
    DiffPoly rel = DiffPoly::var(tmpl.ring, dervar_of(k)) - v;
    rel = rel.primitive_normalized();
    if (rel.leading_term().coef.is_negative_leading()) rel = -rel;
    if (seen.insert(format_poly(rel)).second) out.push_back(rel);
  }
  for (const auto& r : nonlinear) {
    DiffPoly rel = r.substitute(subs).primitive_normalized();
    if (rel.is_zero()) continue;
    if (rel.leading_term().coef.is_negative_leading()) rel = -rel;
    if (seen.insert(format_poly(rel)).second) out.push_back(rel);
  }
  return out;
}

std::vector<Coef> template_coefficients(const ChowTemplate& T, const ChowForm& C) {
  DiffPoly F = C.poly.mapped_by_name(T.ring);
  std::vector<Coef> out(T.support.size(), Coef::zero(T.ring->field()));
  for (const auto& t : F.terms()) {
    bool found = false;
    for (std::size_t i = 0; i < T.support.size(); ++i)
      if (T.support[i] == t.mono) {
        out[i] = t.coef;
        found = true;
        break;
      }
    if (!found)
      throw MathError("support_mismatch",
                      "the Chow form has a monomial outside the template support: " +
                          format_monomial(t.mono, *T.ring));
  }
  return out;
}

Coef evaluate_relation(const ChowTemplate& T, const DiffPoly& relation,
                       const std::vector<Coef>& avalues) {
  if (avalues.size() != T.avars.size())
    throw MathError("bad_input", "one value per a-coefficient required");
  FieldKind fk = T.ring->field();
  std::map<std::uint32_t, std::vector<Coef>> jets;
  for (std::size_t i = 0; i < T.avars.size(); ++i) jets[T.avars[i]] = {avalues[i]};
  Coef acc = Coef::zero(fk);
  for (const auto& t : relation.terms()) {
    Coef prod = t.coef;
    for (const auto& f : t.mono.factors()) {
      DerVar v = dervar_of(f.key);
      auto it = jets.find(v.var);
      if (it == jets.end())
        throw MathError("bad_input", "relation mentions a non-a variable");
      auto& js = it->second;
      while (js.size() <= v.ord) js.push_back(js.back().derivative());
      for (std::uint32_t e = 0; e < f.exp; ++e) prod = prod * js[v.ord];
    }
    acc = acc + prod;
  }
  return acc;
}

}  // namespace deltachow
