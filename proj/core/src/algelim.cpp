#include "deltachow/algelim.hpp"

#include <algorithm>
#include <map>
#include <random>
#include <set>
#include <unordered_map>
#include <cstdio>
#include <cstdlib>

namespace deltachow {

// ---------------------------------------------------------------------------
// Exact division, content, gcd

std::optional<DiffPoly> exact_divide(const DiffPoly& num, const DiffPoly& den) {
  if (den.is_zero()) throw MathError("division_by_zero", "polynomial division by zero");
  if (num.is_zero()) return DiffPoly::zero(num.ring());
  require_same_ring(num.ring(), den.ring());
  struct Greater {
    bool operator()(const Monomial& a, const Monomial& b) const {
      return canonical_cmp(a, b) == std::strong_ordering::greater;
    }
  };
  std::map<Monomial, Coef, Greater> rem;
  for (const auto& t : num.terms()) rem.emplace(t.mono, t.coef);
  PolyBuilder q(num.ring());
  const Term& dl = den.leading_term();
  while (!rem.empty()) {
    auto top = rem.begin();
    auto m = top->first.divided_by(dl.mono);
    if (!m) return std::nullopt;
    Coef c = top->second / dl.coef;
    q.add(*m, c);
    rem.erase(top);
    bool first = true;
    for (const auto& t : den.terms()) {
      if (first) {  // leading term cancels by construction
        first = false;
        continue;
      }
      Monomial mm = t.mono * *m;
      Coef delta = t.coef * c;
      auto [it, inserted] = rem.try_emplace(std::move(mm), -delta);
      if (!inserted) {
        it->second -= delta;
        if (it->second.is_zero()) rem.erase(it);
      }
    }
  }
  return q.take();
}

DiffPoly content_wrt(const DiffPoly& p, DerVar v) {
  if (p.is_zero()) return p;
  std::vector<DiffPoly> cs = p.coeffs_wrt(v);
  DiffPoly g = DiffPoly::zero(p.ring());
  for (const auto& c : cs) {
    if (c.is_zero()) continue;
    g = g.is_zero() ? c : alg_gcd(g, c);
    if (g.is_constant()) break;
  }
  return g.is_zero() ? DiffPoly::integer(p.ring(), 1) : g.primitive_normalized();
}

DiffPoly primitive_part_wrt(const DiffPoly& p, DerVar v) {
  if (p.is_zero()) return p;
  DiffPoly c = content_wrt(p, v);
  if (c.is_constant()) return p.primitive_normalized();
  auto q = exact_divide(p, c);
  if (!q) throw MathError("internal", "content does not divide its polynomial");
  return q->primitive_normalized();
}

namespace {

// Highest canonical variable occurring in p or q; nullopt when both constant.
std::optional<DerVar> top_variable(const DiffPoly& p, const DiffPoly& q) {
  bool found = false;
  VarKey best = 0;
  for (const DiffPoly* f : {&p, &q})
    for (const auto& t : f->terms())
      for (const auto& fac : t.mono.factors())
        if (!found || fac.key > best) {
          best = fac.key;
          found = true;
        }
  if (!found) return std::nullopt;
  return dervar_of(best);
}

// Classical pseudo-remainder: lc(B,v)^{d+1} * A = Q*B + R with d the degree
// gap; the multiplier power is padded to exactly d+1 (subresultant contract).
DiffPoly classical_prem(const DiffPoly& A, const DiffPoly& B, DerVar v) {
  std::uint32_t db = B.degree_of(v);
  std::uint32_t da = A.degree_of(v);
  if (db == 0) throw MathError("internal", "classical_prem divisor free of v");
  if (da < db) throw MathError("internal", "classical_prem degree order");
  DiffPoly init = B.coeff_of_power(v, db);
  DiffPoly tail = B - init.times_mono(Monomial::var(v, db));
  DiffPoly r = A;
  std::uint32_t steps = 0;
  while (!r.is_zero()) {
    std::uint32_t dr = r.degree_of(v);
    if (dr < db) break;
    DiffPoly lc = r.coeff_of_power(v, dr);
    r = init * (r - lc.times_mono(Monomial::var(v, dr))) -
        (lc * tail).times_mono(Monomial::var(v, dr - db));
    ++steps;
  }
  std::uint32_t want = da - db + 1;
  if (steps < want) r = r * init.pow(want - steps);
  return r;
}

}  // namespace

namespace {

// Evaluate p at integer values for every derivative variable except `keep`,
// returning the univariate coefficient list (ascending powers of keep).
std::vector<mpq_class> eval_to_univariate(const DiffPoly& p, VarKey keep,
                                          const std::map<VarKey, long>& values) {
  std::vector<mpq_class> out(p.degree_of(dervar_of(keep)) + 1, mpq_class(0));
  for (const auto& t : p.terms()) {
    mpq_class c = t.coef.q();
    std::uint32_t ke = 0;
    for (const auto& f : t.mono.factors()) {
      if (f.key == keep) {
        ke = f.exp;
        continue;
      }
      mpz_class base(values.at(f.key));
      mpz_class pw;
      mpz_pow_ui(pw.get_mpz_t(), base.get_mpz_t(), f.exp);
      c *= pw;
    }
    out[ke] += c;
  }
  while (out.size() > 1 && out.back() == 0) out.pop_back();
  return out;
}

int univariate_gcd_degree(std::vector<mpq_class> a, std::vector<mpq_class> b) {
  auto deg = [](const std::vector<mpq_class>& f) {
    return static_cast<int>(f.size()) - 1;
  };
  auto trim = [](std::vector<mpq_class>& f) {
    while (f.size() > 1 && f.back() == 0) f.pop_back();
  };
  trim(a);
  trim(b);
  if (deg(a) == 0 && a[0] == 0) return deg(b);
  if (deg(b) == 0 && b[0] == 0) return deg(a);
  while (true) {
    if (deg(b) == 0) return b[0] == 0 ? deg(a) : 0;
    if (deg(a) < deg(b)) std::swap(a, b);
    // a := a - (lc_a/lc_b) x^(da-db) b
    mpq_class f = a.back() / b.back();
    std::size_t shift = a.size() - b.size();
    for (std::size_t i = 0; i < b.size(); ++i) a[i + shift] -= f * b[i];
    a.pop_back();
    trim(a);
    if (a.size() == 1 && a[0] == 0) return deg(b);
  }
}

// One-sided certificate that gcd(p, q) is a constant: for every variable
// common to p and q, a random evaluation that preserves deg_v of one input
// and yields a degree-0 univariate gcd proves the gcd is free of v. Only
// usable over Q; returns false (no information) when uncertifiable.
bool gcd_certified_trivial(const DiffPoly& p, const DiffPoly& q) {
  if (p.ring()->field() != FieldKind::Rationals) return false;
  std::set<VarKey> vp, vq;
  for (const auto& t : p.terms())
    for (const auto& f : t.mono.factors()) vp.insert(f.key);
  for (const auto& t : q.terms())
    for (const auto& f : t.mono.factors()) vq.insert(f.key);
  std::vector<VarKey> common;
  for (VarKey k : vp)
    if (vq.count(k)) common.push_back(k);
  if (common.empty()) return true;
  std::mt19937_64 rng(0x5eedULL + vp.size() * 131 + vq.size());
  std::uniform_int_distribution<long> pick(-997, 997);
  for (VarKey v : common) {
    DerVar dv = dervar_of(v);
    std::uint32_t dp = p.degree_of(dv), dq = q.degree_of(dv);
    bool certified = false;
    for (int attempt = 0; attempt < 4 && !certified; ++attempt) {
      std::map<VarKey, long> values;
      for (VarKey k : vp) values.try_emplace(k, pick(rng));
      for (VarKey k : vq) values.try_emplace(k, pick(rng));
      auto ua = eval_to_univariate(p, v, values);
      auto ub = eval_to_univariate(q, v, values);
      bool deg_kept = (ua.size() == dp + 1 && !(ua.back() == 0)) ||
                      (ub.size() == dq + 1 && !(ub.back() == 0));
      if (!deg_kept) continue;
      if (univariate_gcd_degree(ua, ub) == 0) certified = true;
    }
    if (!certified) return false;
  }
  return true;
}

}  // namespace

DiffPoly alg_gcd(const DiffPoly& p, const DiffPoly& q) {
  if (p.is_zero() && q.is_zero())
    throw MathError("bad_input", "gcd of two zero polynomials");
  if (p.is_zero()) return q.primitive_normalized();
  if (q.is_zero()) return p.primitive_normalized();
  require_same_ring(p.ring(), q.ring());
  auto tv = top_variable(p, q);
  if (!tv) return DiffPoly::integer(p.ring(), 1);
  if (gcd_certified_trivial(p, q)) return DiffPoly::integer(p.ring(), 1);
  DerVar v = *tv;
  std::uint32_t dp = p.degree_of(v), dq = q.degree_of(v);
  if (dp == 0 || dq == 0) {
    // v occurs in only one argument: gcd divides that argument's v-content
    const DiffPoly& with = dp == 0 ? q : p;
    const DiffPoly& other = dp == 0 ? p : q;
    return alg_gcd(content_wrt(with, v), other);
  }
  DiffPoly cp = content_wrt(p, v);
  DiffPoly cq = content_wrt(q, v);
  DiffPoly cg = alg_gcd(cp, cq);
  DiffPoly A = *exact_divide(p, cp);
  DiffPoly B = *exact_divide(q, cq);
  if (A.degree_of(v) < B.degree_of(v)) std::swap(A, B);
  // subresultant polynomial remainder sequence
  DiffPoly g = DiffPoly::integer(p.ring(), 1);
  DiffPoly h = DiffPoly::integer(p.ring(), 1);
  while (true) {
    std::uint32_t delta = A.degree_of(v) - B.degree_of(v);
    DiffPoly R = classical_prem(A, B, v);
    if (R.is_zero()) break;
    if (R.degree_of(v) == 0) {
      // the gcd of two v-primitive polynomials with a v-free PRS tail is
      // trivial in v, hence trivial outright
      return cg.primitive_normalized();
    }
    DiffPoly divisor = g * h.pow(delta);
    auto nb = exact_divide(R, divisor);
    if (!nb) throw MathError("internal", "subresultant division failed");
    A = B;
    B = *nb;
    g = A.coeff_of_power(v, A.degree_of(v));
    if (delta > 0) {
      auto nh = exact_divide(g.pow(delta), h.pow(delta - 1));
      if (!nh) throw MathError("internal", "subresultant h-update failed");
      h = *nh;
    }
  }
  return (cg * primitive_part_wrt(B, v)).primitive_normalized();
}

DiffPoly squarefree_part_wrt(const DiffPoly& p, DerVar v) {
  if (p.is_zero() || p.degree_of(v) == 0) return p.primitive_normalized();
  DiffPoly d = p.partial(v);
  DiffPoly g = alg_gcd(p, d);
  auto sf = exact_divide(p, g);
  if (!sf) throw MathError("internal", "squarefree division failed");
  return sf->primitive_normalized();
}

// ---------------------------------------------------------------------------
// Determinants and resultants

DiffPoly poly_determinant(const std::vector<std::vector<DiffPoly>>& m) {
  std::size_t n = m.size();
  if (n == 0) throw MathError("bad_input", "determinant of empty matrix");
  RingPtr ring;
  for (const auto& row : m) {
    if (row.size() != n) throw MathError("bad_input", "matrix not square");
    for (const auto& e : row)
      if (e.ring()) ring = e.ring();
  }
  if (!ring) throw MathError("bad_input", "matrix of null polynomials");
  std::vector<std::vector<DiffPoly>> a = m;
  for (auto& row : a)
    for (auto& e : row)
      if (!e.ring()) e = DiffPoly::zero(ring);
  // fraction-free Bareiss elimination
  DiffPoly prev = DiffPoly::integer(ring, 1);
  int sign = 1;
  for (std::size_t k = 0; k + 1 < n; ++k) {
    if (a[k][k].is_zero()) {
      std::size_t pivot = k;
      for (std::size_t r = k + 1; r < n; ++r)
        if (!a[r][k].is_zero()) {
          pivot = r;
          break;
        }
      if (pivot == k) return DiffPoly::zero(ring);
      std::swap(a[k], a[pivot]);
      sign = -sign;
    }
    for (std::size_t i = k + 1; i < n; ++i) {
      for (std::size_t j = k + 1; j < n; ++j) {
        DiffPoly num = a[k][k] * a[i][j] - a[i][k] * a[k][j];
        auto div = exact_divide(num, prev);
        if (!div) throw MathError("internal", "Bareiss division failed");
        a[i][j] = std::move(*div);
      }
      a[i][k] = DiffPoly::zero(ring);
    }
    prev = a[k][k];
  }
  DiffPoly det = a[n - 1][n - 1];
  return sign < 0 ? -det : det;
}

DiffPoly resultant(const DiffPoly& p, const DiffPoly& q, DerVar v) {
  require_same_ring(p.ring(), q.ring());
  const RingPtr& ring = p.ring();
  if (p.is_zero() || q.is_zero()) return DiffPoly::zero(ring);
  std::uint32_t m = p.degree_of(v);
  std::uint32_t n = q.degree_of(v);
  if (m == 0 && n == 0) return DiffPoly::integer(ring, 1);
  if (m == 0) return p.pow(n);
  if (n == 0) return q.pow(m);
  std::vector<DiffPoly> pc = p.coeffs_wrt(v);  // ascending
  std::vector<DiffPoly> qc = q.coeffs_wrt(v);
  std::size_t size = m + n;
  std::vector<std::vector<DiffPoly>> s(size,
                                       std::vector<DiffPoly>(size, DiffPoly::zero(ring)));
  for (std::uint32_t row = 0; row < n; ++row)
    for (std::uint32_t j = 0; j <= m; ++j) s[row][row + j] = pc[m - j];
  for (std::uint32_t row = 0; row < m; ++row)
    for (std::uint32_t j = 0; j <= n; ++j) s[n + row][row + j] = qc[n - j];
  return poly_determinant(s);
}

// ---------------------------------------------------------------------------
// Prolongation

AlgSystem prolong(const std::vector<DiffPoly>& system,
                  const std::vector<std::uint32_t>& bounds) {
  if (system.empty()) throw MathError("bad_input", "prolonging an empty system");
  if (system.size() != bounds.size())
    throw MathError("bad_input", "one prolongation bound per polynomial required");
  AlgSystem out;
  out.ring = system.front().ring();
  for (std::size_t i = 0; i < system.size(); ++i) {
    require_same_ring(system[i].ring(), out.ring);
    DiffPoly cur = system[i];
    out.polynomials.push_back(cur);
    for (std::uint32_t j = 1; j <= bounds[i]; ++j) {
      cur = cur.differentiate();
      out.polynomials.push_back(cur);
    }
  }
  out.max_frozen_order.assign(out.ring->size(), -1);
  for (const auto& p : out.polynomials)
    for (const auto& t : p.terms())
      for (const auto& f : t.mono.factors()) {
        DerVar v = dervar_of(f.key);
        out.max_frozen_order[v.var] =
            std::max(out.max_frozen_order[v.var], static_cast<int>(v.ord));
      }
  out.split_by_kind();
  return out;
}

std::vector<VarKey> AlgSystem::occurring_vars() const {
  std::set<VarKey> keys;
  for (const auto& p : polynomials)
    for (const auto& t : p.terms())
      for (const auto& f : t.mono.factors()) keys.insert(f.key);
  return {keys.begin(), keys.end()};
}

void AlgSystem::split_by_kind() {
  elim_vars.clear();
  keep_vars.clear();
  for (VarKey k : occurring_vars()) {
    DerVar v = dervar_of(k);
    (ring->is_main(v.var) ? elim_vars : keep_vars).push_back(k);
  }
  auto order_desc = [](VarKey a, VarKey b) {
    DerVar va = dervar_of(a), vb = dervar_of(b);
    if (va.ord != vb.ord) return va.ord > vb.ord;
    return va.var > vb.var;
  };
  std::sort(elim_vars.begin(), elim_vars.end(), order_desc);
  std::sort(keep_vars.begin(), keep_vars.end(), order_desc);
}

void AlgSystem::validate() const {
  std::set<VarKey> elim(elim_vars.begin(), elim_vars.end());
  std::set<VarKey> keep(keep_vars.begin(), keep_vars.end());
  for (VarKey k : elim)
    if (keep.count(k))
      throw MathError("bad_input", "elimination split not disjoint");
  for (VarKey k : occurring_vars())
    if (!elim.count(k) && !keep.count(k))
      throw MathError("bad_input", "system mentions a variable outside the split");
}

// ---------------------------------------------------------------------------
// Buchberger engine (dense exponent vectors, pure lex by priority)

namespace {

using Expo = std::vector<std::uint16_t>;

// Block order: blocks listed most-significant first, graded reverse-lex
// inside each block. Monomials touching an earlier block dominate, which is
// exactly the elimination property; grevlex inside blocks keeps intermediate
// bases and coefficients tame.
struct BlockOrder {
  std::size_t nvars = 0;
  std::vector<std::size_t> starts;  // ascending, starts[0] == 0

  // strong ordering: negative when a < b, positive when a > b
  int cmp(const Expo& a, const Expo& b) const {
    for (std::size_t bi = 0; bi < starts.size(); ++bi) {
      std::size_t lo = starts[bi];
      std::size_t hi = bi + 1 < starts.size() ? starts[bi + 1] : nvars;
      std::uint32_t da = 0, db = 0;
      for (std::size_t i = lo; i < hi; ++i) {
        da += a[i];
        db += b[i];
      }
      if (da != db) return da < db ? -1 : 1;
      for (std::size_t i = hi; i-- > lo;) {
        if (a[i] != b[i]) return a[i] < b[i] ? 1 : -1;  // reverse-lex
      }
    }
    return 0;
  }
};

struct GTermMapCmp {
  const BlockOrder* order = nullptr;
  bool operator()(const Expo& a, const Expo& b) const {
    return order->cmp(a, b) > 0;  // descending
  }
};
using GMap = std::map<Expo, Coef, GTermMapCmp>;

struct GPoly {
  std::vector<Expo> e;  // descending under the block order
  std::vector<Coef> c;
  std::size_t size() const { return c.size(); }
  bool empty() const { return c.empty(); }
};

class Engine {
 public:
  Engine(RingPtr ring, std::vector<VarKey> priority,
         std::vector<std::size_t> block_starts, ResourceGuard& guard)
      : ring_(std::move(ring)), priority_(std::move(priority)), guard_(guard) {
    order_.nvars = priority_.size();
    order_.starts = std::move(block_starts);
    if (order_.starts.empty() || order_.starts[0] != 0)
      order_.starts.insert(order_.starts.begin(), 0);
    for (std::size_t i = 0; i < priority_.size(); ++i)
      pos_[priority_[i]] = i;
  }

  GMap empty_map() const { return GMap(GTermMapCmp{&order_}); }

  GPoly to_g(const DiffPoly& p) const {
    GMap acc = empty_map();
    for (const auto& t : p.terms()) {
      Expo e(priority_.size(), 0);
      for (const auto& f : t.mono.factors()) {
        auto it = pos_.find(f.key);
        if (it == pos_.end())
          throw MathError("internal", "polynomial variable missing from term order");
        if (f.exp > 0xFFFF) throw MathError("resource_limit", "exponent too large");
        e[it->second] = static_cast<std::uint16_t>(f.exp);
      }
      acc.emplace(std::move(e), t.coef);
    }
    return from_map(acc);
  }

  DiffPoly from_g(const GPoly& g) const {
    std::vector<Term> terms;
    terms.reserve(g.size());
    for (std::size_t i = 0; i < g.size(); ++i) {
      std::vector<VarPow> f;
      for (std::size_t k = 0; k < priority_.size(); ++k)
        if (g.e[i][k] > 0) f.push_back({priority_[k], g.e[i][k]});
      terms.push_back({Monomial::from_factors(std::move(f)), g.c[i]});
    }
    return DiffPoly::from_terms(ring_, std::move(terms));
  }

  static GPoly from_map(const GMap& m) {
    GPoly g;
    g.e.reserve(m.size());
    g.c.reserve(m.size());
    for (const auto& [e, c] : m) {
      if (c.is_zero()) continue;
      g.e.push_back(e);
      g.c.push_back(c);
    }
    return g;
  }

  // Integer-primitive scaling with positive leading coefficient.
  void normalize(GPoly& g) const {
    if (g.empty()) return;
    std::vector<const Coef*> cs;
    cs.reserve(g.size());
    for (const auto& c : g.c) cs.push_back(&c);
    Coef content = Coef::content_of(cs);
    if (content.is_one()) return;
    for (auto& c : g.c) c = c / content;
  }

  static bool divides(const Expo& den, const Expo& num) {
    for (std::size_t i = 0; i < den.size(); ++i)
      if (den[i] > num[i]) return false;
    return true;
  }

  // Normal form. The head map receives monomials in strictly descending
  // order, and every monomial generated by a reduction step is strictly
  // below the reduced one, so merges only ever touch `work`. In top_only
  // mode reduction stops at the first irreducible leading monomial, which
  // curbs coefficient growth during the main Buchberger loop.
  GPoly reduce_full(GMap work, const std::vector<GPoly>& basis,
                    bool top_only = false) const {
    GMap out = empty_map();
    std::uint64_t steps = 0;
    while (!work.empty()) {
      if (((++steps) & 0x3FFu) == 0) guard_.check_deadline();
      guard_.check_terms(work.size() + out.size());
      auto top = work.begin();
      const Expo& mono = top->first;
      const GPoly* red = nullptr;
      for (const auto& g : basis) {
        if (!g.empty() && divides(g.e[0], mono)) {
          if (!red || g.size() < red->size()) red = &g;
        }
      }
      if (!red && top_only) {
        for (auto& [e, c] : work) out.emplace(e, std::move(c));
        break;
      }
      if (!red) {
        out.emplace(top->first, std::move(top->second));
        work.erase(top);
        continue;
      }
      Coef factor = top->second / red->c[0];
      Expo shift(mono.size());
      for (std::size_t i = 0; i < mono.size(); ++i)
        shift[i] = static_cast<std::uint16_t>(mono[i] - red->e[0][i]);
      work.erase(top);
      for (std::size_t i = 1; i < red->size(); ++i) {
        Expo e(shift.size());
        for (std::size_t k = 0; k < shift.size(); ++k)
          e[k] = static_cast<std::uint16_t>(shift[k] + red->e[i][k]);
        Coef delta = factor * red->c[i];
        auto [it, inserted] = work.try_emplace(std::move(e), -delta);
        if (!inserted) {
          it->second -= delta;
          if (it->second.is_zero()) work.erase(it);
        }
      }
    }
    return from_map(out);
  }

  GPoly reduce_poly(const GPoly& f, const std::vector<GPoly>& basis,
                    bool top_only = false) const {
    GMap m = empty_map();
    for (std::size_t i = 0; i < f.size(); ++i) m.emplace(f.e[i], f.c[i]);
    return reduce_full(std::move(m), basis, top_only);
  }

  GPoly s_poly(const GPoly& f, const GPoly& g) const {
    Expo lcm(priority_.size());
    for (std::size_t i = 0; i < lcm.size(); ++i)
      lcm[i] = std::max(f.e[0][i], g.e[0][i]);
    GMap m = empty_map();
    auto accumulate = [&](const GPoly& p, const Expo& lead, const Coef& scale) {
      Expo shift(lcm.size());
      for (std::size_t i = 0; i < lcm.size(); ++i)
        shift[i] = static_cast<std::uint16_t>(lcm[i] - lead[i]);
      for (std::size_t i = 0; i < p.size(); ++i) {
        Expo e(lcm.size());
        for (std::size_t k = 0; k < lcm.size(); ++k)
          e[k] = static_cast<std::uint16_t>(shift[k] + p.e[i][k]);
        auto [it, inserted] = m.try_emplace(std::move(e), p.c[i] * scale);
        if (!inserted) {
          it->second += p.c[i] * scale;
          if (it->second.is_zero()) m.erase(it);
        }
      }
    };
    accumulate(f, f.e[0], g.c[0]);
    accumulate(g, g.e[0], -f.c[0]);
    return from_map(m);
  }

  std::vector<GPoly> buchberger(std::vector<GPoly> gens) const {
    std::vector<GPoly> basis;
    struct Pair {
      std::uint32_t deg = 0;
      Expo lcm;
      std::size_t i = 0, j = 0;
    };
    auto pair_less = [](const Pair& a, const Pair& b) {
      if (a.deg != b.deg) return a.deg < b.deg;
      if (a.lcm != b.lcm) return a.lcm < b.lcm;
      if (a.i != b.i) return a.i < b.i;
      return a.j < b.j;
    };
    std::vector<Pair> queue;
    auto make_lcm = [&](std::size_t i, std::size_t j, Expo& lcm, std::uint32_t& deg) {
      lcm.resize(priority_.size());
      deg = 0;
      for (std::size_t t = 0; t < priority_.size(); ++t) {
        lcm[t] = std::max(basis[i].e[0][t], basis[j].e[0][t]);
        deg += lcm[t];
      }
    };
    // Gebauer-Moeller pair update for the freshly appended element k.
    auto update_pairs = [&](std::size_t k) {
      const Expo& lt_k = basis[k].e[0];
      // B-criterion on surviving old pairs
      std::erase_if(queue, [&](const Pair& p) {
        if (!divides(lt_k, p.lcm)) return false;
        Expo l1, l2;
        std::uint32_t d;
        make_lcm(p.i, k, l1, d);
        make_lcm(p.j, k, l2, d);
        return l1 != p.lcm && l2 != p.lcm;
      });
      std::vector<Pair> fresh;
      for (std::size_t i = 0; i < k; ++i) {
        Pair p;
        p.i = i;
        p.j = k;
        make_lcm(i, k, p.lcm, p.deg);
        fresh.push_back(std::move(p));
      }
      // M-criterion: drop pairs whose lcm is a proper multiple of another
      std::vector<bool> drop(fresh.size(), false);
      for (std::size_t a = 0; a < fresh.size(); ++a)
        for (std::size_t b = 0; b < fresh.size(); ++b) {
          if (a == b || drop[a] || drop[b]) continue;
          if (fresh[b].lcm != fresh[a].lcm && divides(fresh[b].lcm, fresh[a].lcm))
            drop[a] = true;
        }
      // F-criterion: one representative per lcm value
      for (std::size_t a = 0; a < fresh.size(); ++a)
        for (std::size_t b = a + 1; b < fresh.size(); ++b)
          if (!drop[a] && !drop[b] && fresh[a].lcm == fresh[b].lcm) drop[b] = true;
      // product criterion on the survivors
      for (std::size_t a = 0; a < fresh.size(); ++a) {
        if (drop[a]) continue;
        bool coprime = true;
        for (std::size_t t = 0; t < priority_.size(); ++t)
          if (basis[fresh[a].i].e[0][t] > 0 && lt_k[t] > 0) {
            coprime = false;
            break;
          }
        if (!coprime) queue.push_back(std::move(fresh[a]));
      }
    };
    for (auto& g : gens) {
      if (g.empty()) continue;
      normalize(g);
      basis.push_back(std::move(g));
      update_pairs(basis.size() - 1);
    }
    while (!queue.empty()) {
      guard_.check_deadline();
      guard_.check_basis(basis.size());
      auto it = std::min_element(queue.begin(), queue.end(), pair_less);
      Pair p = std::move(*it);
      queue.erase(it);
      GPoly s = s_poly(basis[p.i], basis[p.j]);
      if (s.empty()) continue;
      GPoly r = reduce_poly(s, basis, /*top_only=*/true);
      if (r.empty()) continue;
      normalize(r);
      basis.push_back(std::move(r));
      update_pairs(basis.size() - 1);
      if (std::getenv("DELTACHOW_GB_TRACE")) {
        std::size_t limbs = 0;
        for (const auto& c : basis.back().c)
          if (c.kind() == FieldKind::Rationals)
            limbs += mpz_size(c.q().get_num().get_mpz_t()) +
                     mpz_size(c.q().get_den().get_mpz_t());
        std::fprintf(stderr, "[gb] basis=%zu queue=%zu new_terms=%zu coef_limbs=%zu\n",
                     basis.size(), queue.size(), basis.back().size(), limbs);
      }
    }
    return interreduce(std::move(basis));
  }

  std::vector<GPoly> interreduce(std::vector<GPoly> basis) const {
    // Sorting by (total degree, lex) puts every proper divisor before its
    // multiples, so one forward scan minimizes the leading-term set.
    std::sort(basis.begin(), basis.end(), [](const GPoly& a, const GPoly& b) {
      std::uint32_t da = 0, db = 0;
      for (auto x : a.e[0]) da += x;
      for (auto x : b.e[0]) db += x;
      if (da != db) return da < db;
      return a.e[0] < b.e[0];
    });
    std::vector<GPoly> kept;
    for (auto& g : basis) {
      bool redundant = false;
      for (const auto& k : kept)
        if (divides(k.e[0], g.e[0])) {
          redundant = true;
          break;
        }
      if (!redundant) kept.push_back(std::move(g));
    }
    // tail-reduce each element modulo the others
    for (std::size_t i = 0; i < kept.size(); ++i) {
      std::vector<GPoly> others;
      for (std::size_t j = 0; j < kept.size(); ++j)
        if (j != i) others.push_back(kept[j]);
      GPoly r = reduce_poly(kept[i], others);
      if (!r.empty()) {
        normalize(r);
        kept[i] = std::move(r);
      }
    }
    std::erase_if(kept, [](const GPoly& g) { return g.empty(); });
    std::sort(kept.begin(), kept.end(), [this](const GPoly& a, const GPoly& b) {
      return order_.cmp(a.e[0], b.e[0]) < 0;
    });
    return kept;
  }

  const std::vector<VarKey>& priority() const { return priority_; }
  const std::vector<std::size_t>& blocks() const { return order_.starts; }

 private:
  RingPtr ring_;
  std::vector<VarKey> priority_;
  BlockOrder order_;
  std::unordered_map<VarKey, std::size_t> pos_;
  ResourceGuard& guard_;
};

}  // namespace

GroebnerBasis groebner(const std::vector<DiffPoly>& gens,
                       std::vector<VarKey> priority,
                       std::vector<std::size_t> block_starts,
                       ResourceGuard& guard) {
  if (gens.empty()) throw MathError("bad_input", "Groebner basis of empty system");
  RingPtr ring = gens.front().ring();
  Engine eng(ring, std::move(priority), std::move(block_starts), guard);
  std::vector<GPoly> gp;
  for (const auto& g : gens) {
    require_same_ring(g.ring(), ring);
    if (!g.is_zero()) gp.push_back(eng.to_g(g));
  }
  std::vector<GPoly> basis = eng.buchberger(std::move(gp));
  GroebnerBasis out;
  out.priority = eng.priority();
  out.block_starts = eng.blocks();
  for (const auto& b : basis) out.generators.push_back(eng.from_g(b));
  return out;
}

DiffPoly normal_form(const DiffPoly& f, const GroebnerBasis& gb,
                     ResourceGuard& guard) {
  RingPtr ring = f.ring();
  Engine eng(ring, gb.priority, gb.block_starts, guard);
  std::vector<GPoly> basis;
  for (const auto& g : gb.generators) basis.push_back(eng.to_g(g.mapped_by_name(ring)));
  return eng.from_g(eng.reduce_poly(eng.to_g(f), basis));
}

bool spolys_reduce_to_zero(const GroebnerBasis& gb, ResourceGuard& guard) {
  if (gb.generators.empty()) return true;
  RingPtr ring = gb.generators.front().ring();
  Engine eng(ring, gb.priority, gb.block_starts, guard);
  std::vector<GPoly> basis;
  for (const auto& g : gb.generators) basis.push_back(eng.to_g(g));
  for (std::size_t i = 0; i < basis.size(); ++i)
    for (std::size_t j = i + 1; j < basis.size(); ++j) {
      GPoly s = eng.s_poly(basis[i], basis[j]);
      if (s.empty()) continue;
      if (!eng.reduce_poly(s, basis).empty()) return false;
    }
  return true;
}

GroebnerBasis groebner_eliminate(const AlgSystem& sys,
                                 const std::optional<DiffPoly>& saturate_by,
                                 ResourceGuard& guard,
                                 std::function<void(const GroebnerBasis&)> trace) {
  sys.validate();
  if (sys.polynomials.empty())
    throw MathError("bad_input", "elimination of an empty system");

  RingPtr work_ring = sys.ring;
  std::vector<DiffPoly> gens = sys.polynomials;
  std::vector<VarKey> priority;

  bool saturating = saturate_by && !saturate_by->is_constant();
  std::uint32_t zvar = 0;
  if (saturating) {
    std::string zname = "_zsat";
    while (sys.ring->index_of(zname)) zname += "_";
    work_ring = sys.ring->extended({zname}, {VarKind::Main});
    zvar = work_ring->index_of(zname).value();
    std::vector<std::uint32_t> idmap(sys.ring->size());
    for (std::uint32_t i = 0; i < sys.ring->size(); ++i) idmap[i] = i;
    for (auto& g : gens) g = g.mapped(work_ring, idmap);
    DiffPoly h = saturate_by->mapped(work_ring, idmap);
    DiffPoly zh = DiffPoly::var(work_ring, DerVar{zvar, 0}) * h -
                  DiffPoly::integer(work_ring, 1);
    gens.push_back(std::move(zh));
    priority.push_back(key_of(DerVar{zvar, 0}));
  }
  priority.insert(priority.end(), sys.elim_vars.begin(), sys.elim_vars.end());
  std::size_t elim_count = priority.size();
  priority.insert(priority.end(), sys.keep_vars.begin(), sys.keep_vars.end());

  GroebnerBasis full = groebner(gens, priority, {0, elim_count}, guard);
  if (trace) trace(full);

  std::set<VarKey> keep(sys.keep_vars.begin(), sys.keep_vars.end());
  GroebnerBasis out;
  out.priority = sys.keep_vars;
  out.block_starts = {0};
  for (const auto& g : full.generators) {
    bool keep_only = true;
    for (const auto& t : g.terms())
      for (const auto& f : t.mono.factors())
        if (!keep.count(f.key)) {
          keep_only = false;
          break;
        }
    if (keep_only) out.generators.push_back(g.mapped_by_name(sys.ring));
  }
  return out;
}

}  // namespace deltachow
