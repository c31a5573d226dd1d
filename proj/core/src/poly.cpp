#include "deltachow/poly.hpp"

#include <algorithm>

#include "deltachow/error.hpp"

namespace deltachow {

namespace {
bool term_desc(const Term& a, const Term& b) {
  return canonical_cmp(a.mono, b.mono) == std::strong_ordering::greater;
}
}  // namespace

DiffPoly DiffPoly::zero(RingPtr ring) {
  DiffPoly p;
  p.ring_ = std::move(ring);
  return p;
}

DiffPoly DiffPoly::constant(RingPtr ring, Coef c) {
  DiffPoly p = zero(std::move(ring));
  if (!c.is_zero()) p.terms_.push_back({Monomial(), std::move(c)});
  return p;
}

DiffPoly DiffPoly::integer(RingPtr ring, long v) {
  Coef c = Coef::integer(ring->field(), v);
  return constant(std::move(ring), std::move(c));
}

DiffPoly DiffPoly::var(RingPtr ring, DerVar v, std::uint32_t exp) {
  if (v.var >= ring->size()) throw MathError("unknown_variable", "variable index out of range");
  if (v.ord > kMaxOrder) throw MathError("resource_limit", "derivative order too large");
  DiffPoly p;
  p.ring_ = ring;
  p.terms_.push_back({Monomial::var(v, exp), Coef::one(ring->field())});
  return p;
}

DiffPoly DiffPoly::from_terms(RingPtr ring, std::vector<Term> terms) {
  std::sort(terms.begin(), terms.end(), term_desc);
  DiffPoly p;
  p.ring_ = std::move(ring);
  for (auto& t : terms) {
    if (t.coef.is_zero()) continue;
    if (!p.terms_.empty() && p.terms_.back().mono == t.mono) {
      p.terms_.back().coef += t.coef;
      if (p.terms_.back().coef.is_zero()) p.terms_.pop_back();
    } else {
      p.terms_.push_back(std::move(t));
    }
  }
  return p;
}

bool DiffPoly::is_constant() const {
  return terms_.empty() || (terms_.size() == 1 && terms_[0].mono.is_one());
}

const Term& DiffPoly::leading_term() const {
  if (terms_.empty()) throw MathError("internal", "leading term of zero polynomial");
  return terms_.front();
}

DiffPoly DiffPoly::operator+(const DiffPoly& o) const {
  require_same_ring(ring_, o.ring_);
  DiffPoly r;
  r.ring_ = ring_;
  r.terms_.reserve(terms_.size() + o.terms_.size());
  std::size_t i = 0, j = 0;
  while (i < terms_.size() && j < o.terms_.size()) {
    auto c = canonical_cmp(terms_[i].mono, o.terms_[j].mono);
    if (c == std::strong_ordering::greater)
      r.terms_.push_back(terms_[i++]);
    else if (c == std::strong_ordering::less)
      r.terms_.push_back(o.terms_[j++]);
    else {
      Coef s = terms_[i].coef + o.terms_[j].coef;
      if (!s.is_zero()) r.terms_.push_back({terms_[i].mono, std::move(s)});
      ++i, ++j;
    }
  }
  for (; i < terms_.size(); ++i) r.terms_.push_back(terms_[i]);
  for (; j < o.terms_.size(); ++j) r.terms_.push_back(o.terms_[j]);
  return r;
}

DiffPoly DiffPoly::operator-(const DiffPoly& o) const { return *this + (-o); }

DiffPoly DiffPoly::operator-() const {
  DiffPoly r = *this;
  for (auto& t : r.terms_) t.coef = -t.coef;
  return r;
}

DiffPoly DiffPoly::operator*(const DiffPoly& o) const {
  require_same_ring(ring_, o.ring_);
  if (is_zero() || o.is_zero()) return zero(ring_);
  PolyBuilder b(ring_);
  // iterate over the shorter operand outside
  const DiffPoly& small = terms_.size() <= o.terms_.size() ? *this : o;
  const DiffPoly& big = terms_.size() <= o.terms_.size() ? o : *this;
  for (const auto& ts : small.terms_) b.add_scaled(big, ts.coef, ts.mono);
  return b.take();
}

bool DiffPoly::operator==(const DiffPoly& o) const {
  if (terms_.size() != o.terms_.size()) return false;
  for (std::size_t i = 0; i < terms_.size(); ++i)
    if (!(terms_[i].mono == o.terms_[i].mono) || !(terms_[i].coef == o.terms_[i].coef))
      return false;
  return true;
}

DiffPoly DiffPoly::pow(std::uint32_t e) const {
  if (e == 0) return integer(ring_, 1);
  DiffPoly base = *this;
  DiffPoly acc = integer(ring_, 1);
  while (e > 0) {
    if (e & 1u) acc = acc * base;
    e >>= 1u;
    if (e > 0) base = base * base;
  }
  return acc;
}

DiffPoly DiffPoly::scaled(const Coef& c) const {
  if (c.is_zero()) return zero(ring_);
  DiffPoly r = *this;
  for (auto& t : r.terms_) t.coef *= c;
  return r;
}

DiffPoly DiffPoly::times_mono(const Monomial& m) const {
  DiffPoly r = *this;
  for (auto& t : r.terms_) t.mono = t.mono * m;
  // multiplying by a fixed monomial preserves the canonical term order
  return r;
}

DiffPoly operator*(const Coef& c, const DiffPoly& p) { return p.scaled(c); }

DiffPoly DiffPoly::differentiate(std::uint32_t k) const {
  DiffPoly cur = *this;
  for (std::uint32_t step = 0; step < k; ++step) {
    PolyBuilder b(ring_);
    for (const auto& t : cur.terms_) {
      Coef dc = t.coef.derivative();
      if (!dc.is_zero()) b.add(t.mono, dc);
      for (const auto& f : t.mono.factors()) {
        DerVar v = dervar_of(f.key);
        if (v.ord + 1 > kMaxOrder)
          throw MathError("resource_limit", "derivative order overflow");
        // c * e * m / v * v^{(ord+1)}
        std::vector<VarPow> nf;
        nf.reserve(t.mono.factors().size() + 1);
        for (const auto& g : t.mono.factors()) {
          if (g.key == f.key) {
            if (g.exp > 1) nf.push_back({g.key, g.exp - 1});
          } else {
            nf.push_back(g);
          }
        }
        nf.push_back({key_of(DerVar{v.var, v.ord + 1}), 1});
        Coef c = t.coef * Coef::integer(ring_->field(), static_cast<long>(f.exp));
        b.add(Monomial::from_factors(std::move(nf)), c);
      }
    }
    cur = b.take();
  }
  return cur;
}

DiffPoly DiffPoly::partial(DerVar v) const {
  VarKey k = key_of(v);
  PolyBuilder b(ring_);
  for (const auto& t : terms_) {
    std::uint32_t e = t.mono.degree_of(k);
    if (e == 0) continue;
    auto m = t.mono.divided_by(Monomial::var(v, 1));
    b.add(*m, t.coef * Coef::integer(ring_->field(), static_cast<long>(e)));
  }
  return b.take();
}

std::optional<int> DiffPoly::order_of(std::uint32_t var) const {
  int best = -1;
  for (const auto& t : terms_) best = std::max(best, t.mono.max_order_of(var));
  if (best < 0) return std::nullopt;
  return best;
}

std::optional<int> DiffPoly::total_order() const {
  int best = -1;
  bool any = false;
  for (const auto& t : terms_)
    for (const auto& f : t.mono.factors()) {
      any = true;
      best = std::max(best, static_cast<int>(dervar_of(f.key).ord));
    }
  if (!any) return std::nullopt;
  return best;
}

std::uint32_t DiffPoly::degree_of(DerVar v) const {
  VarKey k = key_of(v);
  std::uint32_t best = 0;
  for (const auto& t : terms_) best = std::max(best, t.mono.degree_of(k));
  return best;
}

std::uint32_t DiffPoly::total_degree() const {
  std::uint32_t best = 0;
  for (const auto& t : terms_) best = std::max(best, t.mono.total_degree());
  return best;
}

std::vector<Monomial> DiffPoly::support() const {
  std::vector<Monomial> out;
  out.reserve(terms_.size());
  for (const auto& t : terms_) out.push_back(t.mono);
  return out;
}

std::uint32_t DiffPoly::degree_in_vars(const std::vector<std::uint32_t>& vars) const {
  std::uint32_t best = 0;
  for (const auto& t : terms_) {
    std::uint32_t d = 0;
    for (const auto& f : t.mono.factors()) {
      std::uint32_t var = dervar_of(f.key).var;
      if (std::find(vars.begin(), vars.end(), var) != vars.end()) d += f.exp;
    }
    best = std::max(best, d);
  }
  return best;
}

bool DiffPoly::contains_var(std::uint32_t var) const {
  for (const auto& t : terms_)
    if (t.mono.contains_var(var)) return true;
  return false;
}

bool DiffPoly::has_main_dervar() const {
  for (const auto& t : terms_)
    for (const auto& f : t.mono.factors())
      if (ring_->is_main(dervar_of(f.key).var)) return true;
  return false;
}

DiffPoly DiffPoly::substitute(const std::map<VarKey, DiffPoly>& assign) const {
  for (const auto& [k, v] : assign) {
    (void)k;
    require_same_ring(ring_, v.ring());
  }
  PolyBuilder b(ring_);
  // Cache powers of each assigned value per key.
  std::map<VarKey, std::vector<DiffPoly>> powers;
  for (const auto& t : terms_) {
    DiffPoly prod = DiffPoly::constant(ring_, t.coef);
    std::vector<VarPow> untouched;
    for (const auto& f : t.mono.factors()) {
      auto it = assign.find(f.key);
      if (it == assign.end()) {
        untouched.push_back(f);
        continue;
      }
      auto& pw = powers[f.key];
      if (pw.empty()) pw.push_back(DiffPoly::integer(ring_, 1));
      while (pw.size() <= f.exp) pw.push_back(pw.back() * it->second);
      prod = prod * pw[f.exp];
    }
    if (!untouched.empty())
      prod = prod.times_mono(Monomial::from_factors(std::move(untouched)));
    b.add(prod);
  }
  return b.take();
}

std::vector<DiffPoly> DiffPoly::coeffs_wrt(DerVar v) const {
  VarKey k = key_of(v);
  std::uint32_t d = degree_of(v);
  std::vector<DiffPoly> out(d + 1, DiffPoly::zero(ring_));
  std::vector<std::vector<Term>> buckets(d + 1);
  for (const auto& t : terms_) {
    std::uint32_t e = t.mono.degree_of(k);
    Monomial rest = *t.mono.divided_by(Monomial::var(v, e));
    buckets[e].push_back({std::move(rest), t.coef});
  }
  for (std::uint32_t i = 0; i <= d; ++i)
    out[i] = DiffPoly::from_terms(ring_, std::move(buckets[i]));
  return out;
}

DiffPoly DiffPoly::coeff_of_power(DerVar v, std::uint32_t k) const {
  VarKey key = key_of(v);
  std::vector<Term> bucket;
  for (const auto& t : terms_) {
    if (t.mono.degree_of(key) != k) continue;
    Monomial rest = *t.mono.divided_by(Monomial::var(v, k));
    bucket.push_back({std::move(rest), t.coef});
  }
  return DiffPoly::from_terms(ring_, std::move(bucket));
}

Coef DiffPoly::signed_content() const {
  if (is_zero()) return Coef::one(ring_->field());
  std::vector<const Coef*> cs;
  cs.reserve(terms_.size());
  for (const auto& t : terms_) cs.push_back(&t.coef);
  return Coef::content_of(cs);
}

DiffPoly DiffPoly::primitive_normalized() const {
  if (is_zero()) return *this;
  Coef c = signed_content();
  if (c.is_one()) return *this;
  DiffPoly r = *this;
  for (auto& t : r.terms_) t.coef = t.coef / c;
  return r;
}

DiffPoly DiffPoly::mapped(RingPtr new_ring,
                          const std::vector<std::uint32_t>& var_map) const {
  std::vector<Term> terms;
  terms.reserve(terms_.size());
  for (const auto& t : terms_) {
    std::vector<VarPow> nf;
    nf.reserve(t.mono.factors().size());
    for (const auto& f : t.mono.factors()) {
      DerVar v = dervar_of(f.key);
      if (v.var >= var_map.size())
        throw MathError("internal", "variable map incomplete");
      nf.push_back({key_of(DerVar{var_map[v.var], v.ord}), f.exp});
    }
    terms.push_back({Monomial::from_factors(std::move(nf)), t.coef});
  }
  return DiffPoly::from_terms(std::move(new_ring), std::move(terms));
}

DiffPoly DiffPoly::mapped_by_name(RingPtr new_ring) const {
  std::vector<std::uint32_t> var_map(ring_->size());
  for (std::uint32_t i = 0; i < ring_->size(); ++i) {
    auto idx = new_ring->index_of(ring_->name(i));
    if (!idx && contains_var(i))
      throw MathError("unknown_variable",
                      "variable " + ring_->name(i) + " absent from target ring");
    var_map[i] = idx.value_or(0);
  }
  return mapped(std::move(new_ring), var_map);
}

void PolyBuilder::add(const Monomial& m, const Coef& c) {
  if (c.is_zero()) return;
  auto [it, inserted] = acc_.try_emplace(m, c);
  if (!inserted) {
    it->second += c;
    if (it->second.is_zero()) acc_.erase(it);
  }
}

void PolyBuilder::add(const DiffPoly& p) {
  for (const auto& t : p.terms()) add(t.mono, t.coef);
}

void PolyBuilder::add_scaled(const DiffPoly& p, const Coef& c, const Monomial& m) {
  if (c.is_zero()) return;
  for (const auto& t : p.terms()) add(t.mono * m, t.coef * c);
}

DiffPoly PolyBuilder::take() {
  DiffPoly p = DiffPoly::zero(ring_);
  p.terms_.reserve(acc_.size());
  // map iterates ascending; the canonical storage order is descending
  for (auto it = acc_.rbegin(); it != acc_.rend(); ++it)
    if (!it->second.is_zero()) p.terms_.push_back({it->first, std::move(it->second)});
  acc_.clear();
  return p;
}

}  // namespace deltachow
