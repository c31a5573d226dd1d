#include "deltachow/monomial.hpp"

#include <algorithm>

namespace deltachow {

Monomial Monomial::var(DerVar v, std::uint32_t exp) {
  Monomial m;
  if (exp > 0) {
    m.f_.push_back({key_of(v), exp});
    m.tdeg_ = exp;
  }
  return m;
}

Monomial Monomial::from_factors(std::vector<VarPow> factors) {
  std::sort(factors.begin(), factors.end(),
            [](const VarPow& a, const VarPow& b) { return a.key < b.key; });
  Monomial m;
  for (const auto& f : factors) {
    if (f.exp == 0) continue;
    if (!m.f_.empty() && m.f_.back().key == f.key)
      m.f_.back().exp += f.exp;
    else
      m.f_.push_back(f);
    m.tdeg_ += f.exp;
  }
  return m;
}

Monomial Monomial::operator*(const Monomial& o) const {
  Monomial r;
  r.f_.reserve(f_.size() + o.f_.size());
  std::size_t i = 0, j = 0;
  while (i < f_.size() && j < o.f_.size()) {
    if (f_[i].key < o.f_[j].key)
      r.f_.push_back(f_[i++]);
    else if (f_[i].key > o.f_[j].key)
      r.f_.push_back(o.f_[j++]);
    else {
      r.f_.push_back({f_[i].key, f_[i].exp + o.f_[j].exp});
      ++i, ++j;
    }
  }
  for (; i < f_.size(); ++i) r.f_.push_back(f_[i]);
  for (; j < o.f_.size(); ++j) r.f_.push_back(o.f_[j]);
  r.tdeg_ = tdeg_ + o.tdeg_;
  return r;
}

std::optional<Monomial> Monomial::divided_by(const Monomial& o) const {
  if (o.tdeg_ > tdeg_) return std::nullopt;
  Monomial r;
  std::size_t i = 0, j = 0;
  while (j < o.f_.size()) {
    if (i >= f_.size()) return std::nullopt;
    if (f_[i].key < o.f_[j].key) {
      r.f_.push_back(f_[i++]);
    } else if (f_[i].key > o.f_[j].key) {
      return std::nullopt;
    } else {
      if (f_[i].exp < o.f_[j].exp) return std::nullopt;
      if (f_[i].exp > o.f_[j].exp) r.f_.push_back({f_[i].key, f_[i].exp - o.f_[j].exp});
      ++i, ++j;
    }
  }
  for (; i < f_.size(); ++i) r.f_.push_back(f_[i]);
  r.tdeg_ = tdeg_ - o.tdeg_;
  return r;
}

bool Monomial::divisible_by(const Monomial& o) const {
  if (o.tdeg_ > tdeg_) return false;
  std::size_t i = 0;
  for (const auto& f : o.f_) {
    while (i < f_.size() && f_[i].key < f.key) ++i;
    if (i >= f_.size() || f_[i].key != f.key || f_[i].exp < f.exp) return false;
  }
  return true;
}

Monomial Monomial::lcm(const Monomial& o) const {
  Monomial r;
  std::size_t i = 0, j = 0;
  while (i < f_.size() && j < o.f_.size()) {
    if (f_[i].key < o.f_[j].key)
      r.f_.push_back(f_[i++]);
    else if (f_[i].key > o.f_[j].key)
      r.f_.push_back(o.f_[j++]);
    else {
      r.f_.push_back({f_[i].key, std::max(f_[i].exp, o.f_[j].exp)});
      ++i, ++j;
    }
  }
  for (; i < f_.size(); ++i) r.f_.push_back(f_[i]);
  for (; j < o.f_.size(); ++j) r.f_.push_back(o.f_[j]);
  for (const auto& f : r.f_) r.tdeg_ += f.exp;
  return r;
}

std::uint32_t Monomial::degree_of(VarKey k) const {
  for (const auto& f : f_)
    if (f.key == k) return f.exp;
  return 0;
}

int Monomial::max_order_of(std::uint32_t var) const {
  int best = -1;
  for (const auto& f : f_) {
    DerVar v = dervar_of(f.key);
    if (v.var == var) best = std::max(best, static_cast<int>(v.ord));
  }
  return best;
}

std::size_t Monomial::hash() const {
  std::size_t h = 0x9e3779b97f4a7c15ull;
  for (const auto& f : f_) {
    h ^= (static_cast<std::size_t>(f.key) << 17) + f.exp + (h << 6) + (h >> 2);
  }
  return h;
}

std::strong_ordering canonical_cmp(const Monomial& a, const Monomial& b) {
  if (a.total_degree() != b.total_degree())
    return a.total_degree() <=> b.total_degree();
  // Ties: lexicographic, scanning from the highest key downwards.
  const auto& fa = a.factors();
  const auto& fb = b.factors();
  std::size_t i = fa.size(), j = fb.size();
  while (i > 0 && j > 0) {
    const VarPow& x = fa[i - 1];
    const VarPow& y = fb[j - 1];
    if (x.key != y.key) return x.key <=> y.key;
    if (x.exp != y.exp) return x.exp <=> y.exp;
    --i, --j;
  }
  return i <=> j;
}

}  // namespace deltachow
