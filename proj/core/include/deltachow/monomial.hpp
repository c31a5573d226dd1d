#pragma once

#include <compare>
#include <cstdint>
#include <functional>
#include <optional>
#include <vector>

#include "deltachow/ring.hpp"

namespace deltachow {

struct VarPow {
  VarKey key = 0;
  std::uint32_t exp = 0;
  bool operator==(const VarPow&) const = default;
};

// Power product of derivative variables. Factors are stored sorted by packed
// key (var_index, order); no zero exponents.
class Monomial {
 public:
  Monomial() = default;
  static Monomial var(DerVar v, std::uint32_t exp = 1);
  static Monomial from_factors(std::vector<VarPow> factors);  // sorts & merges

  bool is_one() const { return f_.empty(); }
  std::uint32_t total_degree() const { return tdeg_; }
  const std::vector<VarPow>& factors() const { return f_; }

  Monomial operator*(const Monomial& o) const;
  std::optional<Monomial> divided_by(const Monomial& o) const;
  bool divisible_by(const Monomial& o) const;
  Monomial lcm(const Monomial& o) const;

  std::uint32_t degree_of(VarKey k) const;
  // Highest derivative order of the given ring variable; -1 when absent.
  int max_order_of(std::uint32_t var) const;
  bool contains_var(std::uint32_t var) const { return max_order_of(var) >= 0; }

  bool operator==(const Monomial& o) const { return f_ == o.f_; }
  std::size_t hash() const;

 private:
  std::vector<VarPow> f_;
  std::uint32_t tdeg_ = 0;
};

// Canonical order on monomials (ranking-independent): graded, ties broken
// lexicographically with higher packed key more significant. Used for the
// unique internal term order and for deterministic printing.
std::strong_ordering canonical_cmp(const Monomial& a, const Monomial& b);

struct MonomialHash {
  std::size_t operator()(const Monomial& m) const { return m.hash(); }
};

}  // namespace deltachow
