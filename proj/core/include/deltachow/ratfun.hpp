#pragma once

#include <map>

#include "deltachow/poly.hpp"

namespace deltachow {

// Rational function of differential polynomials. Kept unreduced by default;
// call reduced() to cancel the gcd when sizes warrant it.
struct RatFun {
  DiffPoly num;
  DiffPoly den;

  RatFun() = default;
  RatFun(DiffPoly n, DiffPoly d);
  static RatFun poly(DiffPoly p);
  static RatFun zero(const RingPtr& ring);

  bool is_zero() const { return num.is_zero(); }
  const RingPtr& ring() const { return num.ring(); }

  RatFun operator+(const RatFun& o) const;
  RatFun operator-(const RatFun& o) const;
  RatFun operator*(const RatFun& o) const;
  RatFun operator/(const RatFun& o) const;
  RatFun operator-() const;

  RatFun differentiate() const;  // quotient rule
  RatFun reduced() const;        // cancel gcd, normalize denominator sign
};

// Evaluate p at rational jets: `assign` maps ring variable indices to rational
// functions; their derivatives are taken symbolically via the quotient rule.
// Unassigned variables stay symbolic.
RatFun eval_at_ratfun(const DiffPoly& p, const std::map<std::uint32_t, RatFun>& assign);

}  // namespace deltachow
