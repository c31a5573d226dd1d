#include "deltachow/ratfun.hpp"

#include "deltachow/algelim.hpp"
#include "deltachow/error.hpp"

namespace deltachow {

RatFun::RatFun(DiffPoly n, DiffPoly d) : num(std::move(n)), den(std::move(d)) {
  if (den.is_zero()) throw MathError("division_by_zero", "rational function with zero denominator");
  require_same_ring(num.ring(), den.ring());
}

RatFun RatFun::poly(DiffPoly p) {
  RingPtr r = p.ring();
  return RatFun(std::move(p), DiffPoly::integer(r, 1));
}

RatFun RatFun::zero(const RingPtr& ring) {
  return RatFun(DiffPoly::zero(ring), DiffPoly::integer(ring, 1));
}

RatFun RatFun::operator+(const RatFun& o) const {
  if (den == o.den) return RatFun(num + o.num, den);
  return RatFun(num * o.den + o.num * den, den * o.den);
}

RatFun RatFun::operator-(const RatFun& o) const {
  if (den == o.den) return RatFun(num - o.num, den);
  return RatFun(num * o.den - o.num * den, den * o.den);
}

RatFun RatFun::operator*(const RatFun& o) const {
  return RatFun(num * o.num, den * o.den);
}

RatFun RatFun::operator/(const RatFun& o) const {
  if (o.num.is_zero()) throw MathError("division_by_zero", "rational function division by zero");
  return RatFun(num * o.den, den * o.num);
}

RatFun RatFun::operator-() const { return RatFun(-num, den); }

RatFun RatFun::differentiate() const {
  return RatFun(num.differentiate() * den - num * den.differentiate(), den * den);
}

RatFun RatFun::reduced() const {
  if (num.is_zero()) return zero(num.ring());
  DiffPoly g = alg_gcd(num, den);
  DiffPoly n = *exact_divide(num, g);
  DiffPoly d = *exact_divide(den, g);
  // pull the denominator's sign and content into the numerator
  Coef c = d.signed_content();
  if (!c.is_one()) {
    DiffPoly dd = d.primitive_normalized();
    DiffPoly nn = n.scaled(Coef::one(c.kind()) / c);
    return RatFun(std::move(nn), std::move(dd));
  }
  return RatFun(std::move(n), std::move(d));
}

RatFun eval_at_ratfun(const DiffPoly& p, const std::map<std::uint32_t, RatFun>& assign) {
  const RingPtr& ring = p.ring();
  // jet cache per assigned variable: jets[var][k] = delta^k value
  std::map<std::uint32_t, std::vector<RatFun>> jets;
  for (const auto& [var, val] : assign) jets[var] = {val};
  auto jet = [&](std::uint32_t var, std::uint32_t ord) -> const RatFun& {
    auto& js = jets.at(var);
    while (js.size() <= ord) js.push_back(js.back().differentiate());
    return js[ord];
  };
  RatFun acc = RatFun::zero(ring);
  for (const auto& t : p.terms()) {
    RatFun prod = RatFun::poly(DiffPoly::constant(ring, t.coef));
    std::vector<VarPow> untouched;
    for (const auto& f : t.mono.factors()) {
      DerVar v = dervar_of(f.key);
      if (!assign.count(v.var)) {
        untouched.push_back(f);
        continue;
      }
      const RatFun& j = jet(v.var, v.ord);
      for (std::uint32_t e = 0; e < f.exp; ++e) prod = prod * j;
    }
    if (!untouched.empty())
      prod.num = prod.num.times_mono(Monomial::from_factors(std::move(untouched)));
    acc = acc + prod;
  }
  return acc;
}

}  // namespace deltachow
