#include "deltachow/numeric.hpp"

#include <quadmath.h>

#include "deltachow/error.hpp"

namespace deltachow {

Cplx Cplx::operator/(const Cplx& o) const {
  __float128 d = o.re * o.re + o.im * o.im;
  if (d == 0) throw MathError("division_by_zero", "complex division by zero");
  return {(re * o.re + im * o.im) / d, (im * o.re - re * o.im) / d};
}

double Cplx::abs() const {
  return static_cast<double>(sqrtq(re * re + im * im));
}

__float128 to_f128(const mpq_class& q) {
  // convert numerator and denominator limb by limb; exact for < 113 bits
  auto z_to_f = [](const mpz_class& z) {
    __float128 acc = 0;
    __float128 scale = 1;
    mpz_class a = abs(z);
    while (a != 0) {
      unsigned long limb = mpz_get_ui(a.get_mpz_t()) & 0xFFFFFFFFul;
      acc += scale * static_cast<__float128>(limb);
      scale *= 4294967296.0Q;
      a >>= 32;
    }
    return z < 0 ? -acc : acc;
  };
  return z_to_f(q.get_num()) / z_to_f(q.get_den());
}

std::vector<Cplx> poly_roots(const std::vector<mpq_class>& coeffs) {
  if (coeffs.empty() || coeffs.back() == 0)
    throw MathError("bad_input", "root finding needs a nonzero leading coefficient");
  std::size_t deg = coeffs.size() - 1;
  if (deg == 0) return {};
  // monic coefficients in float128
  std::vector<Cplx> c(coeffs.size());
  __float128 lead = to_f128(coeffs.back());
  for (std::size_t i = 0; i < coeffs.size(); ++i)
    c[i] = Cplx(to_f128(coeffs[i]) / lead);
  auto eval = [&](const Cplx& x) {
    Cplx acc = c.back();
    for (std::size_t i = coeffs.size() - 1; i-- > 0;) acc = acc * x + c[i];
    return acc;
  };
  // Durand-Kerner from a non-real, non-root-of-unity seed
  std::vector<Cplx> roots(deg);
  Cplx seed(0.4Q, 0.9Q);
  Cplx cur(1, 0);
  for (std::size_t i = 0; i < deg; ++i) {
    cur = cur * seed;
    roots[i] = cur;
  }
  for (int iter = 0; iter < 1000; ++iter) {
    __float128 worst = 0;
    for (std::size_t i = 0; i < deg; ++i) {
      Cplx denom(1, 0);
      for (std::size_t j = 0; j < deg; ++j)
        if (j != i) denom = denom * (roots[i] - roots[j]);
      Cplx delta = eval(roots[i]) / denom;
      roots[i] -= delta;
      __float128 mag = delta.re * delta.re + delta.im * delta.im;
      if (mag > worst) worst = mag;
    }
    if (worst < 1e-60Q) break;
  }
  return roots;
}

}  // namespace deltachow
