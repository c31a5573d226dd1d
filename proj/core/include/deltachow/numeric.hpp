#pragma once

#include <gmpxx.h>

#include <vector>

namespace deltachow {

// Complex arithmetic on 128-bit binary floats, enough for the residual
// checks: the symbolic side stays exact and only the final evaluation is
// floating.
struct Cplx {
  __float128 re = 0;
  __float128 im = 0;

  Cplx() = default;
  Cplx(__float128 r, __float128 i = 0) : re(r), im(i) {}

  Cplx operator+(const Cplx& o) const { return {re + o.re, im + o.im}; }
  Cplx operator-(const Cplx& o) const { return {re - o.re, im - o.im}; }
  Cplx operator*(const Cplx& o) const {
    return {re * o.re - im * o.im, re * o.im + im * o.re};
  }
  Cplx operator/(const Cplx& o) const;
  Cplx& operator+=(const Cplx& o) { *this = *this + o; return *this; }
  Cplx& operator-=(const Cplx& o) { *this = *this - o; return *this; }

  double abs() const;
};

__float128 to_f128(const mpq_class& q);

// All complex roots of a univariate polynomial with rational coefficients
// (ascending order, leading coefficient nonzero), by Durand-Kerner iteration.
std::vector<Cplx> poly_roots(const std::vector<mpq_class>& coeffs);

}  // namespace deltachow
