#pragma once

#include <gmpxx.h>

#include <string>
#include <variant>
#include <vector>

namespace deltachow {

enum class FieldKind : unsigned char {
  Rationals,          // Q, trivial derivation
  RationalFunctionsT  // Q(t) with d/dt
};

// Dense univariate polynomial over Z in the variable t.
// Invariant: no trailing zero coefficients; zero polynomial has empty storage.
class IntPolyT {
 public:
  IntPolyT() = default;
  explicit IntPolyT(const mpz_class& c);
  explicit IntPolyT(long c);
  static IntPolyT variable_t();
  static IntPolyT from_coeffs(std::vector<mpz_class> ascending);

  bool is_zero() const { return c_.empty(); }
  bool is_one() const;
  int degree() const { return static_cast<int>(c_.size()) - 1; }
  const mpz_class& coeff(std::size_t i) const;
  const mpz_class& leading() const;

  IntPolyT operator+(const IntPolyT& o) const;
  IntPolyT operator-(const IntPolyT& o) const;
  IntPolyT operator*(const IntPolyT& o) const;
  IntPolyT operator-() const;
  bool operator==(const IntPolyT& o) const { return c_ == o.c_; }

  IntPolyT derivative() const;
  // Integer content with the sign of the leading coefficient; 0 for zero.
  mpz_class signed_content() const;
  IntPolyT divexact_scalar(const mpz_class& d) const;
  // Exact division; throws on non-divisibility.
  IntPolyT divexact(const IntPolyT& d) const;
  static IntPolyT gcd(const IntPolyT& a, const IntPolyT& b);
  static IntPolyT lcm(const IntPolyT& a, const IntPolyT& b);

  std::string to_string() const;

 private:
  void trim();
  std::vector<mpz_class> c_;  // ascending powers of t
};

// Element of Q(t): num/den with den primitive and positive leading coefficient,
// gcd(num, den) = 1. Plain rationals embed with den = 1.
class QtElem {
 public:
  QtElem() : num_(), den_(IntPolyT(1)) {}
  QtElem(IntPolyT num, IntPolyT den);
  static QtElem from_mpq(const mpq_class& q);
  static QtElem variable_t() { return QtElem(IntPolyT::variable_t(), IntPolyT(1)); }

  bool is_zero() const { return num_.is_zero(); }
  bool is_one() const { return num_.is_one() && den_.is_one(); }

  QtElem operator+(const QtElem& o) const;
  QtElem operator-(const QtElem& o) const;
  QtElem operator*(const QtElem& o) const;
  QtElem operator/(const QtElem& o) const;
  QtElem operator-() const;
  bool operator==(const QtElem& o) const { return num_ == o.num_ && den_ == o.den_; }

  QtElem derivative() const;  // quotient rule, d/dt

  const IntPolyT& num() const { return num_; }
  const IntPolyT& den() const { return den_; }

  std::string to_string() const;

 private:
  void canonicalize();
  IntPolyT num_, den_;
};

// A base-field element: exact rational (Q) or rational function (Q(t)).
// Both operands of any binary operation must have the same kind.
class Coef {
 public:
  Coef() : v_(mpq_class(0)) {}
  static Coef zero(FieldKind k);
  static Coef one(FieldKind k);
  static Coef from_mpq(mpq_class q) { return Coef(std::move(q)); }
  static Coef from_qt(QtElem e) { return Coef(std::move(e)); }
  static Coef integer(FieldKind k, long v);

  FieldKind kind() const {
    return std::holds_alternative<mpq_class>(v_) ? FieldKind::Rationals
                                                 : FieldKind::RationalFunctionsT;
  }
  bool is_zero() const;
  bool is_one() const;
  bool is_negative_leading() const;  // sign convention used for normalization

  Coef operator+(const Coef& o) const;
  Coef operator-(const Coef& o) const;
  Coef operator*(const Coef& o) const;
  Coef operator/(const Coef& o) const;
  Coef operator-() const;
  Coef& operator+=(const Coef& o) { *this = *this + o; return *this; }
  Coef& operator-=(const Coef& o) { *this = *this - o; return *this; }
  Coef& operator*=(const Coef& o) { *this = *this * o; return *this; }
  bool operator==(const Coef& o) const;

  Coef derivative() const;  // 0 on Q; d/dt on Q(t)

  const mpq_class& q() const { return std::get<mpq_class>(v_); }
  const QtElem& qt() const { return std::get<QtElem>(v_); }

  std::string to_string() const;
  // True when printing needs no enclosing parentheses in a product.
  bool is_simple_atom() const;

  // Content of a nonempty coefficient list: dividing every element by it
  // leaves integer (resp. Z[t]) coefficients with collective content 1 and
  // the first element's sign positive.
  static Coef content_of(const std::vector<const Coef*>& cs);

 private:
  explicit Coef(mpq_class q) : v_(std::move(q)) {}
  explicit Coef(QtElem e) : v_(std::move(e)) {}
  std::variant<mpq_class, QtElem> v_;
};

}  // namespace deltachow
