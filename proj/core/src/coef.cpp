#include "deltachow/coef.hpp"

#include <algorithm>
#include <stdexcept>

#include "deltachow/error.hpp"

namespace deltachow {

// ---------------------------------------------------------------------------
// IntPolyT

IntPolyT::IntPolyT(const mpz_class& c) {
  if (c != 0) c_.push_back(c);
}

IntPolyT::IntPolyT(long c) {
  if (c != 0) c_.emplace_back(c);
}

IntPolyT IntPolyT::variable_t() {
  IntPolyT p;
  p.c_ = {mpz_class(0), mpz_class(1)};
  return p;
}

IntPolyT IntPolyT::from_coeffs(std::vector<mpz_class> ascending) {
  IntPolyT p;
  p.c_ = std::move(ascending);
  p.trim();
  return p;
}

bool IntPolyT::is_one() const { return c_.size() == 1 && c_[0] == 1; }

const mpz_class& IntPolyT::coeff(std::size_t i) const {
  static const mpz_class zero(0);
  return i < c_.size() ? c_[i] : zero;
}

const mpz_class& IntPolyT::leading() const {
  static const mpz_class zero(0);
  return c_.empty() ? zero : c_.back();
}

void IntPolyT::trim() {
  while (!c_.empty() && c_.back() == 0) c_.pop_back();
}

IntPolyT IntPolyT::operator+(const IntPolyT& o) const {
  IntPolyT r;
  r.c_.resize(std::max(c_.size(), o.c_.size()));
  for (std::size_t i = 0; i < r.c_.size(); ++i) r.c_[i] = coeff(i) + o.coeff(i);
  r.trim();
  return r;
}

IntPolyT IntPolyT::operator-(const IntPolyT& o) const {
  IntPolyT r;
  r.c_.resize(std::max(c_.size(), o.c_.size()));
  for (std::size_t i = 0; i < r.c_.size(); ++i) r.c_[i] = coeff(i) - o.coeff(i);
  r.trim();
  return r;
}

IntPolyT IntPolyT::operator*(const IntPolyT& o) const {
  if (is_zero() || o.is_zero()) return IntPolyT();
  IntPolyT r;
  r.c_.assign(c_.size() + o.c_.size() - 1, mpz_class(0));
  for (std::size_t i = 0; i < c_.size(); ++i)
    for (std::size_t j = 0; j < o.c_.size(); ++j) r.c_[i + j] += c_[i] * o.c_[j];
  r.trim();
  return r;
}

IntPolyT IntPolyT::operator-() const {
  IntPolyT r = *this;
  for (auto& c : r.c_) c = -c;
  return r;
}

IntPolyT IntPolyT::derivative() const {
  IntPolyT r;
  if (c_.size() <= 1) return r;
  r.c_.resize(c_.size() - 1);
  for (std::size_t i = 1; i < c_.size(); ++i) r.c_[i - 1] = c_[i] * static_cast<long>(i);
  r.trim();
  return r;
}

mpz_class IntPolyT::signed_content() const {
  mpz_class g(0);
  for (const auto& c : c_) mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), c.get_mpz_t());
  if (g != 0 && leading() < 0) g = -g;
  return g;
}

IntPolyT IntPolyT::divexact_scalar(const mpz_class& d) const {
  IntPolyT r = *this;
  for (auto& c : r.c_) {
    mpz_class q, rem;
    mpz_tdiv_qr(q.get_mpz_t(), rem.get_mpz_t(), c.get_mpz_t(), d.get_mpz_t());
    if (rem != 0) throw MathError("internal", "IntPolyT scalar division not exact");
    c = q;
  }
  return r;
}

IntPolyT IntPolyT::divexact(const IntPolyT& d) const {
  if (d.is_zero()) throw MathError("internal", "IntPolyT division by zero");
  if (is_zero()) return IntPolyT();
  // Exact division over Q, then check integrality.
  std::vector<mpq_class> rem(c_.size());
  for (std::size_t i = 0; i < c_.size(); ++i) rem[i] = c_[i];
  int dd = d.degree();
  int nd = degree();
  if (nd < dd) throw MathError("internal", "IntPolyT division not exact (degree)");
  std::vector<mpq_class> q(static_cast<std::size_t>(nd - dd) + 1);
  for (int i = nd - dd; i >= 0; --i) {
    mpq_class qi = rem[static_cast<std::size_t>(i + dd)] / mpq_class(d.leading());
    q[static_cast<std::size_t>(i)] = qi;
    if (qi != 0)
      for (int j = 0; j <= dd; ++j)
        rem[static_cast<std::size_t>(i + j)] -= qi * mpq_class(d.coeff(static_cast<std::size_t>(j)));
  }
  for (int i = 0; i < dd; ++i)
    if (rem[static_cast<std::size_t>(i)] != 0)
      throw MathError("internal", "IntPolyT division not exact (remainder)");
  std::vector<mpz_class> zc(q.size());
  for (std::size_t i = 0; i < q.size(); ++i) {
    if (q[i].get_den() != 1)
      throw MathError("internal", "IntPolyT division not exact (fraction)");
    zc[i] = q[i].get_num();
  }
  return from_coeffs(std::move(zc));
}

IntPolyT IntPolyT::gcd(const IntPolyT& a, const IntPolyT& b) {
  if (a.is_zero() && b.is_zero()) return IntPolyT();
  if (a.is_zero()) {
    IntPolyT r = b;
    return r.leading() < 0 ? -r : r;
  }
  if (b.is_zero()) {
    IntPolyT r = a;
    return r.leading() < 0 ? -r : r;
  }
  mpz_class ca = a.signed_content(), cb = b.signed_content();
  mpz_class cg;
  mpz_gcd(cg.get_mpz_t(), ca.get_mpz_t(), cb.get_mpz_t());
  IntPolyT p = a.divexact_scalar(ca);
  IntPolyT q = b.divexact_scalar(cb);
  if (p.degree() < q.degree()) std::swap(p, q);
  // Primitive PRS.
  while (!q.is_zero()) {
    // pseudo-remainder of p by q
    IntPolyT r = p;
    const mpz_class& lq = q.leading();
    while (!r.is_zero() && r.degree() >= q.degree()) {
      int shift = r.degree() - q.degree();
      mpz_class lr = r.leading();
      // r := lq*r - lr*t^shift*q
      IntPolyT scaled;
      scaled.c_.assign(static_cast<std::size_t>(shift), mpz_class(0));
      for (const auto& c : q.c_) scaled.c_.push_back(c * lr);
      IntPolyT rs;
      rs.c_.resize(r.c_.size());
      for (std::size_t i = 0; i < r.c_.size(); ++i) rs.c_[i] = r.c_[i] * lq;
      rs.trim();
      r = rs - scaled;
    }
    mpz_class cr = r.signed_content();
    if (cr != 0) r = r.divexact_scalar(cr);
    p = q;
    q = r;
  }
  mpz_class cp = p.signed_content();
  p = p.divexact_scalar(cp);
  IntPolyT g = p * IntPolyT(cg);
  if (g.leading() < 0) g = -g;
  return g;
}

IntPolyT IntPolyT::lcm(const IntPolyT& a, const IntPolyT& b) {
  if (a.is_zero() || b.is_zero()) return IntPolyT();
  return (a * b).divexact(gcd(a, b));
}

std::string IntPolyT::to_string() const {
  if (is_zero()) return "0";
  std::string out;
  for (int i = degree(); i >= 0; --i) {
    const mpz_class& c = coeff(static_cast<std::size_t>(i));
    if (c == 0) continue;
    mpz_class a = abs(c);
    if (out.empty()) {
      if (c < 0) out += "-";
    } else {
      out += (c < 0) ? "-" : "+";
    }
    bool unit = (a == 1);
    if (i == 0 || !unit) out += a.get_str();
    if (i > 0) {
      if (!unit) out += "*";
      out += "t";
      if (i > 1) out += "^" + std::to_string(i);
    }
  }
  return out;
}

// ---------------------------------------------------------------------------
// QtElem

QtElem::QtElem(IntPolyT num, IntPolyT den) : num_(std::move(num)), den_(std::move(den)) {
  if (den_.is_zero()) throw MathError("internal", "Q(t) element with zero denominator");
  canonicalize();
}

QtElem QtElem::from_mpq(const mpq_class& q) {
  return QtElem(IntPolyT(mpz_class(q.get_num())), IntPolyT(mpz_class(q.get_den())));
}

void QtElem::canonicalize() {
  if (num_.is_zero()) {
    den_ = IntPolyT(1);
    return;
  }
  IntPolyT g = IntPolyT::gcd(num_, den_);
  if (!g.is_one()) {
    num_ = num_.divexact(g);
    den_ = den_.divexact(g);
  }
  mpz_class cd = den_.signed_content();
  if (cd != 1) {
    // keep denominator primitive with positive leading coefficient
    mpz_class cn = num_.signed_content();
    mpz_class common;
    mpz_gcd(common.get_mpz_t(), cn.get_mpz_t(), cd.get_mpz_t());
    if (cd < 0) common = -common;
    if (common != 1 && common != 0) {
      num_ = num_.divexact_scalar(common);
      den_ = den_.divexact_scalar(common);
    }
    if (den_.leading() < 0) {
      num_ = -num_;
      den_ = -den_;
    }
  }
}

QtElem QtElem::operator+(const QtElem& o) const {
  return QtElem(num_ * o.den_ + o.num_ * den_, den_ * o.den_);
}
QtElem QtElem::operator-(const QtElem& o) const {
  return QtElem(num_ * o.den_ - o.num_ * den_, den_ * o.den_);
}
QtElem QtElem::operator*(const QtElem& o) const {
  return QtElem(num_ * o.num_, den_ * o.den_);
}
QtElem QtElem::operator/(const QtElem& o) const {
  if (o.is_zero()) throw MathError("division_by_zero", "division by zero in Q(t)");
  return QtElem(num_ * o.den_, den_ * o.num_);
}
QtElem QtElem::operator-() const { return QtElem(-num_, den_); }

QtElem QtElem::derivative() const {
  return QtElem(num_.derivative() * den_ - num_ * den_.derivative(), den_ * den_);
}

std::string QtElem::to_string() const {
  if (den_.is_one()) return num_.to_string();
  std::string n = num_.to_string();
  std::string d = den_.to_string();
  bool nparen = num_.degree() > 0 && num_.to_string().find_first_of("+-", 1) != std::string::npos;
  bool dparen = den_.degree() > 0;
  std::string out;
  out += nparen ? "(" + n + ")" : n;
  out += "/";
  out += dparen ? "(" + d + ")" : d;
  return out;
}

// ---------------------------------------------------------------------------
// Coef

Coef Coef::zero(FieldKind k) {
  return k == FieldKind::Rationals ? Coef(mpq_class(0)) : Coef(QtElem());
}
Coef Coef::one(FieldKind k) {
  return k == FieldKind::Rationals ? Coef(mpq_class(1))
                                   : Coef(QtElem(IntPolyT(1), IntPolyT(1)));
}
Coef Coef::integer(FieldKind k, long v) {
  return k == FieldKind::Rationals ? Coef(mpq_class(v))
                                   : Coef(QtElem(IntPolyT(v), IntPolyT(1)));
}

bool Coef::is_zero() const {
  if (const auto* q = std::get_if<mpq_class>(&v_)) return *q == 0;
  return std::get<QtElem>(v_).is_zero();
}
bool Coef::is_one() const {
  if (const auto* q = std::get_if<mpq_class>(&v_)) return *q == 1;
  return std::get<QtElem>(v_).is_one();
}
bool Coef::is_negative_leading() const {
  if (const auto* q = std::get_if<mpq_class>(&v_)) return *q < 0;
  return std::get<QtElem>(v_).num().leading() < 0;
}

static void require_same_kind(const Coef& a, const Coef& b) {
  if (a.kind() != b.kind())
    throw MathError("ring_mismatch", "coefficient field kinds differ");
}

Coef Coef::operator+(const Coef& o) const {
  require_same_kind(*this, o);
  if (const auto* q = std::get_if<mpq_class>(&v_)) return Coef(mpq_class(*q + o.q()));
  return Coef(qt() + o.qt());
}
Coef Coef::operator-(const Coef& o) const {
  require_same_kind(*this, o);
  if (const auto* q = std::get_if<mpq_class>(&v_)) return Coef(mpq_class(*q - o.q()));
  return Coef(qt() - o.qt());
}
Coef Coef::operator*(const Coef& o) const {
  require_same_kind(*this, o);
  if (const auto* q = std::get_if<mpq_class>(&v_)) return Coef(mpq_class(*q * o.q()));
  return Coef(qt() * o.qt());
}
Coef Coef::operator/(const Coef& o) const {
  require_same_kind(*this, o);
  if (o.is_zero()) throw MathError("division_by_zero", "coefficient division by zero");
  if (const auto* q = std::get_if<mpq_class>(&v_)) return Coef(mpq_class(*q / o.q()));
  return Coef(qt() / o.qt());
}
Coef Coef::operator-() const {
  if (const auto* q = std::get_if<mpq_class>(&v_)) return Coef(mpq_class(-*q));
  return Coef(-qt());
}
bool Coef::operator==(const Coef& o) const {
  if (kind() != o.kind()) return false;
  if (const auto* q = std::get_if<mpq_class>(&v_)) return *q == o.q();
  return qt() == o.qt();
}

Coef Coef::derivative() const {
  if (std::holds_alternative<mpq_class>(v_)) return Coef(mpq_class(0));
  return Coef(qt().derivative());
}

std::string Coef::to_string() const {
  if (const auto* q = std::get_if<mpq_class>(&v_)) return q->get_str();
  return qt().to_string();
}

bool Coef::is_simple_atom() const {
  if (const auto* q = std::get_if<mpq_class>(&v_)) return q->get_den() == 1;
  const QtElem& e = qt();
  if (!e.den().is_one()) return false;
  return e.num().degree() <= 0;
}

Coef Coef::content_of(const std::vector<const Coef*>& cs) {
  if (cs.empty()) throw MathError("internal", "content of empty list");
  if (cs.front()->kind() == FieldKind::Rationals) {
    mpz_class g(0), l(1);
    for (const Coef* c : cs) {
      const mpq_class& q = c->q();
      mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), mpz_class(q.get_num()).get_mpz_t());
      mpz_lcm(l.get_mpz_t(), l.get_mpz_t(), mpz_class(q.get_den()).get_mpz_t());
    }
    if (g == 0) return Coef(mpq_class(1));
    mpq_class content(g, l);
    content.canonicalize();
    if (cs.front()->q() < 0) content = -content;
    return Coef(content);
  }
  IntPolyT g, l(IntPolyT(1));
  for (const Coef* c : cs) {
    g = IntPolyT::gcd(g, c->qt().num());
    l = IntPolyT::lcm(l, c->qt().den());
  }
  if (g.is_zero()) return one(FieldKind::RationalFunctionsT);
  QtElem content(g, l);
  if (cs.front()->qt().num().leading() < 0) content = -content;
  return Coef(content);
}

}  // namespace deltachow
