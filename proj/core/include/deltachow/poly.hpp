#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "deltachow/coef.hpp"
#include "deltachow/monomial.hpp"
#include "deltachow/ring.hpp"

namespace deltachow {

struct Term {
  Monomial mono;
  Coef coef;
};

// Exact multivariate differential polynomial in canonical form: terms sorted
// descending under canonical_cmp, no zero coefficients. Immutable value type.
class DiffPoly {
 public:
  DiffPoly() = default;  // zero polynomial of a null ring; attach() before use

  static DiffPoly zero(RingPtr ring);
  static DiffPoly constant(RingPtr ring, Coef c);
  static DiffPoly integer(RingPtr ring, long v);
  static DiffPoly var(RingPtr ring, DerVar v, std::uint32_t exp = 1);
  static DiffPoly from_terms(RingPtr ring, std::vector<Term> terms);

  const RingPtr& ring() const { return ring_; }
  const std::vector<Term>& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }
  bool is_constant() const;  // zero or single term with trivial monomial
  std::size_t nterms() const { return terms_.size(); }
  const Term& leading_term() const;  // largest under canonical_cmp

  DiffPoly operator+(const DiffPoly& o) const;
  DiffPoly operator-(const DiffPoly& o) const;
  DiffPoly operator*(const DiffPoly& o) const;
  DiffPoly operator-() const;
  bool operator==(const DiffPoly& o) const;
  DiffPoly pow(std::uint32_t e) const;
  DiffPoly scaled(const Coef& c) const;
  DiffPoly times_mono(const Monomial& m) const;

  // delta^k p; Leibniz rule termwise, coefficient derivation included.
  DiffPoly differentiate(std::uint32_t k = 1) const;
  // Algebraic partial derivative w.r.t. one derivative variable.
  DiffPoly partial(DerVar v) const;

  // --- queries ---------------------------------------------------------
  // Highest order of var in p, or nullopt (the -infinity sentinel).
  std::optional<int> order_of(std::uint32_t var) const;
  std::optional<int> total_order() const;  // max over all variables
  std::uint32_t degree_of(DerVar v) const;
  std::uint32_t total_degree() const;
  std::vector<Monomial> support() const;
  // Degree in all variables of the given ring-variable set, per term maximum.
  std::uint32_t degree_in_vars(const std::vector<std::uint32_t>& vars) const;
  bool contains_var(std::uint32_t var) const;
  bool has_main_dervar() const;

  // --- substitution ----------------------------------------------------
  // Purely algebraic substitution: keys are derivative variables, values are
  // polynomials of the same ring. No implied differentiation.
  DiffPoly substitute(const std::map<VarKey, DiffPoly>& assign) const;

  // View as univariate in v: coefficients by ascending power, size deg+1.
  std::vector<DiffPoly> coeffs_wrt(DerVar v) const;
  DiffPoly coeff_of_power(DerVar v, std::uint32_t k) const;

  // --- normalization ---------------------------------------------------
  // Content as a base-field element; dividing by it makes the polynomial
  // integer-primitive with positive leading (canonical-first) coefficient.
  Coef signed_content() const;
  DiffPoly primitive_normalized() const;

  // Map into another ring; var_map[i] = index of old variable i in new ring.
  DiffPoly mapped(RingPtr new_ring, const std::vector<std::uint32_t>& var_map) const;
  // Convenience: match variables by name (all must exist in new ring).
  DiffPoly mapped_by_name(RingPtr new_ring) const;

 private:
  friend class PolyBuilder;
  RingPtr ring_;
  std::vector<Term> terms_;
};

DiffPoly operator*(const Coef& c, const DiffPoly& p);

struct CanonicalMonoLess {
  bool operator()(const Monomial& a, const Monomial& b) const {
    return canonical_cmp(a, b) == std::strong_ordering::less;
  }
};

// Accumulator for building polynomials term-by-term without repeated sorting.
class PolyBuilder {
 public:
  explicit PolyBuilder(RingPtr ring) : ring_(std::move(ring)) {}
  void add(const Monomial& m, const Coef& c);
  void add(const DiffPoly& p);
  void add_scaled(const DiffPoly& p, const Coef& c, const Monomial& m);
  DiffPoly take();

 private:
  RingPtr ring_;
  std::map<Monomial, Coef, CanonicalMonoLess> acc_;
};

}  // namespace deltachow
