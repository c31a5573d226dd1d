#pragma once

#include <functional>
#include <optional>
#include <vector>

#include "deltachow/error.hpp"
#include "deltachow/poly.hpp"

namespace deltachow {

// ---------------------------------------------------------------------------
// Exact algebraic helpers on frozen differential polynomials. Every DerVar is
// treated as an independent algebraic variable over the base field.

// Exact multivariate division; nullopt when den does not divide num.
std::optional<DiffPoly> exact_divide(const DiffPoly& num, const DiffPoly& den);

// Content / primitive part w.r.t. one variable: content * primitive = p,
// the primitive part has unit content in v.
DiffPoly content_wrt(const DiffPoly& p, DerVar v);
DiffPoly primitive_part_wrt(const DiffPoly& p, DerVar v);

// Multivariate gcd via subresultant PRS; result is primitive with positive
// leading sign (constant inputs give 1). gcd(0,0) is an error.
DiffPoly alg_gcd(const DiffPoly& p, const DiffPoly& q);

// p with repeated factors in v collapsed: p / gcd(p, dp/dv), normalized.
DiffPoly squarefree_part_wrt(const DiffPoly& p, DerVar v);

// Determinant of a square polynomial matrix (fraction-free Bareiss).
DiffPoly poly_determinant(const std::vector<std::vector<DiffPoly>>& m);

// Resultant of p and q w.r.t. v as the Sylvester determinant (sign included).
DiffPoly resultant(const DiffPoly& p, const DiffPoly& q, DerVar v);

// ---------------------------------------------------------------------------
// Prolonged algebraic systems and Groebner elimination.

// A frozen algebraic system with a designated elimination split. The term
// order puts the elim_vars block above the keep_vars block (graded
// reverse-lex inside each block), which gives the elimination property.
struct AlgSystem {
  RingPtr ring;
  std::vector<DiffPoly> polynomials;
  std::vector<VarKey> elim_vars;
  std::vector<VarKey> keep_vars;
  // Maximal frozen derivative order per ring variable (from prolong).
  std::vector<int> max_frozen_order;

  // Default split: MAIN-variable derivatives are eliminated, parameter
  // derivatives kept; both blocks sorted by (order, var_index) descending.
  void split_by_kind();
  // All derivative variables occurring in the polynomials.
  std::vector<VarKey> occurring_vars() const;
  void validate() const;
};

// delta^j p for 0 <= j <= bounds[i], all frozen.
AlgSystem prolong(const std::vector<DiffPoly>& system,
                  const std::vector<std::uint32_t>& bounds);

struct GroebnerBasis {
  std::vector<DiffPoly> generators;      // reduced basis, primitive-normalized
  std::vector<VarKey> priority;          // variable sequence, most significant first
  std::vector<std::size_t> block_starts{0};  // block boundaries into priority
};

// Reduced Groebner basis under the block order: blocks dominate in the given
// sequence, graded reverse-lex inside each block.
GroebnerBasis groebner(const std::vector<DiffPoly>& gens,
                       std::vector<VarKey> priority,
                       std::vector<std::size_t> block_starts = {0},
                       ResourceGuard& guard = ResourceGuard::unlimited());

// Normal form of f modulo a reduced basis (under the basis' own order).
DiffPoly normal_form(const DiffPoly& f, const GroebnerBasis& gb,
                     ResourceGuard& guard = ResourceGuard::unlimited());

// Checks the Buchberger criterion on an alleged basis: every S-polynomial
// reduces to zero.
bool spolys_reduce_to_zero(const GroebnerBasis& gb,
                           ResourceGuard& guard = ResourceGuard::unlimited());

// Basis of (sys) : saturate_by^infty intersected with k[keep_vars]. The
// saturation uses the adjoined-inverse construction (z * h - 1 with z on top
// of the elimination block). Generators only involve keep_vars.
GroebnerBasis groebner_eliminate(const AlgSystem& sys,
                                 const std::optional<DiffPoly>& saturate_by,
                                 ResourceGuard& guard = ResourceGuard::unlimited(),
                                 std::function<void(const GroebnerBasis&)> trace = {});

}  // namespace deltachow
