#pragma once

#include <string>
#include <vector>

#include "deltachow/chow.hpp"

namespace deltachow {

// A candidate Chow form of index (n, d, h, g=1, m): a fixed monomial support
// in the u-variables with one unknown coefficient a_i per monomial.
struct ChowTemplate {
  int n = 0, d = 0, h = 0, m = 0;  // index (n, d, h, g = 1, m)
  RingPtr base_ring;               // y-ring used for the skew-matrix step
  RingPtr ring;                    // u-blocks (MAIN) + a-coefficients (PARAMETER)
  std::vector<ChowBlock> blocks;   // linear blocks u_i = (u_{i0..in})
  std::vector<std::uint32_t> avars;  // a_1..a_D
  std::vector<Monomial> support;     // the u-monomials, one per a_i
  DiffPoly form;                     // sum_i a_i * support_i
};

// Build a template from the index and an explicit support (text monomials in
// the u-variables, e.g. "u12^2*u01*u00'"). Validates the index constraints:
// degree m in every block, orders <= h, total degree <= 1 in the order-h
// derivatives of block 0, and at least one monomial carrying u00^{(h)}.
ChowTemplate build_template(int n, int d, int h, int m,
                            const std::vector<std::string>& support);

// Defining relations of the delta-Chow quasi-variety for g = 1: polynomials
// R_omega in the a-coefficients whose zero set, off the excluded locus, is
// exactly the set of Chow-form coefficient vectors of the given index.
struct QuasiVarietyPresentation {
  ChowTemplate tmpl;
  std::vector<DiffPoly> relations;          // delta-polynomials in the a's
  std::vector<std::uint32_t> excluded;      // a-variables of the initial I_F
  // Gauss-reduced linear part plus content-normalized deduplicated rest.
  std::vector<DiffPoly> interreduced() const;
};

QuasiVarietyPresentation cv1_generate(const ChowTemplate& T,
                                      ResourceGuard& guard = ResourceGuard::unlimited());

// Read the coefficient vector of a concrete (linear-block) Chow form against
// the template support; errors when the form's support is not contained in
// the template's.
std::vector<Coef> template_coefficients(const ChowTemplate& T, const ChowForm& C);

// Evaluate a relation at constant values for the a-variables (derivatives of
// the constants are taken with the base field's derivation).
Coef evaluate_relation(const ChowTemplate& T, const DiffPoly& relation,
                       const std::vector<Coef>& avalues);

}  // namespace deltachow
