#pragma once

#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "deltachow/algelim.hpp"
#include "deltachow/chain.hpp"

namespace deltachow {

// Shape of one generic polynomial block: order s_i and degree m_i.
struct GenericShape {
  int order = 0;
  int degree = 1;
  bool operator==(const GenericShape&) const = default;
};

// One coefficient block u_i of a (generalized) Chow form. vars[j] is the ring
// index of u_{ij}; monomials[j] is the base-ring monomial it multiplies
// (monomials[0] == 1, the u_{i0} slot).
struct ChowBlock {
  std::vector<std::uint32_t> vars;
  std::vector<Monomial> monomials;
  int order = 0;             // measured ord(F, u_{i0})
  std::uint32_t degree = 0;  // per-block homogeneity degree
};

// A differential Chow form / generalized Chow form / differential resultant:
// an irreducible eliminant in the hyperplane-coefficient variables plus its
// numeric invariants. poly lives in a dedicated all-MAIN u-ring.
struct ChowForm {
  DiffPoly poly;
  RingPtr base_ring;  // the y-ring the form was computed over
  int n = 0;          // number of y variables
  int d = 0;          // dimension of the ideal
  int h = 0;          // ord(F, u00); equals ord(I) + s - s_0 in general
  std::uint32_t g = 0;  // leading differential degree: deg(F, u00^{(h)})
  std::vector<GenericShape> shapes;
  std::vector<ChowBlock> blocks;
  std::vector<std::string> warnings;

  const RingPtr& uring() const { return poly.ring(); }
  DerVar uvar(int i, int j, std::uint32_t ord = 0) const {
    return DerVar{blocks.at(static_cast<std::size_t>(i)).vars.at(static_cast<std::size_t>(j)), ord};
  }
};

// Naming scheme for block variables, shared by every pipeline: u{i}{j} for
// single-digit j, u{i}_{j} beyond.
std::string chow_var_name(int block, int index);

// Monomials of F[y^{[s]}] of degree <= m, constant first, then by total
// degree ascending with lexicographic tie-break on exponent vectors.
std::vector<Monomial> shape_monomials(const RingPtr& base_ring, const GenericShape& shape);

// Closed-form Chow form of the hypersurface sat(p), via the determinant
// substitution y_i -> D_i / D (n = 1 degenerates to y -> -u00/u01).
ChowForm chow_hypersurface(const DiffPoly& p);

// General elimination pipeline for a characteristic set presenting a prime
// ideal: adjoin d generic hyperplanes, recompute the orderly charset, prolong
// and saturate, adjoin the frozen aP0 chain, eliminate Y, normalize.
ChowForm chow_form(const DiffChain& A,
                   ResourceGuard& guard = ResourceGuard::unlimited(),
                   std::function<void(const GroebnerBasis&)> trace = {});

// Generalized Chow form of sat(A) (or of the zero ideal when A is absent)
// w.r.t. generic polynomials of the given shapes; for the zero ideal with
// d = n this is the differential resultant.
ChowForm generalized_chow(const std::optional<DiffChain>& A, RingPtr base_ring,
                          const std::vector<GenericShape>& shapes,
                          ResourceGuard& guard = ResourceGuard::unlimited(),
                          std::function<void(const GroebnerBasis&)> trace = {});

// Rebuild a ChowForm from parts: block layout re-derived from the base ring
// and shapes, polynomial matched by variable names, metadata re-measured.
ChowForm assemble_chow_form(RingPtr base_ring, std::vector<GenericShape> shapes,
                            const DiffPoly& poly_in_uring);

// Re-derive h, g, per-block orders and homogeneity degrees from the stored
// polynomial (throws when a block is inhomogeneous or a u_{i0} is absent).
void remeasure_chow(ChowForm& C);

// The defining identity g(u; zeta_0..zeta_d) = 0 made effective: substitute
// u_{i0} |-> -(linear + nonlinear part of P_i) and ritt-reduce modulo A
// (identically zero for the zero ideal).
bool defining_identity_holds(const ChowForm& C, const DiffChain* A);

// Exact evaluation of F and S_F = dF/du00^{(h)} at base-field values for the
// block coefficient variables; derivatives of assigned values are taken with
// the base field's derivation.
std::pair<Coef, Coef> dres_evaluate(const ChowForm& C,
                                    const std::map<std::string, Coef>& assignment);

// Matrix representation for the fixed differential resultant instance
// n = 1, orders (0,1), degrees (2,2): a 14x14 coefficient matrix whose
// determinant is a multiple of the resultant, with the exact quotient.
struct MatrixCertificate {
  std::vector<std::vector<DiffPoly>> matrix;
  std::vector<std::string> row_labels;
  std::vector<std::string> col_labels;
  DiffPoly determinant;
  DiffPoly extraneous;  // determinant == resultant * extraneous exactly
};

MatrixCertificate resultant_matrix_1var(const ChowForm& R,
                                        ResourceGuard& guard = ResourceGuard::unlimited());

}  // namespace deltachow
