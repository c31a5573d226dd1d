#pragma once

#include <optional>
#include <string>
#include <vector>

#include "deltachow/chow.hpp"

namespace deltachow {

enum class CheckStatus : unsigned char { Pass, Fail, Skipped };

struct CheckResult {
  std::string name;
  CheckStatus status = CheckStatus::Pass;
  std::string witness;  // offending polynomial / residual / reason for a skip
};

struct VerificationReport {
  std::vector<CheckResult> checks;
  bool all_passed() const {
    for (const auto& c : checks)
      if (c.status == CheckStatus::Fail) return false;
    return true;
  }
  void add(std::string name, CheckStatus s, std::string witness = {}) {
    checks.push_back({std::move(name), s, std::move(witness)});
  }
};

// Delta-homogeneity degree of F in the given variable block, established by
// two independent routes that must agree: symbolic lambda-scaling and the
// Euler identities sum_j sum_k C(k+r,r) v_j^{(k)} dF/dv_j^{(k+r)} = m*F (r=0)
// and = 0 (r >= 1). Throws on route disagreement; nullopt when F is not
// homogeneous in the block.
std::optional<std::uint32_t> check_delta_homogeneous(
    const DiffPoly& F, const std::vector<std::uint32_t>& block_vars);

// The theorem-level invariant bundle for a computed Chow form: order law,
// u_{i0} presence, block-swap symmetry, g consistency, per-block homogeneity.
VerificationReport verify_chow_invariants(const ChowForm& C);

// Recover the generic point from the Chow form (xi_rho = dF/du_{0rho}^{(h)}
// over S_F) and verify every chain generator vanishes on it modulo sat(F).
bool generic_point_check(const ChowForm& C, const DiffChain& A);

// Dimension and order of [sat(A), f] for a generic polynomial f of the given
// order (degree 1 when linear_only). d = 0 yields the unit-ideal marker.
struct IntersectResult {
  bool unit_ideal = false;
  int dimension = 0;
  int order = 0;
};

IntersectResult generic_intersection_check(const DiffChain& A, int order,
                                           bool linear_only = true, int degree = 1);

// r independent generic polynomials of the given orders intersected with the
// zero ideal over base_ring; returns the final dimension and order.
IntersectResult generic_tower(RingPtr base_ring, const std::vector<int>& orders,
                              bool linear_only = true, int degree = 1);

// Numeric fiber check for a dimension-zero Chow form: sample exact rationals
// for the u-parameters, solve F for u00^{(h)}, extend u00 by the delta_tau
// recursion, recover the xi jets, and evaluate the defining generators.
struct FiberCheckResult {
  double max_residual = 0.0;
  int samples = 0;
  int roots = 0;
};

FiberCheckResult numeric_fiber_check(const ChowForm& C, const DiffChain& A,
                                     int samples, std::uint64_t seed,
                                     double gamma_perturbation = 0.0);

// Chow form of the image variety under Y = M X (Lemma: F^A(v) = F(vB) with
// the bordered matrix B); asserts the block degrees and g are unchanged.
ChowForm linear_transform_chowform(const ChowForm& C,
                                   const std::vector<std::vector<Coef>>& M);

}  // namespace deltachow
