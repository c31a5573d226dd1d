#include <doctest.h>
#include <random>

#include "deltachow/io.hpp"
#include "deltachow/verify.hpp"

using namespace deltachow;

namespace {

RingPtr qring(std::vector<std::string> names) {
  return RingContext::make(FieldKind::Rationals, std::move(names));
}

DiffPoly P(const RingPtr& r, const std::string& s) { return parse_poly(s, r); }

DiffChain chain_of(const RingPtr& r, std::vector<std::string> polys) {
  std::vector<DiffPoly> ps;
  for (const auto& s : polys) ps.push_back(parse_poly(s, r));
  auto cs = charset(ps, Ranking::orderly(r));
  REQUIRE(cs.chain.has_value());
  return *cs.chain;
}

ChowForm f1_form() {
  auto r = qring({"y1"});
  return chow_hypersurface(P(r, "y1'^2-4*y1"));
}

}  // namespace

TEST_CASE("delta-homogeneity degrees by both routes") {
  ChowForm C = f1_form();
  auto m = check_delta_homogeneous(C.poly, C.blocks[0].vars);
  REQUIRE(m.has_value());
  CHECK(*m == 4);

  auto r = qring({"y"});
  ChowForm C2 = chow_hypersurface(P(r, "2*y'^2 - y*y''"));
  auto m2 = check_delta_homogeneous(C2.poly, C2.blocks[0].vars);
  REQUIRE(m2.has_value());
  CHECK(*m2 == 3);

  auto u = qring({"u00", "u01"});
  auto m3 = check_delta_homogeneous(P(u, "u00^2"), {u->index_of("u00").value(),
                                                    u->index_of("u01").value()});
  REQUIRE(m3.has_value());
  CHECK(*m3 == 2);

  // u00 + u00^2 is not homogeneous
  auto m4 = check_delta_homogeneous(P(u, "u00 + u00^2"),
                                    {u->index_of("u00").value(), u->index_of("u01").value()});
  CHECK_FALSE(m4.has_value());

  // derivatives enter through the Leibniz rule: the Wronskian is
  // delta-homogeneous of degree 2, its second-order sibling is not
  auto m5 = check_delta_homogeneous(P(u, "u00*u01' - u00'*u01"),
                                    {u->index_of("u00").value(), u->index_of("u01").value()});
  REQUIRE(m5.has_value());
  CHECK(*m5 == 2);
  auto m6 = check_delta_homogeneous(P(u, "u00*u01'' - u00''*u01"),
                                    {u->index_of("u00").value(), u->index_of("u01").value()});
  CHECK_FALSE(m6.has_value());
}

TEST_CASE("chow invariant bundle on the goldens") {
  ChowForm C1 = f1_form();
  VerificationReport rep1 = verify_chow_invariants(C1);
  CHECK(rep1.all_passed());
  bool saw_skip = false;
  for (const auto& c : rep1.checks)
    if (c.name == "block_swap_sign") saw_skip = c.status == CheckStatus::Skipped;
  CHECK(saw_skip);  // single block: swap is vacuous

  auto r2 = qring({"y1", "y2"});
  DiffChain A2 = chain_of(r2, {"y1'+1", "y2'"});
  ChowForm C2 = chow_form(A2);
  CHECK(verify_chow_invariants(C2).all_passed());

  // a two-block hypersurface form exercises the swap for real
  ChowForm C3 = chow_hypersurface(P(r2, "y1'+y2"));
  VerificationReport rep3 = verify_chow_invariants(C3);
  CHECK(rep3.all_passed());
  for (const auto& c : rep3.checks)
    if (c.name == "block_swap_sign") CHECK(c.status == CheckStatus::Pass);
}

TEST_CASE("generic point recovery") {
  auto r = qring({"y1"});
  DiffChain A = chain_of(r, {"y1'^2-4*y1"});
  ChowForm C = chow_hypersurface(P(r, "y1'^2-4*y1"));
  CHECK(generic_point_check(C, A));

  auto r2 = qring({"y1", "y2"});
  DiffChain A2 = chain_of(r2, {"y1'+1", "y2'"});
  ChowForm C2 = chow_form(A2);
  CHECK(generic_point_check(C2, A2));
}

TEST_CASE("mutation: corrupted forms fail the checks") {
  auto r = qring({"y1"});
  DiffChain A = chain_of(r, {"y1'^2-4*y1"});
  ChowForm C = f1_form();
  // flip the sign of one term: 4*u00*u01^3 -> -4*u00*u01^3
  auto u = C.uring();
  ChowForm bad = C;
  bad.poly = C.poly - P(u, "8*u00*u01^3");
  CHECK_FALSE(defining_identity_holds(bad, &A));
  CHECK_FALSE(generic_point_check(bad, A));
}

TEST_CASE("random single-coefficient mutations are caught") {
  auto r = qring({"y1"});
  DiffChain A = chain_of(r, {"y1'^2-4*y1"});
  ChowForm C = f1_form();
  std::mt19937_64 rng(20240811);
  int caught = 0, trials = 100;
  for (int t = 0; t < trials; ++t) {
    ChowForm bad = C;
    std::uniform_int_distribution<std::size_t> pick(0, C.poly.terms().size() - 1);
    std::uniform_int_distribution<long> delta(1, 5);
    std::size_t which = pick(rng);
    std::vector<Term> terms(C.poly.terms().begin(), C.poly.terms().end());
    terms[which].coef += Coef::from_mpq(mpq_class(delta(rng)));
    bad.poly = DiffPoly::from_terms(C.poly.ring(), std::move(terms));
    if (bad.poly == C.poly) {
      ++caught;
      continue;
    }
    bool fails = !defining_identity_holds(bad, &A) || !generic_point_check(bad, A);
    if (!fails) {
      try {
        remeasure_chow(bad);
        VerificationReport rep = verify_chow_invariants(bad);
        fails = !rep.all_passed() || bad.g != C.g || bad.h != C.h;
      } catch (const MathError&) {
        fails = true;
      }
    }
    if (fails) ++caught;
  }
  CHECK(caught >= 95);
}

TEST_CASE("generic intersection laws") {
  // dim-1 chain, order 1: a generic hyperplane lands on (0, 1)
  auto r2 = qring({"y1", "y2"});
  DiffChain A = chain_of(r2, {"y1'^2-4*y1"});
  IntersectResult res = generic_intersection_check(A, 0);
  CHECK_FALSE(res.unit_ideal);
  CHECK(res.dimension == 0);
  CHECK(res.order == 1);

  // order-1 generic polynomial raises the order: (0, 2)
  IntersectResult res2 = generic_intersection_check(A, 1);
  CHECK_FALSE(res2.unit_ideal);
  CHECK(res2.dimension == 0);
  CHECK(res2.order == 2);

  // dim-0 chain: the unit ideal marker
  DiffChain A0 = chain_of(r2, {"y1'+1", "y2'"});
  CHECK(generic_intersection_check(A0, 0).unit_ideal);

  // two successive generic linear order-1 polynomials on the zero ideal
  IntersectResult tower = generic_tower(r2, {1, 1});
  CHECK_FALSE(tower.unit_ideal);
  CHECK(tower.dimension == 0);
  CHECK(tower.order == 2);

  IntersectResult tower2 = generic_tower(r2, {1});
  CHECK(tower2.dimension == 1);
  CHECK(tower2.order == 1);
}

TEST_CASE("numeric fiber check meets the tolerance") {
  auto r = qring({"y1"});
  DiffChain A = chain_of(r, {"y1'^2-4*y1"});
  ChowForm C = f1_form();
  FiberCheckResult res = numeric_fiber_check(C, A, 5, 12345);
  CHECK(res.samples >= 5);
  CHECK(res.max_residual < 1e-9);

  auto r2 = qring({"y1", "y2"});
  DiffChain A2 = chain_of(r2, {"y1'+1", "y2'"});
  ChowForm C2 = chow_form(A2);
  FiberCheckResult res2 = numeric_fiber_check(C2, A2, 5, 777);
  CHECK(res2.max_residual < 1e-9);

  // a 1e-3 perturbation of gamma must be visible: the test has power
  FiberCheckResult bad = numeric_fiber_check(C, A, 3, 12345, 1e-3);
  CHECK(bad.max_residual > 1e-4);
}

TEST_CASE("linear transforms preserve the invariants") {
  ChowForm C = f1_form();
  std::vector<std::vector<Coef>> id = {{Coef::from_mpq(mpq_class(1))}};
  ChowForm same = linear_transform_chowform(C, id);
  CHECK(same.poly == C.poly);

  std::vector<std::vector<Coef>> two = {{Coef::from_mpq(mpq_class(2))}};
  ChowForm scaled = linear_transform_chowform(C, two);
  CHECK(scaled.blocks[0].degree == C.blocks[0].degree);
  CHECK(scaled.g == C.g);
  CHECK(scaled.h == C.h);

  auto r2 = qring({"y1", "y2"});
  DiffChain A2 = chain_of(r2, {"y1'+1", "y2'"});
  ChowForm C2 = chow_form(A2);
  Coef z = Coef::from_mpq(mpq_class(0)), o = Coef::from_mpq(mpq_class(1));
  std::vector<std::vector<Coef>> swap = {{z, o}, {o, z}};
  ChowForm swapped = linear_transform_chowform(C2, swap);
  CHECK(swapped.blocks[0].degree == C2.blocks[0].degree);
  CHECK(swapped.g == C2.g);

  std::vector<std::vector<Coef>> sing = {{o, o}, {o, o}};
  CHECK_THROWS_AS(linear_transform_chowform(C2, sing), MathError);
}

TEST_CASE("the empty tower is the zero ideal") {
  auto r = qring({"y1", "y2", "y3"});
  IntersectResult res = generic_tower(r, {});
  CHECK_FALSE(res.unit_ideal);
  CHECK(res.dimension == 3);
  CHECK(res.order == 0);
}

TEST_CASE("nonlinear generic intersections obey the same laws") {
  auto r2 = qring({"y1", "y2"});
  DiffChain A = chain_of(r2, {"y1'^2-4*y1"});  // d = 1, h = 1
  for (int s = 0; s <= 1; ++s) {
    IntersectResult res = generic_intersection_check(A, s, /*linear_only=*/false,
                                                     /*degree=*/2);
    CHECK_FALSE(res.unit_ideal);
    CHECK(res.dimension == 0);
    CHECK(res.order == 1 + s);
  }
}
