#include <doctest.h>

#include "deltachow/algelim.hpp"
#include "deltachow/io.hpp"
#include "test_util.hpp"

using namespace deltachow;

namespace {

RingPtr qring(std::vector<std::string> names) {
  return RingContext::make(FieldKind::Rationals, std::move(names));
}

DiffPoly P(const RingPtr& r, const std::string& s) { return parse_poly(s, r); }

DerVar V(const RingPtr& r, const std::string& name, std::uint32_t ord = 0) {
  return DerVar{r->index_of(name).value(), ord};
}

bool equal_up_to_unit(const DiffPoly& a, const DiffPoly& b) {
  DiffPoly pa = a.primitive_normalized();
  DiffPoly pb = b.primitive_normalized();
  return pa == pb || pa == -pb;
}

}  // namespace

TEST_CASE("exact division") {
  auto r = qring({"x", "y"});
  DiffPoly p = P(r, "x^2-y^2");
  CHECK(*exact_divide(p, P(r, "x-y")) == P(r, "x+y"));
  CHECK_FALSE(exact_divide(p, P(r, "x+1")).has_value());
  CHECK(exact_divide(DiffPoly::zero(r), P(r, "x"))->is_zero());
}

TEST_CASE("gcd, content, primitive part") {
  auto r = qring({"x", "b", "u00", "u01"});
  CHECK(format_poly(alg_gcd(P(r, "x^2-1"), P(r, "x^2-2*x+1"))) == "x - 1");
  CHECK(format_poly(content_wrt(P(r, "b^2*x+b^3"), V(r, "x"))) == "b^2");
  CHECK(format_poly(primitive_part_wrt(P(r, "b^2*x+b^3"), V(r, "x"))) == "b + x");

  // primitive part of u01*F1 w.r.t. u00' is F1
  DiffPoly f1 = P(r, "u01^2*u00'^2 - 2*u01*u01'*u00*u00' + u01'^2*u00^2 + 4*u01^3*u00");
  DiffPoly scaled = P(r, "u01") * f1;
  CHECK(primitive_part_wrt(scaled, V(r, "u00", 1)) == f1.primitive_normalized());
}

TEST_CASE("gcd on random products") {
  auto r = qring({"x", "y", "z"});
  std::mt19937_64 rng(77);
  for (int i = 0; i < 25; ++i) {
    DiffPoly a = testutil::random_poly(rng, r, 3, 0, 2, 4);
    DiffPoly b = testutil::random_poly(rng, r, 3, 0, 2, 4);
    DiffPoly g = testutil::random_poly(rng, r, 2, 0, 2, 4);
    if (a.is_zero() || b.is_zero() || g.is_zero()) continue;
    DiffPoly computed = alg_gcd(a * g, b * g);
    // gcd must contain g (up to the gcd of a and b)
    auto q = exact_divide(computed, alg_gcd(computed, g.primitive_normalized()));
    REQUIRE(q.has_value());
    CHECK(exact_divide(a * g, computed).has_value());
    CHECK(exact_divide(b * g, computed).has_value());
  }
}

TEST_CASE("squarefree part") {
  auto r = qring({"x", "y"});
  DiffPoly p = P(r, "(x-y)^2*(x+1)");
  DiffPoly sf = squarefree_part_wrt(p, V(r, "x"));
  CHECK(equal_up_to_unit(sf, P(r, "(x-y)*(x+1)")));
}

TEST_CASE("determinant and resultant") {
  auto r = qring({"a", "b", "c", "y"});
  std::vector<std::vector<DiffPoly>> m = {{P(r, "a"), P(r, "b")},
                                          {P(r, "c"), P(r, "a")}};
  CHECK(poly_determinant(m) == P(r, "a^2-b*c"));

  // discriminant instance
  DiffPoly res = resultant(P(r, "a*y^2+b*y+c"), P(r, "2*a*y+b"), V(r, "y"));
  CHECK(equal_up_to_unit(res, P(r, "a*(b^2-4*a*c)")));

  // res(x-a, x-b) = a... sign convention: det [[1,-a],[1,-b]] = -b+a
  auto r2 = qring({"x", "a", "b"});
  CHECK(resultant(P(r2, "x-a"), P(r2, "x-b"), V(r2, "x")) == P(r2, "a-b"));
}

TEST_CASE("prolongation") {
  auto r = qring({"y1", "y2"});
  AlgSystem s1 = prolong({P(r, "y1'^2-4*y1")}, {1});
  REQUIRE(s1.polynomials.size() == 2);
  CHECK(s1.polynomials[1] == P(r, "2*y1'*y1''-4*y1'"));
  CHECK(s1.max_frozen_order[r->index_of("y1").value()] == 2);

  AlgSystem s2 = prolong({P(r, "y1'+1"), P(r, "y2'")}, {2, 2});
  CHECK(s2.polynomials.size() == 6);

  auto ru = RingContext::make(FieldKind::Rationals, {"y1", "u00", "u01"},
                              {VarKind::Main, VarKind::Parameter, VarKind::Parameter});
  AlgSystem s3 = prolong({parse_poly("u00+u01*y1", ru)}, {1});
  REQUIRE(s3.polynomials.size() == 2);
  CHECK(s3.polynomials[1] == parse_poly("u00'+u01'*y1+u01*y1'", ru));
  // default split: main derivatives eliminated, parameters kept
  CHECK(s3.elim_vars.size() == 2);
  CHECK(s3.keep_vars.size() == 4);
}

TEST_CASE("basic elimination") {
  auto r = RingContext::make(FieldKind::Rationals, {"y", "u", "v"},
                             {VarKind::Main, VarKind::Parameter, VarKind::Parameter});
  AlgSystem sys;
  sys.ring = r;
  sys.polynomials = {P(r, "y-1"), P(r, "y*u-v")};
  sys.split_by_kind();
  GroebnerBasis gb = groebner_eliminate(sys, std::nullopt);
  REQUIRE(gb.generators.size() == 1);
  CHECK(equal_up_to_unit(gb.generators[0], P(r, "u-v")));
}

TEST_CASE("discriminant elimination against the resultant oracle") {
  auto r = RingContext::make(
      FieldKind::Rationals, {"y", "a", "b", "c"},
      {VarKind::Main, VarKind::Parameter, VarKind::Parameter, VarKind::Parameter});
  AlgSystem sys;
  sys.ring = r;
  sys.polynomials = {P(r, "a*y^2+b*y+c"), P(r, "2*a*y+b")};
  sys.split_by_kind();
  GroebnerBasis gb = groebner_eliminate(sys, std::nullopt);
  REQUIRE(gb.generators.size() >= 1);
  bool found = false;
  for (const auto& g : gb.generators)
    if (equal_up_to_unit(g, P(r, "b^2-4*a*c"))) found = true;
  CHECK(found);
}

TEST_CASE("elimination with saturation recovers the 4-term Chow form") {
  auto r = RingContext::make(FieldKind::Rationals, {"y1", "u00", "u01"},
                             {VarKind::Main, VarKind::Parameter, VarKind::Parameter});
  AlgSystem sys = prolong({P(r, "y1'^2-4*y1"), P(r, "u00+u01*y1")}, {0, 1});
  GroebnerBasis gb = groebner_eliminate(sys, P(r, "u01"));
  REQUIRE(gb.generators.size() == 1);
  DiffPoly f1 =
      P(r, "u01^2*u00'^2 - 2*u01*u01'*u00*u00' + u01'^2*u00^2 + 4*u01^3*u00");
  CHECK(equal_up_to_unit(gb.generators[0], f1));
}

TEST_CASE("Buchberger closure and idempotence on random systems") {
  auto r = qring({"x", "y", "z"});
  std::mt19937_64 rng(31337);
  std::vector<VarKey> priority = {key_of(DerVar{0, 0}), key_of(DerVar{1, 0}),
                                  key_of(DerVar{2, 0})};
  for (int trial = 0; trial < 20; ++trial) {
    std::vector<DiffPoly> gens;
    for (int i = 0; i < 2; ++i) gens.push_back(testutil::random_poly(rng, r, 3, 0, 2, 5));
    bool allzero = true;
    for (const auto& g : gens) allzero &= g.is_zero();
    if (allzero) continue;
    GroebnerBasis gb = groebner(gens, priority);
    CHECK(spolys_reduce_to_zero(gb));
    // idempotence: recomputing from the basis returns the same reduced basis
    if (!gb.generators.empty()) {
      GroebnerBasis gb2 = groebner(gb.generators, priority);
      CHECK(gb.generators == gb2.generators);
    }
    // every generator reduces inputs: each input must have normal form 0
    for (const auto& g : gens) CHECK(normal_form(g, gb).is_zero());
  }
}

TEST_CASE("elimination agrees with the resultant cascade on small systems") {
  auto r = RingContext::make(
      FieldKind::Rationals, {"y", "x1", "x2"},
      {VarKind::Main, VarKind::Parameter, VarKind::Parameter});
  std::mt19937_64 rng(4242);
  int checked = 0;
  for (int trial = 0; trial < 120; ++trial) {
    DiffPoly f = testutil::random_alg_poly(rng, r, 3, 0.3, 5);
    DiffPoly g = testutil::random_alg_poly(rng, r, 3, 0.3, 5);
    if (f.is_zero() || g.is_zero()) continue;
    if (f.degree_of(V(r, "y")) == 0 || g.degree_of(V(r, "y")) == 0) continue;
    AlgSystem sys;
    sys.ring = r;
    sys.polynomials = {f, g};
    sys.split_by_kind();
    GroebnerBasis gb = groebner_eliminate(sys, std::nullopt);
    DiffPoly res = resultant(f, g, V(r, "y"));
    // the resultant always lies in the computed elimination ideal
    GroebnerBasis full = groebner({f, g}, {key_of(V(r, "y")), key_of(V(r, "x1")),
                                           key_of(V(r, "x2"))});
    CHECK(normal_form(res, full).is_zero());
    if (gb.generators.size() == 1 && !res.is_zero() &&
        !gb.generators[0].is_constant()) {
      // principal case: squarefree part of the generator divides that of res
      DerVar x1 = V(r, "x1");
      DiffPoly e = gb.generators[0];
      DiffPoly se = e.contains_var(x1.var) ? squarefree_part_wrt(e, x1) : e;
      DiffPoly sr = res.contains_var(x1.var) ? squarefree_part_wrt(res, x1) : res;
      auto q = exact_divide(sr, alg_gcd(se, sr));
      CHECK(q.has_value());
      CHECK(alg_gcd(se, sr).total_degree() == se.total_degree());
      ++checked;
    }
  }
  CHECK(checked > 10);
}

TEST_CASE("groebner_eliminate is idempotent on its own output") {
  auto r = RingContext::make(FieldKind::Rationals, {"y1", "u00", "u01"},
                             {VarKind::Main, VarKind::Parameter, VarKind::Parameter});
  AlgSystem sys = prolong({P(r, "y1'^2-4*y1"), P(r, "u00+u01*y1")}, {0, 1});
  GroebnerBasis gb = groebner_eliminate(sys, P(r, "u01"));
  AlgSystem again;
  again.ring = r;
  again.polynomials = gb.generators;
  again.split_by_kind();  // only parameter variables remain: nothing to eliminate
  CHECK(again.elim_vars.empty());
  GroebnerBasis gb2 = groebner_eliminate(again, std::nullopt);
  CHECK(gb.generators == gb2.generators);
}
