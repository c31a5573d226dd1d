#include <doctest.h>

#include <random>

#include "deltachow/chow.hpp"
#include "deltachow/io.hpp"
#include "deltachow/verify.hpp"

using namespace deltachow;

namespace {

RingPtr qring(std::vector<std::string> names) {
  return RingContext::make(FieldKind::Rationals, std::move(names));
}

DiffPoly P(const RingPtr& r, const std::string& s) { return parse_poly(s, r); }

bool equal_up_to_unit(const DiffPoly& a, const DiffPoly& b) {
  DiffPoly pa = a.primitive_normalized();
  DiffPoly pb = b.primitive_normalized();
  return pa == pb || pa == -pb;
}

DiffChain chain_of(const RingPtr& r, std::vector<std::string> polys) {
  std::vector<DiffPoly> ps;
  for (const auto& s : polys) ps.push_back(parse_poly(s, r));
  auto cs = charset(ps, Ranking::orderly(r));
  REQUIRE(cs.chain.has_value());
  return *cs.chain;
}

}  // namespace

TEST_CASE("hypersurface Chow form of sat(y'^2 - 4y): the 4-term F1") {
  auto r = qring({"y1"});
  ChowForm C = chow_hypersurface(P(r, "y1'^2-4*y1"));
  auto u = C.uring();
  DiffPoly f1 =
      P(u, "u01^2*u00'^2 - 2*u01*u01'*u00*u00' + u01'^2*u00^2 + 4*u01^3*u00");
  CHECK(equal_up_to_unit(C.poly, f1));
  CHECK(C.d == 0);
  CHECK(C.h == 1);
  CHECK(C.g == 2);
  CHECK(C.blocks[0].degree == 4);
  CHECK(C.poly.nterms() == 4);
  CHECK(defining_identity_holds(C, nullptr) == false);  // F1 is not a resultant
}

TEST_CASE("hypersurface Chow forms distinguish 2y'^2-yy'' from y'^2-yy'' by delta-degree") {
  auto r = qring({"y"});
  ChowForm C1 = chow_hypersurface(P(r, "2*y'^2 - y*y''"));
  auto u1 = C1.uring();
  CHECK(equal_up_to_unit(
      C1.poly, P(u1, "u00*u01*u00'' - u00^2*u01'' - 2*u00'^2*u01 + 2*u00*u00'*u01'")));
  CHECK(C1.blocks[0].degree == 3);
  CHECK(C1.h == 2);
  CHECK(C1.poly.nterms() == 4);

  ChowForm C2 = chow_hypersurface(P(r, "y'^2 - y*y''"));
  auto u2 = C2.uring();
  CHECK(equal_up_to_unit(
      C2.poly, P(u2, "u00*u01^2*u00'' - u00^2*u01*u01'' - u00'^2*u01^2 + u00^2*u01'^2")));
  CHECK(C2.blocks[0].degree == 4);
  CHECK(C2.h == 2);
  CHECK(C2.poly.nterms() == 4);
}

TEST_CASE("pipeline Chow form of [y1'+1, y2']: the 10-term form") {
  auto r = qring({"y1", "y2"});
  DiffChain A = chain_of(r, {"y1'+1", "y2'"});
  ChowForm C = chow_form(A);
  auto u = C.uring();
  DiffPoly f = P(u,
                 "u02*u01'*u00'' + u01''*u01*u02 - 2*u02*u01'^2 - u02*u01''*u00' "
                 "- u02'*u01*u00'' - u02''*u01^2 - u01'*u02''*u00 + 2*u02'*u01*u01' "
                 "+ u02''*u01*u00' + u01''*u02'*u00");
  CHECK(equal_up_to_unit(C.poly, f));
  CHECK(C.poly.nterms() == 10);
  CHECK(C.n == 2);
  CHECK(C.d == 0);
  CHECK(C.h == 2);
  CHECK(C.g == 1);
  CHECK(defining_identity_holds(C, &A));
}

TEST_CASE("pipeline agrees with the hypersurface closed form") {
  auto r = qring({"y1"});
  DiffChain A = chain_of(r, {"y1'^2-4*y1"});
  ChowForm C = chow_form(A);
  ChowForm H = chow_hypersurface(P(r, "y1'^2-4*y1"));
  CHECK(equal_up_to_unit(C.poly, H.poly));
  CHECK(C.h == H.h);
  CHECK(C.g == H.g);
  CHECK(defining_identity_holds(C, &A));

  // and on a two-variable hypersurface of dimension 1
  auto r2 = qring({"y1", "y2"});
  DiffChain A2 = chain_of(r2, {"y1'+y2"});
  ChowForm C2 = chow_form(A2);
  ChowForm H2 = chow_hypersurface(P(r2, "y1'+y2"));
  CHECK(equal_up_to_unit(C2.poly, H2.poly));
  CHECK(defining_identity_holds(C2, &A2));
}

TEST_CASE("generalized Chow form with the trivial shape reproduces F1") {
  auto r = qring({"y1"});
  DiffChain A = chain_of(r, {"y1'^2-4*y1"});
  ChowForm G = generalized_chow(A, r, {GenericShape{0, 1}});
  ChowForm H = chow_hypersurface(P(r, "y1'^2-4*y1"));
  CHECK(equal_up_to_unit(G.poly, H.poly));
}

TEST_CASE("differential resultant of two linear order-0 polynomials") {
  auto r = qring({"y1"});
  ChowForm R = generalized_chow(std::nullopt, r,
                                {GenericShape{0, 1}, GenericShape{0, 1}});
  auto u = R.uring();
  CHECK(equal_up_to_unit(R.poly, P(u, "u00*u11 - u01*u10")));
  CHECK(R.h == 0);
  CHECK(R.blocks[0].order == 0);
  CHECK(R.blocks[1].order == 0);
  CHECK(defining_identity_holds(R, nullptr));
}

TEST_CASE("dres evaluation at specialized coefficients") {
  auto r = qring({"y1"});
  ChowForm R = generalized_chow(std::nullopt, r,
                                {GenericShape{0, 1}, GenericShape{0, 1}});
  // common root y = 1: u00 = -u01, u10 = -u11
  std::map<std::string, Coef> a{{"u00", Coef::from_mpq(mpq_class(-3))},
                                {"u01", Coef::from_mpq(mpq_class(3))},
                                {"u10", Coef::from_mpq(mpq_class(5))},
                                {"u11", Coef::from_mpq(mpq_class(-5))}};
  auto [val, sval] = dres_evaluate(R, a);
  CHECK(val.is_zero());
  // no common root
  std::map<std::string, Coef> b{{"u00", Coef::from_mpq(mpq_class(1))},
                                {"u01", Coef::from_mpq(mpq_class(2))},
                                {"u10", Coef::from_mpq(mpq_class(3))},
                                {"u11", Coef::from_mpq(mpq_class(4))}};
  CHECK_FALSE(dres_evaluate(R, b).first.is_zero());
  std::map<std::string, Coef> incomplete{{"u00", Coef::from_mpq(mpq_class(1))}};
  CHECK_THROWS_AS(dres_evaluate(R, incomplete), MathError);
}

TEST_CASE("the 206-term differential resultant, orders (0,1), degrees (2,2)") {
  auto r = qring({"y"});
  ChowForm R = generalized_chow(std::nullopt, r,
                                {GenericShape{0, 2}, GenericShape{1, 2}});
  CHECK(R.poly.nterms() == 206);
  CHECK(R.blocks[0].order == 1);   // ord(R, u_0) = s - s_0 = 1
  CHECK(R.blocks[1].order == 0);   // ord(R, u_1) = s - s_1 = 0
  CHECK(R.blocks[0].degree == 8);  // delta-homogeneous of degree 8 in u_0
  CHECK(R.blocks[1].degree == 2);  // and degree 2 in u_1
  CHECK(defining_identity_holds(R, nullptr));

  MatrixCertificate cert = resultant_matrix_1var(R);
  CHECK(cert.matrix.size() == 14);
  CHECK(cert.col_labels.size() == 14);
  CHECK(cert.determinant == R.poly * cert.extraneous);
  CHECK_FALSE(cert.extraneous.is_zero());

  // specializing to two polynomials with a common solution kills the det:
  // P0 = (y-1)(y-2) = 2 - 3y + y^2,  P1 = (y-1)(y'-1) = 1 - y - y' + y*y'
  std::map<std::string, Coef> common{
      {"u00", Coef::from_mpq(mpq_class(2))},  {"u01", Coef::from_mpq(mpq_class(-3))},
      {"u02", Coef::from_mpq(mpq_class(1))},  {"u10", Coef::from_mpq(mpq_class(1))},
      {"u11", Coef::from_mpq(mpq_class(-1))}, {"u12", Coef::from_mpq(mpq_class(-1))},
      {"u13", Coef::from_mpq(mpq_class(0))},  {"u14", Coef::from_mpq(mpq_class(1))},
      {"u15", Coef::from_mpq(mpq_class(0))}};
  auto [rv, sv] = dres_evaluate(R, common);
  CHECK(rv.is_zero());
}

TEST_CASE("sylvester-style resultant of two generic quadratics") {
  auto r = qring({"y1"});
  ChowForm R = generalized_chow(std::nullopt, r,
                                {GenericShape{0, 2}, GenericShape{0, 2}});
  // oracle: the algebraic resultant of P0, P1 w.r.t. y
  auto u = R.uring();
  std::vector<std::string> names;
  for (std::uint32_t i = 0; i < u->size(); ++i) names.push_back(u->name(i));
  auto rc = RingContext::make(FieldKind::Rationals, {"y"});
  std::vector<VarKind> kinds(names.size(), VarKind::Parameter);
  auto Rc = rc->extended(names, kinds);
  DiffPoly p0 = parse_poly("u00 + u01*y + u02*y^2", Rc);
  DiffPoly p1 = parse_poly("u10 + u11*y + u12*y^2", Rc);
  DiffPoly sylv = resultant(p0, p1, DerVar{Rc->index_of("y").value(), 0});
  CHECK(equal_up_to_unit(R.poly.mapped_by_name(Rc), sylv));
  CHECK(defining_identity_holds(R, nullptr));
}

TEST_CASE("golden corpus round-trips through the text format") {
  auto r1 = qring({"y1"});
  auto r2 = qring({"y1", "y2"});
  std::vector<ChowForm> forms = {chow_hypersurface(P(r1, "y1'^2-4*y1")),
                                 chow_form(chain_of(r2, {"y1'+1", "y2'"}))};
  auto ry = qring({"y"});
  forms.push_back(chow_hypersurface(P(ry, "2*y'^2-y*y''")));
  forms.push_back(chow_hypersurface(P(ry, "y'^2-y*y''")));
  for (const auto& C : forms) {
    std::string text = format_poly(C.poly);
    CHECK(parse_poly(text, C.uring()) == C.poly);
    CHECK(format_poly(parse_poly(text, C.uring())) == text);
  }
}

TEST_CASE("nonlinear dimension-1 hypersurface: pipeline equals closed form") {
  auto r2 = qring({"y1", "y2"});
  DiffChain A = chain_of(r2, {"y1'^2-4*y1"});
  ChowForm C = chow_form(A);        // genuine generic-hyperplane pipeline
  ChowForm H = chow_hypersurface(P(r2, "y1'^2-4*y1"));
  CHECK(C.poly == H.poly);
  CHECK(C.d == 1);
  CHECK(C.h == 1);
  CHECK(C.g == 2);
  CHECK(C.blocks[0].degree == 4);
  CHECK(C.blocks[1].degree == 4);
  CHECK(C.poly.nterms() == 83);
  CHECK(defining_identity_holds(C, &A));
  CHECK(generic_point_check(C, A));
}

TEST_CASE("resultant evaluation refuses common roots, certified by an oracle") {
  auto r = qring({"y1"});
  ChowForm R = generalized_chow(std::nullopt, r,
                                {GenericShape{0, 2}, GenericShape{0, 2}});
  std::mt19937_64 rng(2718281);
  std::uniform_int_distribution<long> pick(-9, 9);
  auto yring = qring({"y"});
  DerVar yv{0, 0};
  int done = 0;
  for (int trial = 0; trial < 60 && done < 5; ++trial) {
    std::map<std::string, Coef> assign;
    std::vector<long> v(6);
    for (auto& x : v) x = pick(rng);
    if (v[2] == 0 || v[5] == 0) continue;  // keep both genuinely quadratic
    const char* names[] = {"u00", "u01", "u02", "u10", "u11", "u12"};
    for (int i = 0; i < 6; ++i) assign[names[i]] = Coef::from_mpq(mpq_class(v[i]));
    // oracle: algebraic resultant of the two specialized quadratics
    DiffPoly p0 = DiffPoly::integer(yring, v[0]) +
                  DiffPoly::var(yring, yv).scaled(Coef::from_mpq(mpq_class(v[1]))) +
                  DiffPoly::var(yring, yv, 2).scaled(Coef::from_mpq(mpq_class(v[2])));
    DiffPoly p1 = DiffPoly::integer(yring, v[3]) +
                  DiffPoly::var(yring, yv).scaled(Coef::from_mpq(mpq_class(v[4]))) +
                  DiffPoly::var(yring, yv, 2).scaled(Coef::from_mpq(mpq_class(v[5])));
    DiffPoly res = resultant(p0, p1, yv);
    if (res.is_zero()) continue;  // skip: they do share a root
    auto [val, sval] = dres_evaluate(R, assign);
    CHECK_FALSE(val.is_zero());
    ++done;
  }
  CHECK(done >= 5);
}

TEST_CASE("swapping the base variables permutes the block coefficients") {
  auto r2 = qring({"y1", "y2"});
  DiffChain A = chain_of(r2, {"y1'+1", "y2'"});
  ChowForm C = chow_form(A);
  Coef z = Coef::from_mpq(mpq_class(0)), o = Coef::from_mpq(mpq_class(1));
  ChowForm swapped = linear_transform_chowform(C, {{z, o}, {o, z}});
  // the image ideal swaps the roles of y1 and y2
  DiffChain Aimg = chain_of(r2, {"y2'+1", "y1'"});
  ChowForm Cimg = chow_form(Aimg);
  CHECK(equal_up_to_unit(swapped.poly, Cimg.poly));
}

TEST_CASE("chow pipeline over Q(t)") {
  auto r = RingContext::make(FieldKind::RationalFunctionsT, {"y1"});
  DiffChain A({parse_poly("y1'-t", r)}, Ranking::orderly(r));
  ChowForm C = chow_form(A);
  // y = -u00/u01 with y' = t gives u00*u01' - u00'*u01 - t*u01^2 = 0
  CHECK(equal_up_to_unit(C.poly,
                         parse_poly("u00*u01' - t*u01^2 - u00'*u01", C.uring())));
  CHECK(defining_identity_holds(C, &A));
  CHECK(generic_point_check(C, A));

  DiffChain B({parse_poly("t*y1'-y1", r)}, Ranking::orderly(r));
  ChowForm C2 = chow_form(B);
  CHECK(equal_up_to_unit(C2.poly,
                         parse_poly("t*u00*u01' - t*u00'*u01 + u00*u01", C2.uring())));
  CHECK(defining_identity_holds(C2, &B));
}
