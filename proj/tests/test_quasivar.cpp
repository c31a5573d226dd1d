#include <doctest.h>

#include "deltachow/algelim.hpp"
#include "deltachow/io.hpp"
#include "deltachow/quasivar.hpp"
#include "deltachow/verify.hpp"

using namespace deltachow;

namespace {

// A 16-monomial support of index (2,1,1,1,2); off the locus a1 = 0 its
// quasi-variety is the two-parameter family of forms of a1*y1' + a13*y2.
std::vector<std::string> template16_support() {
  return {"u12^2*u01*u00'",  "u11*u12*u02*u00'", "u01*u02*u12*u10'",
          "u02^2*u11*u10'",  "u12^2*u00*u01'",   "u10*u12*u02*u01'",
          "u00*u02*u12*u11'", "u02^2*u10*u11'",  "u10*u01*u12*u02'",
          "u00*u02*u11*u12'", "u11*u12*u00*u02'", "u01*u02*u10*u12'",
          "u00*u11^2*u02",   "u00*u01*u11*u12",  "u01*u10*u02*u11",
          "u10*u01^2*u12"};
}

// The known simplified presentation off V(a1): each pair (i, j, sign)
// encodes the relation a_i + sign * a_j = 0.
struct LinearRel {
  int i, j, sign;
};
std::vector<LinearRel> known_relations() {
  return {{2, 1, 1},  {3, 1, 1},  {4, 1, -1},  {5, 1, 1},  {6, 1, -1},
          {7, 1, -1}, {8, 1, 1},  {9, 1, 1},   {10, 1, 1}, {11, 1, -1},
          {12, 1, -1}, {14, 13, 1}, {15, 13, 1}, {16, 13, -1}};
}

DiffPoly relation_poly(const ChowTemplate& T, const LinearRel& r) {
  DiffPoly ai = DiffPoly::var(T.ring, DerVar{T.avars[static_cast<std::size_t>(r.i - 1)], 0});
  DiffPoly aj = DiffPoly::var(T.ring, DerVar{T.avars[static_cast<std::size_t>(r.j - 1)], 0});
  return r.sign > 0 ? ai + aj : ai - aj;
}

}  // namespace

TEST_CASE("template validation") {
  CHECK_THROWS_AS(build_template(2, 1, 1, 2, {"u12^2*u01*u00'^2"}), MathError);
  CHECK_THROWS_AS(build_template(2, 1, 1, 2, {"u12*u01*u00'"}), MathError);
  CHECK_THROWS_AS(build_template(2, 1, 1, 2, {"u12^2*u01*u00"}), MathError);
  // a single-monomial template with index (1,0,1,1,1)
  ChowTemplate tiny = build_template(1, 0, 1, 1, {"u00'"});
  CHECK(tiny.support.size() == 1);
  ChowTemplate ex = build_template(2, 1, 1, 2, template16_support());
  CHECK(ex.support.size() == 16);
  CHECK(ex.avars.size() == 16);
}

TEST_CASE("16-monomial template: relations match the known presentation off V(a1)") {
  ChowTemplate T = build_template(2, 1, 1, 2, template16_support());
  QuasiVarietyPresentation Q = cv1_generate(T);
  CHECK_FALSE(Q.relations.empty());

  // the excluded locus is spanned by the u00'-carrying coefficients a1, a2
  REQUIRE(Q.excluded.size() == 2);
  CHECK(T.ring->name(Q.excluded[0]) == "a1");
  CHECK(T.ring->name(Q.excluded[1]) == "a2");

  // every relation is delta-homogeneous in the a's
  for (const auto& r : Q.relations) {
    auto m = check_delta_homogeneous(r, T.avars);
    CHECK(m.has_value());
  }

  // direction 1: the known solution plane satisfies every emitted relation.
  // Substitute a2..a12 and a14..a16 through a1, a13 and expect exact zero.
  {
    std::map<VarKey, DiffPoly> sub;
    for (const auto& pr : known_relations()) {
      DiffPoly rhs =
          DiffPoly::var(T.ring, DerVar{T.avars[static_cast<std::size_t>(pr.j - 1)], 0});
      sub[key_of(DerVar{T.avars[static_cast<std::size_t>(pr.i - 1)], 0})] =
          pr.sign > 0 ? -rhs : rhs;
    }
    for (const auto& r : Q.relations) CHECK(r.substitute(sub).is_zero());
  }

  // direction 2: each known relation lies in the radical of the emitted
  // ideal off V(a1) (Rabinowitsch on the frozen a-variables).
  {
    RingPtr Raux = T.ring->extended({"zloc", "wrad"},
                                    {VarKind::Parameter, VarKind::Parameter});
    std::vector<VarKey> priority;
    priority.push_back(key_of(DerVar{Raux->index_of("zloc").value(), 0}));
    priority.push_back(key_of(DerVar{Raux->index_of("wrad").value(), 0}));
    for (std::uint32_t v : T.avars)
      priority.push_back(key_of(DerVar{v, 0}));
    DiffPoly zloc = DiffPoly::var(Raux, DerVar{Raux->index_of("zloc").value(), 0});
    DiffPoly wrad = DiffPoly::var(Raux, DerVar{Raux->index_of("wrad").value(), 0});
    DiffPoly a1 = DiffPoly::var(Raux, DerVar{T.avars[0], 0});
    for (const auto& pr : known_relations()) {
      std::vector<DiffPoly> gens;
      for (const auto& r : Q.relations) gens.push_back(r.mapped_by_name(Raux));
      gens.push_back(zloc * a1 - DiffPoly::integer(Raux, 1));
      gens.push_back(wrad * relation_poly(T, pr).mapped_by_name(Raux) -
                     DiffPoly::integer(Raux, 1));
      GroebnerBasis gb = groebner(gens, priority);
      bool is_unit = false;
      for (const auto& g : gb.generators)
        if (g.is_constant() && !g.is_zero()) is_unit = true;
      CHECK(is_unit);
    }
  }
}

TEST_CASE("a genuine Chow form satisfies the relations and misses the locus") {
  ChowTemplate T = build_template(2, 1, 1, 2, template16_support());
  QuasiVarietyPresentation Q = cv1_generate(T);

  auto r2 = RingContext::make(FieldKind::Rationals, {"y1", "y2"});
  ChowForm C = chow_hypersurface(parse_poly("y1'+y2", r2));
  std::vector<Coef> avals = template_coefficients(T, C);
  for (const auto& rel : Q.relations)
    CHECK(evaluate_relation(T, rel, avals).is_zero());
  bool excluded_hit = true;
  for (std::uint32_t v : Q.excluded) {
    for (std::size_t i = 0; i < T.avars.size(); ++i)
      if (T.avars[i] == v && !avals[i].is_zero()) excluded_hit = false;
  }
  CHECK_FALSE(excluded_hit);  // at least one excluded coordinate is nonzero

  // the all-zero vector satisfies the relations but lies in the excluded locus
  std::vector<Coef> zeros(T.avars.size(), Coef::zero(FieldKind::Rationals));
  for (const auto& rel : Q.relations)
    CHECK(evaluate_relation(T, rel, zeros).is_zero());
  bool all_excluded_zero = true;
  for (std::uint32_t v : Q.excluded)
    for (std::size_t i = 0; i < T.avars.size(); ++i)
      if (T.avars[i] == v && !zeros[i].is_zero()) all_excluded_zero = false;
  CHECK(all_excluded_zero);
}

TEST_CASE("interreduced presentation is consistent") {
  ChowTemplate T = build_template(2, 1, 1, 2, template16_support());
  QuasiVarietyPresentation Q = cv1_generate(T);
  std::vector<DiffPoly> reduced = Q.interreduced();
  CHECK_FALSE(reduced.empty());
  // reduced relations still vanish on the known solution plane
  std::map<VarKey, DiffPoly> sub;
  for (const auto& pr : known_relations()) {
    DiffPoly rhs =
        DiffPoly::var(T.ring, DerVar{T.avars[static_cast<std::size_t>(pr.j - 1)], 0});
    sub[key_of(DerVar{T.avars[static_cast<std::size_t>(pr.i - 1)], 0})] =
        pr.sign > 0 ? -rhs : rhs;
  }
  for (const auto& r : reduced) CHECK(r.substitute(sub).is_zero());
}
