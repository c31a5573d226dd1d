#include <doctest.h>

#include "deltachow/error.hpp"
#include "deltachow/io.hpp"
#include "deltachow/ranking.hpp"

using namespace deltachow;

namespace {
RingPtr ring3() {
  return RingContext::make(FieldKind::Rationals, {"y1", "y2", "y3"});
}
}  // namespace

TEST_CASE("orderly and elimination comparisons") {
  auto r = ring3();
  Ranking orderly = Ranking::orderly(r);
  auto y1 = r->index_of("y1").value();
  auto y2 = r->index_of("y2").value();
  CHECK(orderly.compare(DerVar{y1, 2}, DerVar{y2, 1}) == std::strong_ordering::greater);
  CHECK(orderly.compare(DerVar{y1, 1}, DerVar{y2, 1}) == std::strong_ordering::less);

  Ranking elim = Ranking::elimination(r, {"y1", "y2", "y3"});
  CHECK(elim.compare(DerVar{y2, 0}, DerVar{y1, 5}) == std::strong_ordering::greater);
}

TEST_CASE("ranking axioms hold exhaustively on low orders") {
  auto r = ring3();
  std::vector<Ranking> rankings;
  rankings.push_back(Ranking::orderly(r));
  rankings.push_back(Ranking::elimination(r, {"y2", "y3", "y1"}));
  rankings.push_back(Ranking::parse(r, "block:[y2|y1,y3]"));
  std::vector<DerVar> all;
  for (std::uint32_t v = 0; v < 3; ++v)
    for (std::uint32_t k = 0; k <= 4; ++k) all.push_back(DerVar{v, k});
  for (const auto& rk : rankings) {
    for (auto a : all) {
      // delta a > a
      CHECK(rk.compare(DerVar{a.var, a.ord + 1}, a) == std::strong_ordering::greater);
      for (auto b : all) {
        auto c = rk.compare(a, b);
        // antisymmetry / totality
        auto c2 = rk.compare(b, a);
        CHECK((c == std::strong_ordering::equal) == (a == b));
        CHECK((c == std::strong_ordering::less) == (c2 == std::strong_ordering::greater));
        if (c == std::strong_ordering::greater) {
          // a > b implies delta a > delta b
          CHECK(rk.compare(DerVar{a.var, a.ord + 1}, DerVar{b.var, b.ord + 1}) ==
                std::strong_ordering::greater);
        }
        for (auto cvar : all) {
          // transitivity
          if (rk.compare(a, b) == std::strong_ordering::less &&
              rk.compare(b, cvar) == std::strong_ordering::less)
            CHECK(rk.compare(a, cvar) == std::strong_ordering::less);
        }
      }
    }
  }
}

TEST_CASE("parameters rank below main variables") {
  auto r = RingContext::make(FieldKind::Rationals, {"y1", "u00"},
                             {VarKind::Main, VarKind::Parameter});
  Ranking rk = Ranking::orderly(r);
  auto y1 = r->index_of("y1").value();
  auto u = r->index_of("u00").value();
  CHECK(rk.compare(DerVar{y1, 0}, DerVar{u, 7}) == std::strong_ordering::greater);
}

TEST_CASE("decompose: leaders, initials, separants") {
  auto r = RingContext::make(FieldKind::Rationals, {"y1"});
  Ranking rk = Ranking::orderly(r);
  DiffPoly p = parse_poly("y1'^2-4*y1", r);
  RankDecomposition d = decompose(p, rk);
  CHECK(d.leader == DerVar{0, 1});
  CHECK(d.rank_degree == 2);
  CHECK(format_poly(d.initial) == "1");
  CHECK(format_poly(d.separant) == "2*y1'");

  auto ru = RingContext::make(FieldKind::Rationals, {"y1", "u00", "u01"},
                              {VarKind::Main, VarKind::Parameter, VarKind::Parameter});
  DiffPoly hp = parse_poly("u01*y1+u00", ru);
  RankDecomposition dh = decompose(hp, Ranking::orderly(ru));
  CHECK(dh.leader == DerVar{0, 0});
  CHECK(format_poly(dh.initial) == "u01");
  CHECK(format_poly(dh.separant) == "u01");

  CHECK_THROWS_AS(decompose(parse_poly("u00^2+1", ru), Ranking::orderly(ru)), MathError);
}

TEST_CASE("separant equals initial of the first proper derivative") {
  auto r = RingContext::make(FieldKind::Rationals, {"y1", "y2"});
  Ranking rk = Ranking::orderly(r);
  for (const char* s : {"y1'^2-4*y1", "y1''*y2+y1'^3-1", "y2'^3+y1*y2'"}) {
    DiffPoly p = parse_poly(s, r);
    RankDecomposition d = decompose(p, rk);
    if (d.rank_degree >= 1) {
      RankDecomposition dd = decompose(p.differentiate(), rk);
      CHECK(dd.initial == d.separant);
    }
  }
}

TEST_CASE("rank comparison") {
  auto r = RingContext::make(FieldKind::Rationals, {"y1"});
  Ranking rk = Ranking::orderly(r);
  CHECK(compare_rank(parse_poly("y1'^2-4*y1", r), parse_poly("y1'", r), rk) ==
        RankOrder::Higher);
  CHECK(compare_rank(parse_poly("y1'", r), parse_poly("y1'^2", r), rk) ==
        RankOrder::Lower);
  CHECK(compare_rank(parse_poly("y1'+1", r), parse_poly("y1'-5", r), rk) ==
        RankOrder::Same);
}

TEST_CASE("ranking spec round-trip") {
  auto r = ring3();
  CHECK(Ranking::parse(r, "orderly").spec() == "orderly");
  CHECK(Ranking::parse(r, "elim:y1<y2<y3").spec() == "elim:y1<y2<y3");
  CHECK(Ranking::parse(r, "block:[y2|y1,y3]").spec() == "block:[y2|y1,y3]");
  CHECK_THROWS_AS(Ranking::parse(r, "elim:y1<y2"), MathError);
  CHECK_THROWS_AS(Ranking::parse(r, "zigzag"), MathError);
}
