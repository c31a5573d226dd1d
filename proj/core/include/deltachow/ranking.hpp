#pragma once

#include <compare>
#include <string>
#include <vector>

#include "deltachow/poly.hpp"

namespace deltachow {

enum class RankingKind : unsigned char { Orderly, Elimination, Block };

// Total order on derivative variables compatible with differentiation.
// PARAMETER variables rank strictly below every MAIN derivative; inside each
// class the selected scheme applies. Orderly ties between equal-order
// variables break by variable index (lower index lower).
class Ranking {
 public:
  static Ranking orderly(RingPtr ring);
  // Variables listed ascending (lowest first); must cover the whole ring.
  static Ranking elimination(RingPtr ring, const std::vector<std::string>& ascending);
  // Blocks listed ascending; orderly inside each block; must cover the ring.
  static Ranking block(RingPtr ring, const std::vector<std::vector<std::string>>& ascending);
  // CLI grammar: "orderly" | "elim:y1<y2<u00" | "block:[u00|y1,y2]".
  static Ranking parse(RingPtr ring, const std::string& spec);

  RankingKind kind() const { return kind_; }
  const RingPtr& ring() const { return ring_; }
  std::string spec() const;

  std::strong_ordering compare(DerVar a, DerVar b) const;
  bool less(DerVar a, DerVar b) const { return compare(a, b) == std::strong_ordering::less; }

 private:
  Ranking() = default;
  RankingKind kind_ = RankingKind::Orderly;
  RingPtr ring_;
  std::vector<std::uint32_t> position_;  // per variable: position within its class
  std::vector<std::uint32_t> block_;     // per variable: block id (0 = lowest)
};

// p split at its leader: p = initial * leader^deg + lower-degree terms.
struct RankDecomposition {
  DerVar leader;
  DiffPoly initial;
  DiffPoly separant;
  std::uint32_t rank_degree = 0;
};

// Leader, initial, separant and leader-degree of p under ranking r.
// Errors when p has no MAIN derivative variable (base/parameter element).
RankDecomposition decompose(const DiffPoly& p, const Ranking& r);

enum class RankOrder { Lower, Same, Higher };

// The rank preorder: base-field/parameter elements lowest, then by leader,
// then by leader degree.
RankOrder compare_rank(const DiffPoly& p, const DiffPoly& q, const Ranking& r);

}  // namespace deltachow
