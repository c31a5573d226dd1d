#include "deltachow/ranking.hpp"

#include <algorithm>
#include <set>

#include "deltachow/error.hpp"

namespace deltachow {

Ranking Ranking::orderly(RingPtr ring) {
  Ranking r;
  r.kind_ = RankingKind::Orderly;
  r.position_.resize(ring->size());
  r.block_.assign(ring->size(), 0);
  for (std::uint32_t i = 0; i < ring->size(); ++i) r.position_[i] = i;
  r.ring_ = std::move(ring);
  return r;
}

Ranking Ranking::elimination(RingPtr ring, const std::vector<std::string>& ascending) {
  Ranking r;
  r.kind_ = RankingKind::Elimination;
  r.position_.assign(ring->size(), 0);
  r.block_.assign(ring->size(), 0);
  std::set<std::uint32_t> seen;
  for (std::uint32_t pos = 0; pos < ascending.size(); ++pos) {
    auto idx = ring->index_of(ascending[pos]);
    if (!idx) throw MathError("unknown_variable", "ranking lists unknown variable " + ascending[pos]);
    if (!seen.insert(*idx).second)
      throw MathError("bad_ranking", "ranking lists " + ascending[pos] + " twice");
    r.position_[*idx] = pos;
  }
  if (seen.size() != ring->size())
    throw MathError("bad_ranking", "elimination ranking must list every ring variable");
  r.ring_ = std::move(ring);
  return r;
}

Ranking Ranking::block(RingPtr ring, const std::vector<std::vector<std::string>>& ascending) {
  Ranking r;
  r.kind_ = RankingKind::Block;
  r.position_.assign(ring->size(), 0);
  r.block_.assign(ring->size(), 0);
  std::set<std::uint32_t> seen;
  for (std::uint32_t b = 0; b < ascending.size(); ++b) {
    for (const auto& name : ascending[b]) {
      auto idx = ring->index_of(name);
      if (!idx) throw MathError("unknown_variable", "ranking lists unknown variable " + name);
      if (!seen.insert(*idx).second)
        throw MathError("bad_ranking", "ranking lists " + name + " twice");
      r.block_[*idx] = b;
      r.position_[*idx] = *idx;  // orderly tie-break inside the block
    }
  }
  if (seen.size() != ring->size())
    throw MathError("bad_ranking", "block ranking must list every ring variable");
  r.ring_ = std::move(ring);
  return r;
}

Ranking Ranking::parse(RingPtr ring, const std::string& spec) {
  if (spec == "orderly" || spec.empty()) return orderly(std::move(ring));
  if (spec.rfind("elim:", 0) == 0) {
    std::vector<std::string> names;
    std::string body = spec.substr(5);
    std::size_t start = 0;
    while (start <= body.size()) {
      std::size_t lt = body.find('<', start);
      names.push_back(body.substr(start, lt == std::string::npos ? lt : lt - start));
      if (lt == std::string::npos) break;
      start = lt + 1;
    }
    return elimination(std::move(ring), names);
  }
  if (spec.rfind("block:", 0) == 0) {
    std::string body = spec.substr(6);
    if (body.size() < 2 || body.front() != '[' || body.back() != ']')
      throw MathError("bad_ranking", "block ranking spec must look like block:[a|b,c]");
    body = body.substr(1, body.size() - 2);
    std::vector<std::vector<std::string>> blocks;
    std::size_t start = 0;
    while (start <= body.size()) {
      std::size_t bar = body.find('|', start);
      std::string group = body.substr(start, bar == std::string::npos ? bar : bar - start);
      std::vector<std::string> names;
      std::size_t gs = 0;
      while (gs <= group.size()) {
        std::size_t comma = group.find(',', gs);
        std::string nm = group.substr(gs, comma == std::string::npos ? comma : comma - gs);
        if (!nm.empty()) names.push_back(nm);
        if (comma == std::string::npos) break;
        gs = comma + 1;
      }
      blocks.push_back(std::move(names));
      if (bar == std::string::npos) break;
      start = bar + 1;
    }
    return block(std::move(ring), blocks);
  }
  throw MathError("bad_ranking", "unrecognized ranking spec: " + spec);
}

std::string Ranking::spec() const {
  switch (kind_) {
    case RankingKind::Orderly:
      return "orderly";
    case RankingKind::Elimination: {
      std::vector<std::uint32_t> order(ring_->size());
      for (std::uint32_t i = 0; i < ring_->size(); ++i) order[i] = i;
      std::sort(order.begin(), order.end(), [&](std::uint32_t a, std::uint32_t b) {
        return position_[a] < position_[b];
      });
      std::string out = "elim:";
      for (std::size_t i = 0; i < order.size(); ++i) {
        if (i) out += "<";
        out += ring_->name(order[i]);
      }
      return out;
    }
    case RankingKind::Block: {
      std::uint32_t nblocks = 0;
      for (auto b : block_) nblocks = std::max(nblocks, b + 1);
      std::string out = "block:[";
      for (std::uint32_t b = 0; b < nblocks; ++b) {
        if (b) out += "|";
        bool first = true;
        for (std::uint32_t i = 0; i < ring_->size(); ++i) {
          if (block_[i] != b) continue;
          if (!first) out += ",";
          out += ring_->name(i);
          first = false;
        }
      }
      return out + "]";
    }
  }
  return {};
}

std::strong_ordering Ranking::compare(DerVar a, DerVar b) const {
  if (a.var >= ring_->size() || b.var >= ring_->size())
    throw MathError("unknown_variable", "derivative variable outside the ring");
  bool ma = ring_->is_main(a.var), mb = ring_->is_main(b.var);
  if (ma != mb) return ma ? std::strong_ordering::greater : std::strong_ordering::less;
  switch (kind_) {
    case RankingKind::Orderly:
      if (a.ord != b.ord) return a.ord <=> b.ord;
      return a.var <=> b.var;
    case RankingKind::Elimination:
      if (position_[a.var] != position_[b.var])
        return position_[a.var] <=> position_[b.var];
      return a.ord <=> b.ord;
    case RankingKind::Block:
      if (block_[a.var] != block_[b.var]) return block_[a.var] <=> block_[b.var];
      if (a.ord != b.ord) return a.ord <=> b.ord;
      return position_[a.var] <=> position_[b.var];
  }
  return std::strong_ordering::equal;
}

RankDecomposition decompose(const DiffPoly& p, const Ranking& r) {
  require_same_ring(p.ring(), r.ring());
  bool found = false;
  DerVar best{};
  for (const auto& t : p.terms()) {
    for (const auto& f : t.mono.factors()) {
      DerVar v = dervar_of(f.key);
      if (!p.ring()->is_main(v.var)) continue;
      if (!found || r.less(best, v)) {
        best = v;
        found = true;
      }
    }
  }
  if (!found)
    throw MathError("no_leader", "polynomial lies in the parameter/base field");
  RankDecomposition d;
  d.leader = best;
  d.rank_degree = p.degree_of(best);
  d.initial = p.coeff_of_power(best, d.rank_degree);
  d.separant = p.partial(best);
  return d;
}

RankOrder compare_rank(const DiffPoly& p, const DiffPoly& q, const Ranking& r) {
  bool pf = !p.has_main_dervar();
  bool qf = !q.has_main_dervar();
  if (pf && qf) return RankOrder::Same;
  if (pf) return RankOrder::Lower;
  if (qf) return RankOrder::Higher;
  RankDecomposition dp = decompose(p, r);
  RankDecomposition dq = decompose(q, r);
  auto c = r.compare(dp.leader, dq.leader);
  if (c == std::strong_ordering::less) return RankOrder::Lower;
  if (c == std::strong_ordering::greater) return RankOrder::Higher;
  if (dp.rank_degree != dq.rank_degree)
    return dp.rank_degree < dq.rank_degree ? RankOrder::Lower : RankOrder::Higher;
  return RankOrder::Same;
}

}  // namespace deltachow
