#include "deltachow/ring.hpp"

#include <set>

#include "deltachow/error.hpp"

namespace deltachow {

RingPtr RingContext::make(FieldKind field, std::vector<std::string> names,
                          std::vector<VarKind> kinds) {
  if (names.size() != kinds.size())
    throw MathError("internal", "ring names/kinds size mismatch");
  std::set<std::string> seen;
  for (const auto& n : names) {
    if (n.empty()) throw MathError("bad_ring", "empty variable name");
    if (!seen.insert(n).second)
      throw MathError("bad_ring", "duplicate variable name: " + n);
    if (field == FieldKind::RationalFunctionsT && n == "t")
      throw MathError("bad_ring",
                      "'t' is the base-field variable over Q(t) and cannot be "
                      "declared as a ring variable");
  }
  auto r = std::shared_ptr<RingContext>(new RingContext());
  r->field_ = field;
  r->names_ = std::move(names);
  r->kinds_ = std::move(kinds);
  return r;
}

RingPtr RingContext::make(FieldKind field, std::vector<std::string> names) {
  std::vector<VarKind> kinds(names.size(), VarKind::Main);
  return make(field, std::move(names), std::move(kinds));
}

std::optional<std::uint32_t> RingContext::index_of(const std::string& name) const {
  for (std::uint32_t i = 0; i < names_.size(); ++i)
    if (names_[i] == name) return i;
  return std::nullopt;
}

std::vector<std::uint32_t> RingContext::main_vars() const {
  std::vector<std::uint32_t> out;
  for (std::uint32_t i = 0; i < names_.size(); ++i)
    if (is_main(i)) out.push_back(i);
  return out;
}

std::vector<std::uint32_t> RingContext::parameter_vars() const {
  std::vector<std::uint32_t> out;
  for (std::uint32_t i = 0; i < names_.size(); ++i)
    if (!is_main(i)) out.push_back(i);
  return out;
}

std::size_t RingContext::main_count() const {
  std::size_t n = 0;
  for (auto k : kinds_)
    if (k == VarKind::Main) ++n;
  return n;
}

bool RingContext::same_as(const RingContext& o) const {
  return field_ == o.field_ && names_ == o.names_ && kinds_ == o.kinds_;
}

RingPtr RingContext::extended(std::vector<std::string> names,
                              std::vector<VarKind> kinds) const {
  std::vector<std::string> all = names_;
  std::vector<VarKind> allk = kinds_;
  all.insert(all.end(), names.begin(), names.end());
  allk.insert(allk.end(), kinds.begin(), kinds.end());
  return make(field_, std::move(all), std::move(allk));
}

std::string RingContext::dervar_name(DerVar v) const {
  const std::string& base = names_.at(v.var);
  if (v.ord == 0) return base;
  if (v.ord <= 3) return base + std::string(v.ord, '\'');
  return "d(" + base + "," + std::to_string(v.ord) + ")";
}

void require_same_ring(const RingPtr& a, const RingPtr& b) {
  if (a.get() == b.get()) return;
  if (!a || !b || !a->same_as(*b))
    throw MathError("ring_mismatch", "operands live in different rings");
}

}  // namespace deltachow
