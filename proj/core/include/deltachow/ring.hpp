#pragma once

#include <cstdint>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "deltachow/coef.hpp"

namespace deltachow {

// MAIN variables are differential unknowns; PARAMETER variables are
// differential indeterminates adjoined to the base field. Parameters are
// never chosen as leaders and rank below every main derivative.
enum class VarKind : unsigned char { Main, Parameter };

// A derivative variable delta^k y_j, identified by ring variable index and order.
struct DerVar {
  std::uint32_t var = 0;
  std::uint32_t ord = 0;
  bool operator==(const DerVar&) const = default;
};

// Packed key: (var_index, order) lexicographic as a single integer.
using VarKey = std::uint32_t;
inline constexpr std::uint32_t kOrderBits = 12;
inline constexpr std::uint32_t kMaxOrder = (1u << kOrderBits) - 1;

inline VarKey key_of(DerVar v) { return (v.var << kOrderBits) | v.ord; }
inline DerVar dervar_of(VarKey k) { return DerVar{k >> kOrderBits, k & kMaxOrder}; }

class RingContext;
using RingPtr = std::shared_ptr<const RingContext>;

// Immutable declaration of the differential polynomial ring: named variables,
// MAIN/PARAMETER partition, and the coefficient field.
class RingContext {
 public:
  static RingPtr make(FieldKind field, std::vector<std::string> names,
                      std::vector<VarKind> kinds);
  // All-main convenience constructor.
  static RingPtr make(FieldKind field, std::vector<std::string> names);

  FieldKind field() const { return field_; }
  std::size_t size() const { return names_.size(); }
  const std::string& name(std::uint32_t i) const { return names_[i]; }
  VarKind kind(std::uint32_t i) const { return kinds_[i]; }
  bool is_main(std::uint32_t i) const { return kinds_[i] == VarKind::Main; }
  std::optional<std::uint32_t> index_of(const std::string& name) const;
  std::vector<std::uint32_t> main_vars() const;
  std::vector<std::uint32_t> parameter_vars() const;
  std::size_t main_count() const;

  // Structural identity; rings compare equal iff field, names and kinds agree.
  bool same_as(const RingContext& o) const;

  // New ring with extra variables appended; existing indices are preserved.
  RingPtr extended(std::vector<std::string> names, std::vector<VarKind> kinds) const;

  std::string dervar_name(DerVar v) const;  // e.g. y1'' or d(y1,5)

 private:
  RingContext() = default;
  FieldKind field_ = FieldKind::Rationals;
  std::vector<std::string> names_;
  std::vector<VarKind> kinds_;
};

void require_same_ring(const RingPtr& a, const RingPtr& b);

}  // namespace deltachow
