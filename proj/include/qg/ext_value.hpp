#pragma once

#include <compare>
#include <cstdint>
#include <limits>
#include <string>

#include "qg/error.hpp"

namespace qg {

using Weight = std::int64_t;

// Element of Z u {-inf, +inf}. Finite values are confined to [-2^62, 2^62];
// leaving that range, or adding opposite infinities, throws.
class ExtValue {
 public:
  static constexpr std::int64_t kFiniteLimit = std::int64_t{1} << 62;

  constexpr ExtValue() = default;
  constexpr ExtValue(std::int64_t v) : v_(v) {  // NOLINT(google-explicit-constructor)
    if (v > kFiniteLimit || v < -kFiniteLimit) throw Error(ErrorCode::Overflow, "finite value out of range");
  }

  static constexpr ExtValue pos_inf() { return ExtValue(kPos, Raw{}); }
  static constexpr ExtValue neg_inf() { return ExtValue(kNeg, Raw{}); }

  constexpr bool is_finite() const { return v_ != kPos && v_ != kNeg; }
  constexpr bool is_pos_inf() const { return v_ == kPos; }
  constexpr bool is_neg_inf() const { return v_ == kNeg; }

  // Throws InvalidArgument on an infinite value.
  std::int64_t finite() const;
  constexpr std::int64_t raw() const { return v_; }

  constexpr auto operator<=>(const ExtValue&) const = default;

  std::string to_string() const;

  friend inline ExtValue operator+(ExtValue a, ExtValue b);
  friend inline ExtValue operator-(ExtValue a);

 private:
  struct Raw {};
  static constexpr std::int64_t kPos = std::numeric_limits<std::int64_t>::max();
  static constexpr std::int64_t kNeg = std::numeric_limits<std::int64_t>::min();
  constexpr ExtValue(std::int64_t v, Raw) : v_(v) {}

  std::int64_t v_ = 0;
};

inline ExtValue operator+(ExtValue a, ExtValue b) {
  if (a.v_ == ExtValue::kPos) {
    if (b.v_ == ExtValue::kNeg) throw Error(ErrorCode::InfinityConflict, "(+inf) + (-inf) is undefined");
    return a;
  }
  if (a.v_ == ExtValue::kNeg) {
    if (b.v_ == ExtValue::kPos) throw Error(ErrorCode::InfinityConflict, "(-inf) + (+inf) is undefined");
    return a;
  }
  if (!b.is_finite()) return b;
  std::int64_t s = 0;
  if (__builtin_add_overflow(a.v_, b.v_, &s) || s > ExtValue::kFiniteLimit || s < -ExtValue::kFiniteLimit) {
    throw Error(ErrorCode::Overflow, "finite sum out of range");
  }
  return ExtValue(s, ExtValue::Raw{});
}

inline ExtValue operator-(ExtValue a) {
  if (a.v_ == ExtValue::kPos) return ExtValue::neg_inf();
  if (a.v_ == ExtValue::kNeg) return ExtValue::pos_inf();
  return ExtValue(-a.v_, ExtValue::Raw{});
}

inline ExtValue& operator+=(ExtValue& a, ExtValue b) { return a = a + b; }

}  // namespace qg
