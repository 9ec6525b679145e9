// Copyright 2026 The derivekit Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <compare>
#include <cstdint>
#include <optional>
#include <string>

namespace derivekit {

/// 128-bit intermediate for overflow-checked arithmetic.
__extension__ typedef __int128 i128;

/// Exact rational number over 64-bit integers, always stored in lowest
/// terms with a positive denominator. Arithmetic is checked: every
/// operation that could overflow returns std::nullopt instead.
class Rational {
 public:
  constexpr Rational() = default;
  constexpr Rational(std::int64_t value) : num_(value) {}  // NOLINT implicit

  /// Throws std::invalid_argument on a zero denominator and
  /// std::overflow_error when normalization overflows (INT64_MIN cases).
  Rational(std::int64_t num, std::int64_t den);

  [[nodiscard]] std::int64_t num() const { return num_; }
  [[nodiscard]] std::int64_t den() const { return den_; }
  [[nodiscard]] bool is_integer() const { return den_ == 1; }
  [[nodiscard]] bool is_zero() const { return num_ == 0; }
  [[nodiscard]] bool is_one() const { return num_ == 1 && den_ == 1; }
  [[nodiscard]] bool is_negative() const { return num_ < 0; }

  [[nodiscard]] std::optional<Rational> add(const Rational& o) const;
  [[nodiscard]] std::optional<Rational> sub(const Rational& o) const;
  [[nodiscard]] std::optional<Rational> mul(const Rational& o) const;
  [[nodiscard]] std::optional<Rational> div(const Rational& o) const;
  [[nodiscard]] std::optional<Rational> neg() const;
  /// Integer power; negative exponents invert. nullopt on 0^-k or overflow.
  [[nodiscard]] std::optional<Rational> pow(std::int64_t exponent) const;

  /// "p" for integers, "p/q" otherwise.
  [[nodiscard]] std::string str() const;

  friend bool operator==(const Rational&, const Rational&) = default;
  friend std::strong_ordering operator<=>(const Rational& a, const Rational& b);

 private:
  static std::optional<Rational> make(i128 num, i128 den);

  std::int64_t num_ = 0;
  std::int64_t den_ = 1;
};

}  // namespace derivekit
