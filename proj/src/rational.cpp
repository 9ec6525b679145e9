// Copyright 2026 The derivekit Authors
// SPDX-License-Identifier: Apache-2.0

#include "derivekit/rational.hpp"

#include <limits>
#include <stdexcept>

namespace derivekit {

namespace {

i128 gcd128(i128 a, i128 b) {
  if (a < 0) a = -a;
  if (b < 0) b = -b;
  while (b != 0) {
    const i128 t = a % b;
    a = b;
    b = t;
  }
  return a;
}

bool fits(i128 v) {
  return v >= std::numeric_limits<std::int64_t>::min() &&
         v <= std::numeric_limits<std::int64_t>::max();
}

}  // namespace

Rational::Rational(std::int64_t num, std::int64_t den) {
  if (den == 0) throw std::invalid_argument("rational with zero denominator");
  auto r = make(num, den);
  if (!r) throw std::overflow_error("rational out of range");
  *this = *r;
}

std::optional<Rational> Rational::make(i128 num, i128 den) {
  if (den == 0) return std::nullopt;
  if (den < 0) {
    num = -num;
    den = -den;
  }
  const i128 g = gcd128(num, den);
  if (g > 1) {
    num /= g;
    den /= g;
  }
  if (num == 0) den = 1;
  if (!fits(num) || !fits(den)) return std::nullopt;
  Rational r;
  r.num_ = static_cast<std::int64_t>(num);
  r.den_ = static_cast<std::int64_t>(den);
  return r;
}

std::optional<Rational> Rational::add(const Rational& o) const {
  return make(static_cast<i128>(num_) * o.den_ + static_cast<i128>(o.num_) * den_,
              static_cast<i128>(den_) * o.den_);
}

std::optional<Rational> Rational::sub(const Rational& o) const {
  return make(static_cast<i128>(num_) * o.den_ - static_cast<i128>(o.num_) * den_,
              static_cast<i128>(den_) * o.den_);
}

std::optional<Rational> Rational::mul(const Rational& o) const {
  return make(static_cast<i128>(num_) * o.num_, static_cast<i128>(den_) * o.den_);
}

std::optional<Rational> Rational::div(const Rational& o) const {
  if (o.num_ == 0) return std::nullopt;
  return make(static_cast<i128>(num_) * o.den_, static_cast<i128>(den_) * o.num_);
}

std::optional<Rational> Rational::neg() const { return make(-static_cast<i128>(num_), den_); }

std::optional<Rational> Rational::pow(std::int64_t exponent) const {
  if (exponent < 0) {
    if (num_ == 0) return std::nullopt;
    auto inv = Rational(1).div(*this);
    if (!inv || exponent == std::numeric_limits<std::int64_t>::min()) return std::nullopt;
    return inv->pow(-exponent);
  }
  std::optional<Rational> acc = Rational(1);
  Rational base = *this;
  while (exponent > 0) {
    if (exponent & 1) {
      acc = acc->mul(base);
      if (!acc) return std::nullopt;
    }
    exponent >>= 1;
    if (exponent > 0) {
      auto sq = base.mul(base);
      if (!sq) return std::nullopt;
      base = *sq;
    }
  }
  return acc;
}

std::string Rational::str() const {
  if (den_ == 1) return std::to_string(num_);
  return std::to_string(num_) + "/" + std::to_string(den_);
}

std::strong_ordering operator<=>(const Rational& a, const Rational& b) {
  const i128 lhs = static_cast<i128>(a.num_) * b.den_;
  const i128 rhs = static_cast<i128>(b.num_) * a.den_;
  if (lhs < rhs) return std::strong_ordering::less;
  if (lhs > rhs) return std::strong_ordering::greater;
  return std::strong_ordering::equal;
}

}  // namespace derivekit
