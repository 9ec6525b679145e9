// Copyright 2026 The derivekit Authors
// SPDX-License-Identifier: Apache-2.0

#include <gtest/gtest.h>

#include <limits>

#include "derivekit/rational.hpp"

using derivekit::Rational;

TEST(Rational, NormalizesSignAndGcd) {
  const Rational r(6, -4);
  EXPECT_EQ(r.num(), -3);
  EXPECT_EQ(r.den(), 2);
  EXPECT_EQ(r.str(), "-3/2");
  EXPECT_EQ(Rational(4, 2).str(), "2");
  EXPECT_THROW(Rational(1, 0), std::invalid_argument);
}

TEST(Rational, Arithmetic) {
  const Rational half(1, 2);
  const Rational third(1, 3);
  EXPECT_EQ(*half.add(third), Rational(5, 6));
  EXPECT_EQ(*half.sub(third), Rational(1, 6));
  EXPECT_EQ(*half.mul(third), Rational(1, 6));
  EXPECT_EQ(*half.div(third), Rational(3, 2));
  EXPECT_EQ(*Rational(2, 3).pow(-2), Rational(9, 4));
  EXPECT_FALSE(Rational(0).pow(-1));
  EXPECT_FALSE(half.div(Rational(0)));
  EXPECT_LT(third, half);
}

TEST(Rational, OverflowIsReported) {
  const Rational big(std::numeric_limits<std::int64_t>::max());
  EXPECT_FALSE(big.add(Rational(1)));
  EXPECT_FALSE(big.mul(Rational(2)));
  EXPECT_FALSE(Rational(2).pow(80));
  EXPECT_TRUE(big.mul(Rational(1, 2)));
}
