// Copyright 2026 The derivekit Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstddef>
#include <cstdint>
#include <string>
#include <string_view>

namespace derivekit {

/// String measures over Unicode code points. UTF-8 input is decoded;
/// invalid bytes count as one code point each.

enum class MeasureKind : std::uint8_t { Levenshtein, DamerauLevenshtein, Hamming, Jaro, JaroWinkler };

enum class DamerauVariant : std::uint8_t { Unrestricted, OptimalStringAlignment };

struct Measure {
  MeasureKind kind = MeasureKind::DamerauLevenshtein;
  /// Jaro-Winkler prefix scale, must lie in [0, 0.25].
  double jw_p = 0.1;
  std::size_t prefix_cap = 4;
  DamerauVariant damerau = DamerauVariant::Unrestricted;
  /// The Winkler prefix boost applies only when sim_J exceeds this value.
  /// 0 boosts unconditionally; 0.7 reproduces the Jellyfish convention.
  double jw_boost_threshold = 0.0;
};

std::size_t levenshtein(std::string_view a, std::string_view b);
/// Unrestricted (true) Damerau-Levenshtein distance.
std::size_t damerau_levenshtein(std::string_view a, std::string_view b);
/// Optimal string alignment distance (restricted Damerau-Levenshtein).
std::size_t osa_distance(std::string_view a, std::string_view b);
/// Substitutions over the common length plus the length difference.
std::size_t hamming(std::string_view a, std::string_view b);
/// Jaro similarity in [0, 1]; two empty strings are identical (1).
double jaro(std::string_view a, std::string_view b);
/// Throws std::invalid_argument when p is outside [0, 0.25].
double jaro_winkler(std::string_view a, std::string_view b, double p = 0.1, std::size_t cap = 4,
                    double boost_threshold = 0.0);

/// M(a, b) >= 0; Jaro kinds return 1 - similarity.
double distance(const Measure& m, std::string_view a, std::string_view b);

/// Accepts levenshtein, damerau (damerau-levenshtein), hamming, jaro,
/// jaro-winkler. Throws std::invalid_argument otherwise.
MeasureKind parse_measure_kind(std::string_view name);
std::string_view measure_name(MeasureKind kind);
[[nodiscard]] inline bool is_edit_distance(MeasureKind k) {
  return k == MeasureKind::Levenshtein || k == MeasureKind::DamerauLevenshtein ||
         k == MeasureKind::Hamming;
}

/// Number of Unicode code points in a UTF-8 string.
std::size_t code_point_count(std::string_view s);

}  // namespace derivekit
