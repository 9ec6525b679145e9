// Copyright 2026 The derivekit Authors
// SPDX-License-Identifier: Apache-2.0

#include "derivekit/similarity.hpp"

#include <algorithm>
#include <array>
#include <limits>
#include <span>
#include <stdexcept>
#include <vector>

namespace derivekit {

namespace {

bool is_ascii(std::string_view s) {
  return std::all_of(s.begin(), s.end(), [](char c) { return static_cast<unsigned char>(c) < 0x80; });
}

std::vector<std::uint32_t> decode_utf8(std::string_view s) {
  std::vector<std::uint32_t> out;
  out.reserve(s.size());
  std::size_t i = 0;
  while (i < s.size()) {
    const auto c = static_cast<unsigned char>(s[i]);
    std::size_t len = 0;
    std::uint32_t cp = 0;
    if (c < 0x80) {
      len = 1;
      cp = c;
    } else if ((c & 0xE0) == 0xC0) {
      len = 2;
      cp = c & 0x1F;
    } else if ((c & 0xF0) == 0xE0) {
      len = 3;
      cp = c & 0x0F;
    } else if ((c & 0xF8) == 0xF0) {
      len = 4;
      cp = c & 0x07;
    }
    bool ok = len > 0 && i + len <= s.size();
    for (std::size_t k = 1; ok && k < len; ++k) {
      const auto cc = static_cast<unsigned char>(s[i + k]);
      if ((cc & 0xC0) != 0x80) {
        ok = false;
      } else {
        cp = (cp << 6) | (cc & 0x3F);
      }
    }
    if (!ok) {
      // Lone invalid byte: map into the low surrogate range, which valid
      // UTF-8 never produces.
      out.push_back(0xDC00u + c);
      ++i;
    } else {
      out.push_back(cp);
      i += len;
    }
  }
  return out;
}

/// Both strings as dense symbol ids: bytes for ASCII input, otherwise
/// decoded code points compressed to [0, sigma).
struct Encoded {
  std::vector<std::uint32_t> a;
  std::vector<std::uint32_t> b;
  std::size_t sigma = 0;
};

Encoded encode(std::string_view a, std::string_view b) {
  Encoded e;
  if (is_ascii(a) && is_ascii(b)) {
    e.a.assign(a.begin(), a.end());
    e.b.assign(b.begin(), b.end());
    e.sigma = 128;
    return e;
  }
  e.a = decode_utf8(a);
  e.b = decode_utf8(b);
  std::vector<std::uint32_t> alphabet(e.a);
  alphabet.insert(alphabet.end(), e.b.begin(), e.b.end());
  std::sort(alphabet.begin(), alphabet.end());
  alphabet.erase(std::unique(alphabet.begin(), alphabet.end()), alphabet.end());
  auto remap = [&](std::vector<std::uint32_t>& v) {
    for (auto& c : v) {
      c = static_cast<std::uint32_t>(std::lower_bound(alphabet.begin(), alphabet.end(), c) -
                                     alphabet.begin());
    }
  };
  remap(e.a);
  remap(e.b);
  e.sigma = alphabet.size();
  return e;
}

using Span = std::span<const std::uint32_t>;

// Block-based bit-vector edit distance (Myers 1999, Hyyrö's block
// extension). The shorter string is the pattern, one bit per position.
std::size_t levenshtein_bits(Span text, Span pattern, std::size_t sigma) {
  const std::size_t m = pattern.size();
  if (m == 0) return text.size();
  const std::size_t blocks = (m + 63) / 64;
  std::vector<std::uint64_t> peq(sigma * blocks, 0);
  for (std::size_t i = 0; i < m; ++i) {
    peq[pattern[i] * blocks + i / 64] |= std::uint64_t{1} << (i % 64);
  }
  std::vector<std::uint64_t> pv(blocks, ~std::uint64_t{0});
  std::vector<std::uint64_t> mv(blocks, 0);
  const std::size_t last_bit = (m - 1) % 64;
  std::size_t score = m;

  for (const auto c : text) {
    const std::uint64_t* eq_row = &peq[c * blocks];
    int hin = 1;
    for (std::size_t blk = 0; blk < blocks; ++blk) {
      std::uint64_t eq = eq_row[blk];
      const std::uint64_t p = pv[blk];
      const std::uint64_t mm = mv[blk];
      const std::uint64_t hin_neg = hin < 0 ? 1 : 0;
      const std::uint64_t xv = eq | mm;
      eq |= hin_neg;
      const std::uint64_t xh = (((eq & p) + p) ^ p) | eq;
      std::uint64_t ph = mm | ~(xh | p);
      std::uint64_t mh = p & xh;
      int hout = 0;
      if (blk + 1 < blocks) {
        hout = static_cast<int>(ph >> 63) - static_cast<int>(mh >> 63);
      } else {
        hout = static_cast<int>((ph >> last_bit) & 1) - static_cast<int>((mh >> last_bit) & 1);
      }
      ph <<= 1;
      mh <<= 1;
      mh |= hin_neg;
      if (hin > 0) ph |= 1;
      pv[blk] = mh | ~(xv | ph);
      mv[blk] = ph & xv;
      hin = hout;
    }
    score = static_cast<std::size_t>(static_cast<std::ptrdiff_t>(score) + hin);
  }
  return score;
}

std::size_t damerau_core(Span a, Span b, std::size_t sigma) {
  const std::size_t la = a.size();
  const std::size_t lb = b.size();
  if (la == 0) return lb;
  if (lb == 0) return la;
  const std::size_t inf = la + lb;
  const std::size_t w = lb + 2;
  // Row/column 0 hold the sentinel, row/column 1 the empty-prefix costs.
  std::vector<std::size_t> d((la + 2) * w);
  auto at = [&](std::size_t i, std::size_t j) -> std::size_t& { return d[i * w + j]; };
  at(0, 0) = inf;
  for (std::size_t i = 0; i <= la; ++i) {
    at(i + 1, 0) = inf;
    at(i + 1, 1) = i;
  }
  for (std::size_t j = 0; j <= lb; ++j) {
    at(0, j + 1) = inf;
    at(1, j + 1) = j;
  }
  std::vector<std::size_t> last_row(sigma, 0);
  for (std::size_t i = 1; i <= la; ++i) {
    std::size_t last_match_col = 0;
    for (std::size_t j = 1; j <= lb; ++j) {
      const std::size_t i1 = last_row[b[j - 1]];
      const std::size_t j1 = last_match_col;
      std::size_t cost = 1;
      if (a[i - 1] == b[j - 1]) {
        cost = 0;
        last_match_col = j;
      }
      at(i + 1, j + 1) = std::min({at(i, j) + cost, at(i + 1, j) + 1, at(i, j + 1) + 1,
                                   at(i1, j1) + (i - i1 - 1) + 1 + (j - j1 - 1)});
    }
    last_row[a[i - 1]] = i;
  }
  return at(la + 1, lb + 1);
}

std::size_t osa_core(Span a, Span b) {
  const std::size_t la = a.size();
  const std::size_t lb = b.size();
  std::vector<std::size_t> prev2(lb + 1);
  std::vector<std::size_t> prev(lb + 1);
  std::vector<std::size_t> cur(lb + 1);
  for (std::size_t j = 0; j <= lb; ++j) prev[j] = j;
  for (std::size_t i = 1; i <= la; ++i) {
    cur[0] = i;
    for (std::size_t j = 1; j <= lb; ++j) {
      const std::size_t cost = a[i - 1] == b[j - 1] ? 0 : 1;
      cur[j] = std::min({prev[j] + 1, cur[j - 1] + 1, prev[j - 1] + cost});
      if (i > 1 && j > 1 && a[i - 1] == b[j - 2] && a[i - 2] == b[j - 1]) {
        cur[j] = std::min(cur[j], prev2[j - 2] + 1);
      }
    }
    std::swap(prev2, prev);
    std::swap(prev, cur);
  }
  return prev[lb];
}

double jaro_core(Span a, Span b) {
  const std::size_t la = a.size();
  const std::size_t lb = b.size();
  if (la == 0 && lb == 0) return 1.0;
  if (la == 0 || lb == 0) return 0.0;
  const std::size_t half = std::max(la, lb) / 2;
  const std::size_t window = half > 0 ? half - 1 : 0;
  std::vector<char> a_flag(la, 0);
  std::vector<char> b_flag(lb, 0);
  std::size_t m = 0;
  for (std::size_t i = 0; i < la; ++i) {
    const std::size_t lo = i > window ? i - window : 0;
    const std::size_t hi = std::min(i + window, lb - 1);
    for (std::size_t j = lo; j <= hi && lo <= hi; ++j) {
      if (!b_flag[j] && b[j] == a[i]) {
        a_flag[i] = b_flag[j] = 1;
        ++m;
        break;
      }
    }
  }
  if (m == 0) return 0.0;
  std::size_t half_swaps = 0;
  std::size_t k = 0;
  for (std::size_t i = 0; i < la; ++i) {
    if (!a_flag[i]) continue;
    while (!b_flag[k]) ++k;
    if (a[i] != b[k]) ++half_swaps;
    ++k;
  }
  const double md = static_cast<double>(m);
  const double t = static_cast<double>(half_swaps) / 2.0;
  return (md / static_cast<double>(la) + md / static_cast<double>(lb) + (md - t) / md) / 3.0;
}

std::size_t common_prefix(std::string_view a, std::string_view b, std::size_t cap) {
  const auto ea = decode_utf8(a);
  const auto eb = decode_utf8(b);
  std::size_t l = 0;
  while (l < cap && l < ea.size() && l < eb.size() && ea[l] == eb[l]) ++l;
  return l;
}

}  // namespace

std::size_t code_point_count(std::string_view s) {
  std::size_t n = 0;
  for (char c : s) {
    if ((static_cast<unsigned char>(c) & 0xC0) != 0x80) ++n;
  }
  return n;
}

std::size_t levenshtein(std::string_view a, std::string_view b) {
  if (a == b) return 0;
  const auto e = encode(a, b);
  if (e.a.size() >= e.b.size()) return levenshtein_bits(e.a, e.b, e.sigma);
  return levenshtein_bits(e.b, e.a, e.sigma);
}

std::size_t damerau_levenshtein(std::string_view a, std::string_view b) {
  if (a == b) return 0;
  const auto e = encode(a, b);
  return damerau_core(e.a, e.b, e.sigma);
}

std::size_t osa_distance(std::string_view a, std::string_view b) {
  if (a == b) return 0;
  const auto e = encode(a, b);
  return osa_core(e.a, e.b);
}

std::size_t hamming(std::string_view a, std::string_view b) {
  if (a == b) return 0;
  const auto e = encode(a, b);
  const std::size_t common = std::min(e.a.size(), e.b.size());
  std::size_t d = std::max(e.a.size(), e.b.size()) - common;
  for (std::size_t i = 0; i < common; ++i) d += e.a[i] != e.b[i] ? 1 : 0;
  return d;
}

double jaro(std::string_view a, std::string_view b) {
  if (a == b) return 1.0;
  const auto e = encode(a, b);
  return jaro_core(e.a, e.b);
}

double jaro_winkler(std::string_view a, std::string_view b, double p, std::size_t cap,
                    double boost_threshold) {
  if (!(p >= 0.0 && p <= 0.25)) {
    throw std::invalid_argument("Jaro-Winkler scaling p must lie in [0, 0.25]");
  }
  const double sim = jaro(a, b);
  if (!(sim > boost_threshold)) return sim;
  const auto l = static_cast<double>(common_prefix(a, b, cap));
  return sim + l * p * (1.0 - sim);
}

double distance(const Measure& m, std::string_view a, std::string_view b) {
  switch (m.kind) {
    case MeasureKind::Levenshtein:
      return static_cast<double>(levenshtein(a, b));
    case MeasureKind::DamerauLevenshtein:
      return static_cast<double>(m.damerau == DamerauVariant::Unrestricted
                                     ? damerau_levenshtein(a, b)
                                     : osa_distance(a, b));
    case MeasureKind::Hamming:
      return static_cast<double>(hamming(a, b));
    case MeasureKind::Jaro:
      return 1.0 - jaro(a, b);
    case MeasureKind::JaroWinkler:
      return 1.0 - jaro_winkler(a, b, m.jw_p, m.prefix_cap, m.jw_boost_threshold);
  }
  return 0.0;
}

MeasureKind parse_measure_kind(std::string_view name) {
  if (name == "levenshtein") return MeasureKind::Levenshtein;
  if (name == "damerau" || name == "damerau-levenshtein") return MeasureKind::DamerauLevenshtein;
  if (name == "hamming") return MeasureKind::Hamming;
  if (name == "jaro") return MeasureKind::Jaro;
  if (name == "jaro-winkler") return MeasureKind::JaroWinkler;
  throw std::invalid_argument("unknown measure '" + std::string(name) + "'");
}

std::string_view measure_name(MeasureKind kind) {
  switch (kind) {
    case MeasureKind::Levenshtein:
      return "levenshtein";
    case MeasureKind::DamerauLevenshtein:
      return "damerau";
    case MeasureKind::Hamming:
      return "hamming";
    case MeasureKind::Jaro:
      return "jaro";
    case MeasureKind::JaroWinkler:
      return "jaro-winkler";
  }
  return "unknown";
}

}  // namespace derivekit
