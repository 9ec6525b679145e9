// Copyright 2026 The derivekit Authors
// SPDX-License-Identifier: Apache-2.0

// Acceptance driver. Prints one PASS, FAIL or SKIP line per criterion and
// exits non-zero when any criterion fails.
//
// Criteria 2 and 3 need the published dataset. Point DERIVEKIT_PHYSAI_DS1
// at its TSV to run them; otherwise they SKIP after checking the census
// machinery on a synthetic fixture with the same cell counts.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <map>
#include <random>
#include <string>
#include <vector>

#include "derivekit/eval.hpp"
#include "derivekit/generator.hpp"
#include "derivekit/knowledge_base.hpp"
#include "derivekit/similarity.hpp"
#include "oracles.hpp"

using namespace derivekit;

namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t0) {
  return std::chrono::duration<double>(Clock::now() - t0).count();
}

int failures = 0;

void report(int id, const char* status, const std::string& detail) {
  if (std::string(status) == "FAIL") ++failures;
  std::printf("criterion %d: %s  %s\n", id, status, detail.c_str());
  std::fflush(stdout);
}

std::string fmt(const char* f, auto... args) {
  char buf[512];
  std::snprintf(buf, sizeof buf, f, args...);
  return buf;
}

// ---------------------------------------------------------------- metrics

void criterion1() {
  const auto t0 = Clock::now();
  std::mt19937_64 rng(20261018);
  constexpr std::size_t kPairs = 100000;
  std::size_t bad[6] = {0, 0, 0, 0, 0, 0};
  Measure jaro_m;
  jaro_m.kind = MeasureKind::Jaro;
  Measure jw_m;
  jw_m.kind = MeasureKind::JaroWinkler;
  for (std::size_t i = 0; i < kPairs; ++i) {
    const auto a = oracle::random_string(rng, 12);
    const auto b = oracle::random_string(rng, 12);
    bad[0] += levenshtein(a, b) != oracle::levenshtein(a, b);
    bad[1] += damerau_levenshtein(a, b) != oracle::damerau(a, b);
    bad[2] += osa_distance(a, b) != oracle::osa(a, b);
    bad[3] += hamming(a, b) != oracle::hamming(a, b);
    bad[4] += jaro(a, b) != oracle::jaro(a, b) || distance(jaro_m, a, b) != 1.0 - oracle::jaro(a, b);
    const double jw = oracle::jaro_winkler(a, b, 0.1, 4);
    bad[5] += jaro_winkler(a, b) != jw || distance(jw_m, a, b) != 1.0 - jw;
  }
  const double secs = seconds_since(t0);
  std::size_t total = 0;
  for (auto x : bad) total += x;
  const auto detail = fmt(
      "%zu pairs, mismatches lev=%zu dl=%zu osa=%zu hamming=%zu jaro=%zu jw=%zu, %.1fs", kPairs,
      bad[0], bad[1], bad[2], bad[3], bad[4], bad[5], secs);
  report(1, total == 0 && secs < 60.0 ? "PASS" : "FAIL", detail);
}

// ---------------------------------------------------------------- dataset

const std::map<std::pair<std::string, std::string>, std::size_t> kCells = {
    {{"integrative", "equation-state"}, 76}, {{"consequent", "self-state"}, 86},
    {{"consequent", "symbol-state"}, 31},    {{"consequent", "equation-state"}, 100},
    {{"terminal", "self-state"}, 20},        {{"terminal", "symbol-state"}, 18},
    {{"terminal", "equation-state"}, 37},
};

bool census_matches(const Census& c, std::string& why) {
  if (c.records != 368) why += fmt("records=%zu ", c.records);
  const std::map<std::string, std::size_t> types = {
      {"integrative", 76}, {"consequent", 217}, {"terminal", 75}};
  for (const auto& [t, n] : types) {
    const auto it = c.by_state_type.find(t);
    const std::size_t got = it == c.by_state_type.end() ? 0 : it->second;
    if (got != n) why += fmt("%s=%zu ", t.c_str(), got);
  }
  for (const auto& [k, n] : kCells) {
    const auto it = c.cells.find(k);
    const std::size_t got = it == c.cells.end() ? 0 : it->second;
    if (got != n) why += fmt("%s/%s=%zu ", k.first.c_str(), k.second.c_str(), got);
  }
  std::size_t nonempty = 0;
  for (const auto& [k, n] : c.cells) nonempty += n > 0;
  if (nonempty != kCells.size()) why += fmt("nonempty_cells=%zu ", nonempty);
  return why.empty();
}

// Synthetic sequence with the published cell counts, laid out by action
// pattern so categorize() must reproduce the labels: one integrative, every
// consequent, then 75 (terminal, integrative) pairs.
DerivationSequence census_fixture() {
  DerivationSequence seq;
  auto add = [&](const char* action, const char* category) {
    DerivationRecord r;
    r.action = action;
    r.action_type = category;
    seq.records.push_back(r);
  };
  struct Kind {
    const char* action;
    const char* category;
    int consequent;
    int terminal;
  };
  const Kind kinds[] = {{"expand_rhs", "self-state", 86, 20},
                        {"divide_rhs_by_symbol", "symbol-state", 31, 18},
                        {"substitute_equation", "equation-state", 100, 37}};
  add("consider_kb_equation", "equation-state");
  for (const auto& k : kinds) {
    for (int n = 0; n < k.consequent; ++n) add(k.action, k.category);
  }
  for (const auto& k : kinds) {
    for (int n = 0; n < k.terminal; ++n) {
      add(k.action, k.category);
      add("consider_kb_equation", "equation-state");
    }
  }
  return categorize(seq);
}

void criteria2and3() {
  const char* path = std::getenv("DERIVEKIT_PHYSAI_DS1");
  if (path == nullptr || *path == '\0') {
    const auto fixture = census_fixture();
    std::string why;
    const bool ok = census_matches(census(fixture), why);
    report(2, "SKIP", "DERIVEKIT_PHYSAI_DS1 not set; the published dataset is needed");
    if (ok) {
      report(3, "SKIP",
             "DERIVEKIT_PHYSAI_DS1 not set; census machinery reproduces the cell counts on a "
             "synthetic fixture");
    } else {
      report(3, "FAIL", "census fixture mismatch: " + why);
    }
    return;
  }
  DerivationSequence seq;
  try {
    seq = load_dataset(path);
  } catch (const std::exception& e) {
    report(2, "FAIL", e.what());
    report(3, "FAIL", e.what());
    return;
  }

  struct Want {
    MeasureKind kind;
    double value;
    double tol;
  };
  const Want wants[] = {{MeasureKind::Levenshtein, 5, 0},
                        {MeasureKind::DamerauLevenshtein, 5, 0},
                        {MeasureKind::Hamming, 224, 0},
                        {MeasureKind::Jaro, 0.1643, 0.0005},
                        {MeasureKind::JaroWinkler, 0.0986, 0.0005}};
  bool ok2 = true;
  std::string detail;
  for (const auto& w : wants) {
    Measure m;
    m.kind = w.kind;
    const double got = epsilon_low(seq, m);
    const bool hit = std::fabs(got - w.value) <= w.tol;
    ok2 = ok2 && hit;
    detail += fmt("%s=%.4f%s ", std::string(measure_name(w.kind)).c_str(), got, hit ? "" : "(!)");
  }
  report(2, ok2 ? "PASS" : "FAIL", detail);

  const auto c = census(seq);
  std::string why;
  census_matches(c, why);
  if (c.text.min != 52 || c.text.max != 5476) why += fmt("text=%zu..%zu ", c.text.min, c.text.max);
  if (c.latex.min != 56 || c.latex.max != 6318) {
    why += fmt("latex=%zu..%zu ", c.latex.min, c.latex.max);
  }
  if (std::fabs(c.text.mean - 495) > 1) why += fmt("text_mean=%.2f ", c.text.mean);
  if (std::fabs(c.latex.mean - 582) > 1) why += fmt("latex_mean=%.2f ", c.latex.mean);
  report(3, why.empty() ? "PASS" : "FAIL",
         why.empty() ? fmt("368 records, means %.1f/%.1f", c.text.mean, c.latex.mean) : why);
}

// ---------------------------------------------------------- generated data

struct Corpus {
  std::vector<DerivationSequence> seqs;
  std::vector<EquationState> seeds;
  std::size_t stalled = 0;
};

Corpus build_corpus(std::size_t count) {
  Corpus c;
  c.seeds = load_kb_file(std::string(DERIVEKIT_DATA_DIR) + "/seeds.kb");
  std::mt19937_64 rng(4242);
  std::uniform_int_distribution<std::size_t> len(10, 50);
  const double branch[] = {0.0, 0.1, 0.2, 0.3, 0.5};
  std::uint64_t seed = 1;
  while (c.seqs.size() < count) {
    GenConfig g;
    g.seeds = c.seeds;
    g.length = len(rng);
    g.branch_p = branch[c.seqs.size() % 5];
    g.rng = seed++;
    try {
      c.seqs.push_back(generate(g, builtin_action_set()).to_sequence());
    } catch (const GenerationStalled&) {
      ++c.stalled;
    }
  }
  return c;
}

std::vector<EvalReport> evaluate_all(const Corpus& c, MeasureKind kind, double eta, int jobs = 0,
                                     std::size_t limit = SIZE_MAX) {
  EvalConfig cfg;
  cfg.measure.kind = kind;
  cfg.eta = eta;
  cfg.jobs = jobs;
  std::vector<EvalReport> out;
  const auto n = std::min(limit, c.seqs.size());
  out.reserve(n);
  for (std::size_t i = 0; i < n; ++i) {
    out.push_back(evaluate(c.seqs[i], builtin_action_set(), c.seeds, cfg));
  }
  return out;
}

// Subset size for the checks that go beyond criteria 4 and 5.
constexpr std::size_t kSubset = 25;

// Terminal by the action sequence alone: s_{i+1} is integrative and s_i
// was not produced by consider_kb_equation.
bool is_terminal_unit(const DerivationSequence& s, std::size_t i) {
  return i < s.records.size() && is_consider_kb(s.records[i].action) &&
         !is_consider_kb(s.records[i - 1].action);
}

struct Monotone {
  std::size_t runs = 0;
  std::size_t violations = 0;
  void check(const std::vector<EvalReport>& eta0, const std::vector<EvalReport>& eta1) {
    for (std::size_t i = 0; i < eta0.size(); ++i) {
      ++runs;
      violations += eta1[i].accuracy() < eta0[i].accuracy();
    }
  }
};

}  // namespace

int main() {
  criterion1();
  criteria2and3();

  const auto t4 = Clock::now();
  const auto corpus = build_corpus(100);
  Monotone mono;

  // Criterion 4 under Damerau-Levenshtein.
  const auto dl0 = evaluate_all(corpus, MeasureKind::DamerauLevenshtein, 0);
  const double secs4 = seconds_since(t4);
  {
    std::size_t units = 0;
    std::size_t unreachable = 0;
    std::size_t unique = 0;
    std::size_t unique_ok = 0;
    std::size_t failed = 0;
    std::map<std::string, std::size_t> labels;
    std::size_t min_len = SIZE_MAX;
    std::size_t max_len = 0;
    for (std::size_t k = 0; k < dl0.size(); ++k) {
      min_len = std::min(min_len, corpus.seqs[k].records.size());
      max_len = std::max(max_len, corpus.seqs[k].records.size());
      for (const auto& u : dl0[k].units) {
        ++units;
        unreachable += u.end_distance != 0.0;
        if (u.state_type != "terminal" && u.zero_mids == 1) {
          ++unique;
          unique_ok += u.success;
        }
        if (!u.success) {
          ++failed;
          ++labels[u.failure];
        }
      }
    }
    const double acc = unique == 0 ? 0.0 : static_cast<double>(unique_ok) / static_cast<double>(unique);
    const std::size_t unclassified = labels.count(std::string(kUnclassified)) != 0
                                         ? labels.at(std::string(kUnclassified))
                                         : 0;
    auto count = [&](std::string_view l) {
      const auto it = labels.find(std::string(l));
      return it == labels.end() ? std::size_t{0} : it->second;
    };
    const bool ok = corpus.seqs.size() >= 100 && min_len >= 10 && max_len <= 50 &&
                    unreachable == 0 && acc >= 0.90 && unclassified == 0 && secs4 < 600.0;
    report(4, ok ? "PASS" : "FAIL",
           fmt("%zu derivations (len %zu..%zu), %zu units, reachability %zu/%zu, unique-minimizer "
               "accuracy %.3f (%zu/%zu), failures %zu: terminal=%zu repeating=%zu multiple=%zu "
               "unclassified=%zu, %.1fs",
               corpus.seqs.size(), min_len, max_len, units, units - unreachable, units, acc,
               unique_ok, unique, failed, count(kTerminalState), count(kRepeatingEquation),
               count(kMultiplePathways), unclassified, secs4));
  }
  mono.check(dl0, evaluate_all(corpus, MeasureKind::DamerauLevenshtein, 1));

  // Criterion 5 under the edit-distance measures.
  {
    std::size_t terminal = 0;
    std::size_t wrong = 0;
    std::size_t mislabelled = 0;
    for (auto kind : {MeasureKind::Levenshtein, MeasureKind::DamerauLevenshtein,
                      MeasureKind::Hamming}) {
      const auto r0 = kind == MeasureKind::DamerauLevenshtein ? dl0 : evaluate_all(corpus, kind, 0);
      if (kind != MeasureKind::DamerauLevenshtein) mono.check(r0, evaluate_all(corpus, kind, 1));
      for (std::size_t k = 0; k < r0.size(); ++k) {
        for (const auto& u : r0[k].units) {
          if (!is_terminal_unit(corpus.seqs[k], u.index)) continue;
          ++terminal;
          wrong += u.success;
          mislabelled += u.failure != kTerminalState;
        }
      }
    }
    report(5, terminal > 0 && wrong == 0 && mislabelled == 0 ? "PASS" : "FAIL",
           fmt("%zu terminal reconstructions over levenshtein/damerau/hamming, %zu succeeded, "
               "%zu not labelled terminal-state",
               terminal, wrong, mislabelled));
  }

  // Criterion 6 also covers the similarity-based measures, on a subset.
  for (auto kind : {MeasureKind::Jaro, MeasureKind::JaroWinkler}) {
    mono.check(evaluate_all(corpus, kind, 0, 0, kSubset), evaluate_all(corpus, kind, 1, 0, kSubset));
  }
  report(6, mono.violations == 0 ? "PASS" : "FAIL",
         fmt("%zu runs, %zu with accuracy(eta=1) < accuracy(eta=0)", mono.runs, mono.violations));

  // Criterion 7: JSON for a corpus subset under one and eight threads.
  {
    std::string one;
    std::string eight;
    for (const auto& r : evaluate_all(corpus, MeasureKind::DamerauLevenshtein, 1, 1, kSubset)) {
      one += render_report(r, ReportFormat::Json);
    }
    for (const auto& r : evaluate_all(corpus, MeasureKind::DamerauLevenshtein, 1, 8, kSubset)) {
      eight += render_report(r, ReportFormat::Json);
    }
    report(7, !one.empty() && one == eight ? "PASS" : "FAIL",
           fmt("%zu derivations, %zu bytes of JSON, jobs=1 vs jobs=8 %s", kSubset, one.size(),
               one == eight ? "identical" : "differ"));
  }

  return failures == 0 ? 0 : 1;
}
