// Copyright 2026 The derivekit Authors
// SPDX-License-Identifier: Apache-2.0

// Serial reference search against the OpenMP kernel on generated units,
// plus full evaluation at different worker counts.

#include <benchmark/benchmark.h>

#include "derivekit/eval.hpp"
#include "derivekit/generator.hpp"
#include "derivekit/knowledge_base.hpp"
#include "derivekit/search.hpp"

namespace {

using namespace derivekit;

struct Fixture {
  std::vector<EquationState> seeds;
  Derivation derivation;
  std::vector<EquationState> states;  // s_0..s_{n+1}
};

const Fixture& fixture() {
  static const Fixture f = [] {
    Fixture x;
    x.seeds = load_kb_file(std::string(DERIVEKIT_DATA_DIR) + "/seeds.kb");
    GenConfig cfg{x.seeds, 20, 0.2, 7, 100};
    x.derivation = generate(cfg, builtin_action_set());
    x.states = parsed_states(x.derivation.to_sequence());
    return x;
  }();
  return f;
}

template <bool Serial>
void BM_Reconstruct(benchmark::State& st) {
  const auto& f = fixture();
  const auto i = static_cast<std::size_t>(st.range(0));
  const auto kb = build_kb(f.seeds, std::span(f.states.data() + 1, i - 1), f.states[i - 1],
                           f.states[i + 1]);
  DerivationUnit unit{f.states[i - 1], f.states[i + 1], f.states[i]};
  SearchOptions opts;
  opts.jobs = static_cast<int>(st.range(1));
  for (auto _ : st) {
    auto r = Serial ? reconstruct_serial(unit, builtin_action_set(), kb, opts)
                    : reconstruct(unit, builtin_action_set(), kb, opts);
    benchmark::DoNotOptimize(r);
  }
}

void BM_Evaluate(benchmark::State& st) {
  const auto& f = fixture();
  const auto seq = f.derivation.to_sequence();
  EvalConfig cfg;
  cfg.jobs = static_cast<int>(st.range(0));
  for (auto _ : st) {
    auto r = evaluate(seq, builtin_action_set(), f.seeds, cfg);
    benchmark::DoNotOptimize(r);
  }
}

}  // namespace

BENCHMARK(BM_Reconstruct<true>)->Args({5, 1})->Args({15, 1})->Unit(benchmark::kMillisecond);
BENCHMARK(BM_Reconstruct<false>)
    ->Args({5, 1})
    ->Args({5, 4})
    ->Args({15, 1})
    ->Args({15, 4})
    ->Unit(benchmark::kMillisecond);
BENCHMARK(BM_Evaluate)->Arg(1)->Arg(4)->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
