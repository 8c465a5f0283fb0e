/*
 * Copyright 2026 The avgenergy Authors
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *     http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

#include <benchmark/benchmark.h>

#include <random>
#include <string>

#include "avgenergy/ael.hpp"
#include "avgenergy/expansion.hpp"
#include "avgenergy/solvers.hpp"

using namespace avgen;

namespace {

// Ring of n states with alternating owners and two moves per state.
GameGraph ring(std::int64_t n, std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    std::uniform_int_distribution<std::int64_t> w(-3, 3);
    GameBuilder b;
    for (std::int64_t i = 0; i < n; ++i) b.add_state("s" + std::to_string(i), i % 2 ? Player::P1 : Player::P0);
    for (std::int64_t i = 0; i < n; ++i) {
        const std::string from = "s" + std::to_string(i);
        const std::int64_t a = w(rng), c = w(rng), next = (i + 1) % n, jump = (i * 7 + 3) % n;
        b.add_edge(from, a, "s" + std::to_string(next));
        if (jump != next || c != a) b.add_edge(from, c, "s" + std::to_string(jump));
    }
    b.set_initial("s0");
    return b.build();
}

void BM_ExpandSimpleArena(benchmark::State &state) {
    GameGraph g = load_game(std::string(AVGEN_DATA_DIR) + "/three_state.game.json");
    const Threshold t = Threshold::parse("11/4");
    for (auto _ : state) benchmark::DoNotOptimize(build_expanded(g, t, state.range(0)));
}
BENCHMARK(BM_ExpandSimpleArena)->Arg(6)->Arg(64)->Arg(1024);

void BM_MeanPayoff(benchmark::State &state) {
    GameGraph g = ring(state.range(0), 1);
    const Threshold t(0);
    for (auto _ : state) benchmark::DoNotOptimize(solve_mp_threshold(g, t));
}
BENCHMARK(BM_MeanPayoff)->Arg(16)->Arg(128)->Arg(1024);

void BM_EnergyGame(benchmark::State &state) {
    GameGraph g = ring(state.range(0), 2);
    for (auto _ : state) benchmark::DoNotOptimize(solve_energy_game(g, Player::P0, CreditMode::Any));
}
BENCHMARK(BM_EnergyGame)->Arg(16)->Arg(128)->Arg(1024);

void BM_Aelu(benchmark::State &state) {
    GameGraph g = ring(8, 3);
    const Threshold t(2);
    for (auto _ : state) benchmark::DoNotOptimize(solve_aelu(g, t, state.range(0)));
}
BENCHMARK(BM_Aelu)->Arg(8)->Arg(32)->Arg(128);

void BM_AelSimpleArena(benchmark::State &state) {
    GameGraph g = load_game(std::string(AVGEN_DATA_DIR) + "/three_state.game.json");
    const Threshold t = Threshold::parse("11/4");
    for (auto _ : state) benchmark::DoNotOptimize(solve_ael(g, t));
}
BENCHMARK(BM_AelSimpleArena);

}  // namespace

BENCHMARK_MAIN();
