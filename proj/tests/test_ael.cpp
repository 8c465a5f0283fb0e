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

#include <gtest/gtest.h>

#include <random>
#include <string>

#include "avgenergy/ael.hpp"
#include "avgenergy/expansion.hpp"
#include "avgenergy/verify.hpp"
#include "oracles.hpp"

using namespace avgen;

namespace {

GameGraph load(const std::string &name) { return load_game(std::string(AVGEN_DATA_DIR) + "/" + name); }

GameGraph loops(Player owner, std::vector<std::int64_t> weights) {
    GameBuilder b;
    b.add_state("s", owner);
    for (auto w : weights) b.add_edge("s", w, "s");
    b.set_initial("s");
    return b.build();
}

const Threshold kT = Threshold::parse("11/4");

}  // namespace

TEST(Bounds, SimpleArena) {
    BoundSet b = compute_bounds(load("three_state.game.json"), kT);
    // 8 * 11 * 4 * (15/4)^3 * 9 = 167062.5
    EXPECT_EQ(b.N, 167063);
    // 11/4 + 4 * 167064 = 668258.75
    EXPECT_EQ(b.M, 668259);
    // M + |S| + |E| W + |S| (ceil(t) + 1) = 668259 + 3 + 24 + 12
    EXPECT_EQ(b.mprime_exponent, 668298);
    EXPECT_FALSE(b.Mprime.has_value());
}

TEST(Bounds, Guards) {
    BoundSet z = compute_bounds(loops(Player::P0, {0}), Threshold(0));
    EXPECT_EQ(z.N, 8);
    EXPECT_EQ(z.M, 1);
    BoundSet m = compute_bounds(loops(Player::P0, {-1}), Threshold(0));
    EXPECT_EQ(m.N, 8);
    EXPECT_EQ(m.M, 9);
    EXPECT_EQ(m.mprime_exponent, 12);
    ASSERT_TRUE(m.Mprime.has_value());
    EXPECT_EQ(*m.Mprime, 4096);
}

TEST(Bounds, Multiplier) {
    BoundOptions o;
    o.exponent_multiplier = Rational(1, 2);
    BoundSet m = compute_bounds(loops(Player::P0, {-1}), Threshold(0), o);
    EXPECT_EQ(m.mprime_exponent, 6);
    EXPECT_EQ(*m.Mprime, 64);
    o.bit_budget = 5;
    EXPECT_FALSE(compute_bounds(loops(Player::P0, {-1}), Threshold(0), o).Mprime.has_value());
}

TEST(Bounds, DensityBound) {
    EXPECT_EQ(density_bound(kT), Rational(1, 30));
    EXPECT_EQ(density_bound(Threshold(3)), Rational(1, 8));
    EXPECT_EQ(Threshold(3).tilde(), Rational(1));
}

TEST(Aelu, SimpleArena) {
    GameGraph g = load("three_state.game.json");
    SolveVerdict v = solve_aelu(g, kT, 6);
    EXPECT_EQ(v.outcome, Outcome::Win);
    ASSERT_TRUE(v.strategy.has_value());
    EXPECT_TRUE(verify_strategy(g, kT, 6, *v.strategy, VerifyObjective::AELU).accepted);
    // The witness keeps levels within [0, 6] and reproduces the worst case against greedy.
    SimulationTrace tr = simulate(g, *v.strategy, Adversary::greedy(), 8);
    Rational ae = tr.average_energy(8)[0];
    EXPECT_LE(ae, kT.value());
    EXPECT_EQ(solve_aelu(g, Threshold(0), 6).outcome, Outcome::Lose);
    EXPECT_FALSE(oracle::aelu_wins(g, 0, 1, 6));
    EXPECT_EQ(solve_aelu(g, kT, 1).outcome, Outcome::Lose);
}

TEST(Aelu, ZeroLoop) {
    SolveVerdict v = solve_aelu(loops(Player::P0, {0}), Threshold(0), 0);
    EXPECT_EQ(v.outcome, Outcome::Win);
    EXPECT_EQ(v.cap_used, 0);
}

TEST(Aelu, AgreesWithBruteForce) {
    std::mt19937_64 rng(23);
    const char *ts[] = {"0", "1/2", "1", "11/4"};
    for (int i = 0; i < 120; ++i) {
        GameGraph g = oracle::random_game(rng, 4, 3);
        Threshold t = Threshold::parse(ts[i % 4]);
        for (std::int64_t u : {0, 1, 3, 6, 10}) {
            bool mine = solve_aelu(g, t, u).outcome == Outcome::Win;
            EXPECT_EQ(mine, oracle::aelu_wins(g, to_int64(t.t1()), to_int64(t.t2()), u))
                << serialize_game(g) << " t=" << t.str() << " U=" << u;
        }
    }
}

TEST(Ael, SimpleArena) {
    SolveVerdict v = solve_ael(load("three_state.game.json"), kT);
    EXPECT_EQ(v.outcome, Outcome::Win);
    EXPECT_LE(v.cap_used, 6);
    ASSERT_FALSE(v.caps_tried.empty());
    EXPECT_EQ(v.caps_tried.front(), 0);
}

TEST(Ael, ConclusiveLoss) {
    SolveVerdict v = solve_ael(loops(Player::P0, {-1}), Threshold(0));
    EXPECT_EQ(v.outcome, Outcome::Lose);
    EXPECT_TRUE(v.conclusive_lose);
    EXPECT_EQ(v.caps_tried.back(), 4096);
}

TEST(Ael, InconclusiveWithinBudget) {
    CapSchedule s;
    s.budget = 16;
    SolveVerdict v = solve_ael(loops(Player::P0, {-1}), Threshold(0), s);
    EXPECT_EQ(v.outcome, Outcome::Inconclusive);
    EXPECT_FALSE(v.conclusive_lose);
    EXPECT_EQ(v.caps_tried.back(), 16);
}

TEST(Ael, ZeroLoop) {
    SolveVerdict v = solve_ael(loops(Player::P0, {0}), Threshold(0));
    EXPECT_EQ(v.outcome, Outcome::Win);
    EXPECT_EQ(v.cap_used, 0);
}

TEST(Ael, MinimalCap) {
    // A level of five is needed before the loop can be entered.
    GameBuilder b;
    b.add_state("a", Player::P0).add_state("b", Player::P0);
    b.add_edge("a", 5, "b").add_edge("b", -5, "a").set_initial("a");
    GameGraph g = b.build();
    SolveVerdict v = solve_ael(g, Threshold(3));
    EXPECT_EQ(v.outcome, Outcome::Win);
    EXPECT_EQ(v.cap_used, 5);
    EXPECT_EQ(solve_aelu(g, Threshold(3), 4).outcome, Outcome::Lose);
}

TEST(Ae, DeterministicArena) {
    GameGraph left = load("zero_mean_a.game.json");
    EXPECT_EQ(solve_ae(left, Threshold::parse("1/2")).outcome, Outcome::Win);
    EXPECT_EQ(solve_ae(left, Threshold::parse("1/4")).outcome, Outcome::Lose);
    EXPECT_EQ(solve_ae(loops(Player::P0, {0}), Threshold(0)).outcome, Outcome::Win);
}

TEST(Ae, AdversarialLoops) {
    GameGraph g = loops(Player::P1, {1, -1});
    EXPECT_EQ(solve_ae(g, Threshold(1)).outcome, Outcome::Lose);
    EXPECT_EQ(solve_ae(g, Threshold(1000)).outcome, Outcome::Lose);
    EXPECT_EQ(solve_ae(loops(Player::P0, {1, -1}), Threshold(0)).outcome, Outcome::Win);
}

TEST(Ae, Budget) {
    EXPECT_EQ(solve_ae(load("three_state.game.json"), kT, 1).outcome, Outcome::Inconclusive);
}

TEST(GoodCycle, WorstOutcome) {
    GameGraph g = load("three_state.game.json");
    ExpandedPrefix p = lift_play(g, kT, parse_path(g, "s0,s2,s0,s1,s0,s1,s0,s1,s0"));
    auto c = find_good_cycle(p, kT);
    ASSERT_TRUE(c.has_value());
    EXPECT_EQ(*c, (std::pair<std::size_t, std::size_t>{1, 8}));
    EXPECT_FALSE(find_good_cycle(p, Threshold::parse("5/2")).has_value());
}

TEST(GoodCycle, Trivial) {
    GameGraph z = loops(Player::P0, {0});
    ExpandedPrefix p = lift_play(z, Threshold(0), parse_path(z, "s,s"));
    EXPECT_EQ(find_good_cycle(p, Threshold(0)), (std::pair<std::size_t, std::size_t>{1, 1}));
    GameGraph up = loops(Player::P0, {1});
    ExpandedPrefix q = lift_play(up, Threshold(2), parse_path(up, "s,s,s,s,s"));
    EXPECT_FALSE(find_good_cycle(q, Threshold(2)).has_value());
    GameGraph down = loops(Player::P0, {-1});
    EXPECT_THROW(find_good_cycle(lift_play(down, Threshold(0), parse_path(down, "s,s")), Threshold(0)),
                 std::invalid_argument);
}

TEST(GoodCycle, EarliestEnd) {
    // Levels 1,0,1,0: the cycle closing at step 2 from level 0 has mean 1/2.
    GameBuilder b;
    b.add_state("a", Player::P0).add_state("b", Player::P0);
    b.add_edge("a", 1, "b").add_edge("b", -1, "a").set_initial("a");
    GameGraph g = b.build();
    ExpandedPrefix p = lift_play(g, Threshold(1), parse_path(g, "a,b,a,b,a"));
    EXPECT_EQ(find_good_cycle(p, Threshold(1)), (std::pair<std::size_t, std::size_t>{1, 2}));
    EXPECT_FALSE(find_good_cycle(p, Threshold::parse("1/3")).has_value());
}

TEST(Density, Examples) {
    GameGraph g = load("three_state.game.json");
    ExpandedPrefix p = lift_play(g, kT, parse_path(g, "s0,s2,s0,s1,s0,s1,s0,s1,s0"));
    EXPECT_EQ(density(level_at_most(kT), p), Rational(1, 2));
    EXPECT_EQ(density([](const Configuration &) { return true; }, p), Rational(1));
    EXPECT_THROW(density(level_at_most(kT), ExpandedPrefix{}), std::invalid_argument);
}
