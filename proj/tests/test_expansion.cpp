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
#include <set>
#include <string>
#include <tuple>

#include "avgenergy/expansion.hpp"
#include "avgenergy/play.hpp"
#include "oracles.hpp"

using namespace avgen;

namespace {

GameGraph load(const std::string &name) { return load_game(std::string(AVGEN_DATA_DIR) + "/" + name); }

GameGraph single_loop(std::int64_t w) {
    GameBuilder b;
    b.add_state("s", Player::P0).add_edge("s", w, "s").set_initial("s");
    return b.build();
}

std::size_t at(const ExpandedGame &x, const std::string &s, std::int64_t level) {
    auto i = x.find(Configuration{x.base().state(s), level});
    EXPECT_TRUE(i.has_value()) << s << "@" << level;
    return i.value_or(0);
}

// Arena edges as (from id, weight, to id).
std::set<std::tuple<std::string, std::int64_t, std::string>> edge_set(const GameGraph &g) {
    std::set<std::tuple<std::string, std::int64_t, std::string>> r;
    for (std::size_t e = 0; e < g.num_edges(); ++e)
        r.insert({g.id(g.edge(e).from), g.weight(e), g.id(g.edge(e).to)});
    return r;
}

}  // namespace

TEST(Expansion, SimpleArenaCapSix) {
    GameGraph g = load("three_state.game.json");
    const Threshold t = Threshold::parse("11/4");
    ExpandedGame x = build_expanded(g, t, 6);
    // Hand enumeration from (s0,0): every level of s0 and s2, s1 only up to 4.
    EXPECT_EQ(x.num_real_configurations(), 19u);
    EXPECT_TRUE(x.bottom().has_value());
    EXPECT_EQ(x.bottom_weight(), 4);
    EXPECT_FALSE(x.find(Configuration{g.state("s1"), 5}).has_value());

    const GameGraph &a = x.arena();
    auto e = a.find_edge(at(x, "s0", 0), at(x, "s2", 4), std::vector<std::int64_t>{4});
    ASSERT_TRUE(e.has_value());
    EXPECT_EQ(a.id(a.edge(*e).from), "s0@0");
    EXPECT_EQ(a.id(a.edge(*e).to), "s2@4");
    EXPECT_EQ(a.owner(at(x, "s2", 4)), Player::P1);
    // Underflow and overflow both reach the sink.
    EXPECT_TRUE(a.find_edge(at(x, "s0", 0), *x.bottom(), std::vector<std::int64_t>{4}));
    EXPECT_TRUE(a.find_edge(at(x, "s0", 6), *x.bottom(), std::vector<std::int64_t>{4}));
    EXPECT_EQ(a.owner(*x.bottom()), Player::P1);

    ExpandedGame full = build_expanded(g, t, 6, OverflowPolicy::OverflowLoses, {ExpansionScope::Full, std::nullopt});
    EXPECT_EQ(full.num_real_configurations(), 21u);
    EXPECT_EQ(full.arena().num_states(), 22u);
}

TEST(Expansion, ForcedUnderflow) {
    ExpandedGame x = build_expanded(single_loop(-1), Threshold(0), 5);
    const GameGraph &a = x.arena();
    EXPECT_EQ(x.num_real_configurations(), 1u);
    ASSERT_EQ(a.num_edges(), 2u);
    EXPECT_EQ(edge_set(a), (std::set<std::tuple<std::string, std::int64_t, std::string>>{
                               {"s@0", 1, "BOT"}, {"BOT", 1, "BOT"}}));
}

TEST(Expansion, ZeroLoop) {
    ExpandedGame x = build_expanded(single_loop(0), Threshold(0), 0);
    EXPECT_EQ(x.arena().num_states(), 1u);
    EXPECT_FALSE(x.bottom().has_value());
    EXPECT_EQ(edge_set(x.arena()),
              (std::set<std::tuple<std::string, std::int64_t, std::string>>{{"s@0", 0, "s@0"}}));
}

TEST(Expansion, ForbiddenPolicy) {
    ExpandedGame x = build_expanded(single_loop(1), Threshold(0), 2, OverflowPolicy::OverflowForbidden);
    ASSERT_EQ(x.dead_configurations().size(), 1u);
    EXPECT_EQ(x.dead_configurations()[0].level, 2);
    // Under the default policy the same move overflows into the sink.
    ExpandedGame y = build_expanded(single_loop(1), Threshold(0), 2);
    EXPECT_TRUE(y.dead_configurations().empty());
    EXPECT_TRUE(y.arena_edge(at(y, "s", 2), 0).has_value());
}

TEST(Expansion, EdgeBookkeeping) {
    GameGraph g = load("three_state.game.json");
    ExpandedGame x = build_expanded(g, Threshold::parse("11/4"), 6);
    for (std::size_t xs = 0; xs < x.arena().num_states(); ++xs) {
        const Configuration &c = x.configuration(xs);
        if (c.is_bottom()) continue;
        for (std::size_t e : g.out_edges(c.state)) {
            auto ae = x.arena_edge(xs, e);
            ASSERT_TRUE(ae.has_value());
            EXPECT_EQ(x.arena().edge(*ae).from, xs);
            std::int64_t next = c.level + g.weight(e);
            if (next >= 0 && next <= 6) {
                EXPECT_EQ(x.base_edge(*ae), e);
                EXPECT_EQ(x.arena().weight(*ae), next);
            } else {
                EXPECT_EQ(x.arena().edge(*ae).to, *x.bottom());
            }
        }
    }
}

TEST(Expansion, RejectsVectors) {
    GameGraph g = parse_game(R"({"states":[{"id":"q","owner":0}],"edges":[{"from":"q","weight":[0,0],"to":"q"}],
        "initial":"q"})");
    try {
        build_expanded(g, Threshold(0), 3);
        FAIL();
    } catch (const GameError &e) {
        EXPECT_NE(std::string(e.what()).find("expansion requires one dimension"), std::string::npos);
    }
    EXPECT_THROW(build_expanded(single_loop(0), Threshold(0), -1), std::invalid_argument);
}

TEST(Expansion, AgreesWithIndependentBuilder) {
    std::mt19937_64 rng(7);
    for (int i = 0; i < 60; ++i) {
        GameGraph g = oracle::random_game(rng, 4, 3);
        const std::int64_t cap = i % 7;
        ExpandedGame x = build_expanded(g, Threshold(1), cap, OverflowPolicy::OverflowLoses,
                                        {ExpansionScope::Full, std::nullopt});
        oracle::Arena o = oracle::expand_shifted(g, 0, 1, cap);
        EXPECT_EQ(x.num_real_configurations(), g.num_states() * static_cast<std::size_t>(cap + 1));
        // Outgoing degree of each real configuration is the base degree, counting sink moves once.
        for (std::size_t s = 0; s < g.num_states(); ++s)
            for (std::int64_t c = 0; c <= cap; ++c) {
                std::size_t xs = at(x, g.id(s), c);
                std::set<std::pair<std::size_t, std::int64_t>> mine, theirs;
                for (std::size_t e : x.arena().out_edges(xs)) {
                    const Configuration &d = x.configuration(x.arena().edge(e).to);
                    mine.insert({d.is_bottom() ? SIZE_MAX : d.state * 100 + static_cast<std::size_t>(d.level),
                                 d.is_bottom() ? -1 : x.arena().weight(e)});
                }
                for (const auto &arc : o.adj[s * static_cast<std::size_t>(cap + 1) + static_cast<std::size_t>(c)]) {
                    bool sink = arc.to == o.size() - 1;
                    std::size_t st = arc.to / static_cast<std::size_t>(cap + 1);
                    std::int64_t lv = static_cast<std::int64_t>(arc.to % static_cast<std::size_t>(cap + 1));
                    theirs.insert({sink ? SIZE_MAX : st * 100 + static_cast<std::size_t>(lv), sink ? -1 : arc.w});
                }
                EXPECT_EQ(mine, theirs) << g.id(s) << "@" << c;
            }
    }
}

TEST(Lift, WorstOutcome) {
    GameGraph g = load("three_state.game.json");
    const Threshold t = Threshold::parse("11/4");
    PlayPrefix p = parse_path(g, "s0,s2,s0,s1,s0,s1,s0,s1,s0");
    ExpandedPrefix lifted = lift_play(g, t, p);
    ASSERT_EQ(lifted.length(), 8u);
    std::vector<std::int64_t> levels;
    for (const auto &s : lifted.steps) levels.push_back(s.target.level);
    EXPECT_EQ(levels, (std::vector<std::int64_t>{4, 6, 4, 4, 2, 2, 0, 0}));
    EXPECT_FALSE(lifted.reaches_bottom());
    EXPECT_EQ(mean_payoff(lifted), Rational(11, 4));
    for (std::size_t j = 1; j <= p.length(); ++j) {
        PlayPrefix pj{p.start, {p.edges.begin(), p.edges.begin() + static_cast<long>(j)}};
        ExpandedPrefix lj = lift_play(g, t, pj);
        EXPECT_EQ(mean_payoff(lj), average_energy(g, pj)[0]);
    }
}

TEST(Lift, Underflow) {
    GameGraph g = load("three_state.game.json");
    ExpandedPrefix l = lift_play(g, Threshold::parse("11/4"), parse_path(g, "s0,s1,s0"));
    EXPECT_TRUE(l.steps[0].target.is_bottom());
    EXPECT_EQ(l.steps[0].weight, 4);
    EXPECT_TRUE(l.steps[1].target.is_bottom());

    GameGraph left = load("zero_mean_a.game.json");
    ExpandedPrefix m = lift_play(left, Threshold(1), parse_path(left, "s0,s1,s2,s3"));
    EXPECT_FALSE(m.steps[0].target.is_bottom());
    EXPECT_TRUE(m.steps[1].target.is_bottom());
    EXPECT_EQ(m.steps[1].weight, 2);
}

TEST(Lift, MatchesArenaPath) {
    GameGraph g = load("three_state.game.json");
    const Threshold t = Threshold::parse("11/4");
    ExpandedGame x = build_expanded(g, t, 6);
    PlayPrefix p = parse_path(g, "s0,s2,s1,s0,s2,s0");
    PlayPrefix ap{*x.find(Configuration{g.initial(), 0}), {}};
    for (std::size_t e : p.edges) ap.edges.push_back(*x.arena_edge(ap.last(x.arena()), e));
    ExpandedPrefix via_arena = to_expanded_prefix(x, ap);
    ExpandedPrefix lifted = lift_play(g, t, p);
    ASSERT_EQ(via_arena.length(), lifted.length());
    for (std::size_t i = 0; i < lifted.length(); ++i) {
        EXPECT_EQ(via_arena.steps[i].target, lifted.steps[i].target);
        EXPECT_EQ(via_arena.steps[i].weight, lifted.steps[i].weight);
    }
}

TEST(MultiDim, OneDimensionMatches) {
    GameGraph g = load("three_state.game.json");
    const Threshold t = Threshold::parse("11/4");
    ExpandedGame x = build_expanded(g, t, 6);
    GameGraph m = build_multidim_expanded(g, {t}, {6});
    EXPECT_EQ(serialize_game(m), serialize_game(x.arena()));
}

TEST(MultiDim, ZeroLoop) {
    GameGraph g = parse_game(R"({"states":[{"id":"s","owner":0}],"edges":[{"from":"s","weight":[0,0],"to":"s"}],
        "initial":"s"})");
    GameGraph full = build_multidim_expanded(g, {Threshold(0), Threshold(0)}, {1, 1}, ExpansionScope::Full);
    EXPECT_EQ(full.num_states(), 5u);  // four configurations and the sink
    GameGraph reach = build_multidim_expanded(g, {Threshold(0), Threshold(0)}, {1, 1});
    EXPECT_EQ(reach.num_states(), 1u);
}

TEST(MultiDim, StepThenSink) {
    GameGraph g = parse_game(R"({"states":[{"id":"s","owner":0}],"edges":[{"from":"s","weight":[1,0],"to":"s"}],
        "initial":"s"})");
    GameGraph m = build_multidim_expanded(g, {Threshold(0), Threshold(0)}, {1, 1});
    ASSERT_EQ(m.num_states(), 3u);
    std::size_t start = m.initial();
    ASSERT_EQ(m.out_degree(start), 1u);
    std::size_t mid = m.edge(*m.out_edges(start).begin()).to;
    EXPECT_EQ(m.weight(*m.out_edges(start).begin(), 0), 1);
    EXPECT_EQ(m.weight(*m.out_edges(start).begin(), 1), 0);
    ASSERT_EQ(m.out_degree(mid), 1u);
    std::size_t sink = m.edge(*m.out_edges(mid).begin()).to;
    EXPECT_NE(sink, mid);
    EXPECT_EQ(m.edge(*m.out_edges(sink).begin()).to, sink);
}

TEST(MultiDim, DimensionMismatch) {
    GameGraph g = load("three_state.game.json");
    EXPECT_THROW(build_multidim_expanded(g, {Threshold(0), Threshold(0)}, {1, 1}), GameError);
}
