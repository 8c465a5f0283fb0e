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

#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <ranges>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

namespace avgen {

enum class Player : std::uint8_t { P0 = 0, P1 = 1 };

inline Player opponent(Player p) { return p == Player::P0 ? Player::P1 : Player::P0; }

/** Invariant violation in a game description. */
class GameError : public std::runtime_error {
  public:
    using std::runtime_error::runtime_error;
};

/** Malformed game file. Line and column are 1-based; zero when unknown. */
class ParseError : public GameError {
  public:
    ParseError(const std::string &what, std::size_t line = 0, std::size_t column = 0);
    std::size_t line() const { return line_; }
    std::size_t column() const { return column_; }

  private:
    std::size_t line_;
    std::size_t column_;
};

struct Edge {
    std::size_t from;
    std::size_t to;
};

/**
 * Finite arena with integer-vector weights.
 *
 * States are stored sorted by id and edges in canonical order (from, to, weight),
 * so indices are stable across parse/serialize round trips. Out-edges of a state
 * form a contiguous index range.
 */
class GameGraph {
  public:
    GameGraph() = default;

    std::size_t num_states() const { return ids_.size(); }
    std::size_t num_edges() const { return edges_.size(); }
    std::size_t dimension() const { return dim_; }

    const std::string &id(std::size_t s) const { return ids_[s]; }
    Player owner(std::size_t s) const { return owners_[s]; }
    std::size_t initial() const { return initial_; }

    std::optional<std::size_t> find_state(std::string_view id) const;
    /** Like find_state but throws GameError for unknown ids. */
    std::size_t state(std::string_view id) const;

    const Edge &edge(std::size_t e) const { return edges_[e]; }
    /** Scalar weight; the game must be one-dimensional. */
    std::int64_t weight(std::size_t e) const { return weights_[e * dim_]; }
    std::int64_t weight(std::size_t e, std::size_t d) const { return weights_[e * dim_ + d]; }
    std::span<const std::int64_t> weights(std::size_t e) const {
        return {weights_.data() + e * dim_, dim_};
    }

    auto out_edges(std::size_t s) const { return std::views::iota(out_begin_[s], out_begin_[s + 1]); }
    std::size_t out_degree(std::size_t s) const { return out_begin_[s + 1] - out_begin_[s]; }
    std::span<const std::size_t> in_edges(std::size_t s) const {
        return {in_edges_.data() + in_begin_[s], in_begin_[s + 1] - in_begin_[s]};
    }

    /** W: the largest absolute weight component (0 for an all-zero game). */
    std::int64_t max_abs_weight() const { return max_abs_; }

    std::optional<std::size_t> find_edge(std::size_t from, std::size_t to,
                                         std::span<const std::int64_t> w) const;
    /** All edges from -> to, in canonical order. */
    std::vector<std::size_t> edges_between(std::size_t from, std::size_t to) const;

    GameGraph with_initial(std::size_t s) const;

    std::string edge_str(std::size_t e) const;

  private:
    friend class GameBuilder;

    std::size_t dim_ = 1;
    std::vector<std::string> ids_;
    std::vector<Player> owners_;
    std::unordered_map<std::string, std::size_t> index_;
    std::vector<Edge> edges_;
    std::vector<std::int64_t> weights_;
    std::vector<std::size_t> out_begin_;
    std::vector<std::size_t> in_begin_;
    std::vector<std::size_t> in_edges_;
    std::size_t initial_ = 0;
    std::int64_t max_abs_ = 0;
};

/**
 * Collects states and edges in any order and produces a validated GameGraph.
 */
class GameBuilder {
  public:
    explicit GameBuilder(std::size_t dimension = 1);

    GameBuilder &add_state(std::string id, Player owner);
    GameBuilder &add_edge(std::string from, std::vector<std::int64_t> weight, std::string to);
    GameBuilder &add_edge(std::string from, std::int64_t weight, std::string to);
    GameBuilder &set_initial(std::string id);

    bool has_state(const std::string &id) const { return owner_of_.count(id) != 0; }
    std::size_t dimension() const { return dim_; }

    /** Throws GameError naming the first violated invariant. */
    GameGraph build() const;

  private:
    struct PendingEdge {
        std::string from;
        std::vector<std::int64_t> weight;
        std::string to;
    };
    std::size_t dim_;
    std::vector<std::pair<std::string, Player>> states_;
    std::unordered_map<std::string, Player> owner_of_;
    std::vector<PendingEdge> edges_;
    std::optional<std::string> initial_;
    std::optional<std::string> duplicate_state_;
};

GameGraph parse_game(std::string_view text);
GameGraph load_game(const std::string &path);
/** Canonical serialization; parse_game(serialize_game(g)) reproduces g. */
std::string serialize_game(const GameGraph &g);

std::string read_file(const std::string &path);

}  // namespace avgen
