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

#include <stdexcept>
#include <unordered_map>

#include "avgenergy/ael.hpp"
#include "int128.hpp"

namespace avgen {

std::optional<std::pair<std::size_t, std::size_t>> find_good_cycle(const ExpandedPrefix &p, const Threshold &t) {
    if (p.reaches_bottom()) throw std::invalid_argument("good cycles are defined on prefixes avoiding the sink");
    const detail::Int128 t1 = static_cast<detail::Int128>(to_int64(t.t1()));
    const detail::Int128 t2 = static_cast<detail::Int128>(to_int64(t.t2()));
    auto le_t = [&](std::int64_t level) { return t2 * level <= t1; };

    std::unordered_map<Configuration, std::vector<std::size_t>, ConfigurationHash> seen;
    std::vector<detail::Int128> sum(p.length() + 1, 0);
    seen[p.start].push_back(0);
    for (std::size_t j = 1; j <= p.length(); ++j) {
        sum[j] = sum[j - 1] + p.steps[j - 1].weight;
        const Configuration &c = p.config(j);
        auto &occ = seen[c];
        if (le_t(c.level)) {
            for (auto it = occ.rbegin(); it != occ.rend(); ++it) {
                std::size_t q = *it;
                // MP(p[q+1..j]) <= t
                if (t2 * (sum[j] - sum[q]) <= t1 * static_cast<detail::Int128>(j - q)) return std::make_pair(q + 1, j);
            }
        }
        occ.push_back(j);
    }
    return std::nullopt;
}

ConfigPredicate level_at_most(const Threshold &t) {
    Rational bound = t.value();
    return [bound](const Configuration &c) { return !c.is_bottom() && Rational(c.level) <= bound; };
}

Rational density(const ConfigPredicate &gamma, const ExpandedPrefix &p) {
    if (p.steps.empty()) throw std::invalid_argument("density of an empty prefix is undefined");
    std::size_t hits = 0;
    for (const auto &s : p.steps)
        if (gamma(s.target)) ++hits;
    return Rational(BigInt(hits), BigInt(p.length()));
}

Rational density_bound(const Threshold &t) { return t.tilde() / (2 * (t.value() + 1)); }

}  // namespace avgen
