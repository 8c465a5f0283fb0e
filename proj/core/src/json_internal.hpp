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

#include <initializer_list>
#include <string>
#include <string_view>

#include "avgenergy/game.hpp"
#include "json.hpp"

namespace avgen::detail {

using json = nlohmann::json;

/** Parses JSON text, converting syntax errors into a positioned ParseError. */
json parse_json(std::string_view text);

/** Rejects keys of an object outside the allowed list. */
void check_keys(const json &obj, std::string_view what, std::initializer_list<std::string_view> allowed);

const json &require(const json &obj, std::string_view key, std::string_view what);
std::string require_string(const json &obj, std::string_view key, std::string_view what);
std::int64_t require_int(const json &obj, std::string_view key, std::string_view what);
std::int64_t as_int(const json &v, std::string_view what);

/** Reads the states/edges/initial triple; extra top-level keys must be listed in extra_keys. */
GameBuilder builder_from_json(const json &root, std::initializer_list<std::string_view> extra_keys);

std::string quote(const std::string &s);

}  // namespace avgen::detail
