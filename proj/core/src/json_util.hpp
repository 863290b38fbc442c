// Copyright 2026 The codecity Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>

#include <fmt/core.h>

#include "codecity/error.hpp"
#include "json.hpp"

namespace codecity::detail {

using Json = nlohmann::json;

inline Json parse_json(std::string_view text, std::string_view what) {
  try {
    return Json::parse(text);
  } catch (const Json::parse_error& e) {
    throw Error(ErrorCode::kSchema, fmt::format("{}: malformed JSON: {}", what, e.what()));
  }
}

inline std::string dump_json(const Json& j, int indent = -1) {
  return j.dump(indent, ' ', false, Json::error_handler_t::replace);
}

[[noreturn]] inline void schema_error(std::string_view where, std::string_view problem) {
  throw Error(ErrorCode::kSchema, fmt::format("{}: {}", where, problem));
}

inline const Json& field(const Json& obj, std::string_view key, std::string_view where) {
  if (!obj.is_object()) schema_error(where, "expected an object");
  auto it = obj.find(key);
  if (it == obj.end()) schema_error(where, fmt::format("missing field '{}'", key));
  return *it;
}

inline std::string string_field(const Json& obj, std::string_view key, std::string_view where) {
  const Json& v = field(obj, key, where);
  if (!v.is_string()) schema_error(where, fmt::format("field '{}' must be a string", key));
  return v.get<std::string>();
}

inline std::optional<std::string> nullable_string_field(const Json& obj, std::string_view key,
                                                        std::string_view where) {
  if (!obj.is_object()) schema_error(where, "expected an object");
  auto it = obj.find(key);
  if (it == obj.end() || it->is_null()) return std::nullopt;
  if (!it->is_string()) schema_error(where, fmt::format("field '{}' must be a string or null", key));
  return it->get<std::string>();
}

inline std::int64_t int_field(const Json& obj, std::string_view key, std::string_view where) {
  const Json& v = field(obj, key, where);
  if (!v.is_number_integer()) schema_error(where, fmt::format("field '{}' must be an integer", key));
  return v.get<std::int64_t>();
}

inline const Json& array_field(const Json& obj, std::string_view key, std::string_view where) {
  const Json& v = field(obj, key, where);
  if (!v.is_array()) schema_error(where, fmt::format("field '{}' must be an array", key));
  return v;
}

inline void expect_schema(const Json& doc, std::string_view schema) {
  if (string_field(doc, "schema", "document") != schema) {
    schema_error("document", fmt::format("schema must be '{}'", schema));
  }
}

}  // namespace codecity::detail
