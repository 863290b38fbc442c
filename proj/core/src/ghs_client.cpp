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

#include "codecity/ghs_client.hpp"

#include <cstdlib>

#include <fmt/core.h>

#include "codecity/deep_link.hpp"
#include "codecity/error.hpp"
#include "codecity/http_client.hpp"
#include "json_util.hpp"

namespace codecity {

namespace {

using detail::Json;

struct BlockSpan {
  std::size_t begin;
  std::size_t end;  // one past the end marker
};

std::optional<BlockSpan> find_block(std::string_view text, std::size_t from) {
  const auto b = text.find(kLinkBlockBegin, from);
  if (b == std::string_view::npos) return std::nullopt;
  const auto e = text.find(kLinkBlockEnd, b + kLinkBlockBegin.size());
  if (e == std::string_view::npos) return std::nullopt;
  return BlockSpan{b, e + kLinkBlockEnd.size()};
}

void check_status(const HttpResponse& res, const GhsConfig& config, const char* what) {
  if (res.ok()) return;
  const std::string where =
      fmt::format("{} change request {} in project {}", what, config.crId, config.projectId);
  if (res.status == 401 || res.status == 403) {
    throw Error(ErrorCode::kCredentials, fmt::format("{}: HTTP {}", where, res.status));
  }
  if (res.status == 404) {
    throw Error(ErrorCode::kNotFound, fmt::format("{}: HTTP 404", where));
  }
  throw Error(ErrorCode::kTransport, fmt::format("{}: HTTP {}", where, res.status));
}

}  // namespace

std::optional<std::string> process_env(const std::string& name) {
  if (const char* v = std::getenv(name.c_str())) return std::string(v);
  return std::nullopt;
}

std::string upsert_link_block(std::string_view description, std::string_view link) {
  const std::string block =
      fmt::format("{}\n{}\n{}", kLinkBlockBegin, link, kLinkBlockEnd);

  const auto first = find_block(description, 0);
  if (!first) {
    std::string out(description);
    while (!out.empty() && (out.back() == '\n' || out.back() == ' ')) out.pop_back();
    if (!out.empty()) out += "\n\n";
    out += block;
    out += '\n';
    return out;
  }

  std::string out(description.substr(0, first->begin));
  out += block;
  std::size_t pos = first->end;
  while (const auto next = find_block(description, pos)) {
    out.append(description.substr(pos, next->begin - pos));
    pos = next->end;
  }
  out.append(description.substr(pos));
  return out;
}

std::size_t count_link_blocks(std::string_view description) {
  std::size_t n = 0;
  std::size_t pos = 0;
  while (const auto b = find_block(description, pos)) {
    ++n;
    pos = b->end;
  }
  return n;
}

std::string upsert_cr_link(const GhsConfig& config, std::string_view link,
                           const EnvLookup& env) {
  const auto token = env(config.tokenEnvVar);
  if (!token || token->empty()) {
    throw Error(ErrorCode::kCredentials,
                fmt::format("no hosting-service token in ${}", config.tokenEnvVar));
  }
  const HttpHeaders headers{{"PRIVATE-TOKEN", *token}};
  const std::string path = fmt::format("/api/v4/projects/{}/merge_requests/{}",
                                       percent_encode(config.projectId),
                                       percent_encode(config.crId));

  HttpClient client(config.baseUrl);
  const HttpResponse current = client.get(path, headers);
  check_status(current, config, "fetching");

  std::string description;
  try {
    const Json doc = detail::parse_json(current.body, "change request");
    const auto it = doc.find("description");
    if (it != doc.end() && it->is_string()) description = it->get<std::string>();
  } catch (const Error& e) {
    throw Error(ErrorCode::kTransport, fmt::format("unreadable change request: {}", e.what()));
  }

  std::string updated = upsert_link_block(description, link);
  if (updated == description) return updated;

  const HttpResponse written = client.put(
      path, detail::dump_json(Json{{"description", updated}}), "application/json", headers);
  check_status(written, config, "updating");
  return updated;
}

}  // namespace codecity
