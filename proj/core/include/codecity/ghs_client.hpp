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

#include <functional>
#include <optional>
#include <string>
#include <string_view>

namespace codecity {

inline constexpr std::string_view kLinkBlockBegin = "<!-- codecity:link:begin -->";
inline constexpr std::string_view kLinkBlockEnd = "<!-- codecity:link:end -->";

/// Environment lookup, injectable for tests.
using EnvLookup = std::function<std::optional<std::string>(const std::string&)>;
std::optional<std::string> process_env(const std::string& name);

/// Replaces the first marker block in `description` with one holding
/// `link`, drops any further blocks, or appends a block when none exists.
/// Applying it twice gives the same text as applying it once.
std::string upsert_link_block(std::string_view description, std::string_view link);

/// Number of complete marker blocks in `description`.
std::size_t count_link_blocks(std::string_view description);

/// A change request on a GitLab-compatible hosting service.
struct GhsConfig {
  std::string baseUrl;
  std::string projectId;
  std::string crId;
  std::string tokenEnvVar = "CODECITY_GHS_TOKEN";
};

/// Fetches the change-request description, upserts the link block and
/// writes it back when it changed. Returns the resulting description.
/// Errors: missing token or 401/403 -> kCredentials, 404 -> kNotFound,
/// connection failures and other statuses -> kTransport.
std::string upsert_cr_link(const GhsConfig& config, std::string_view link,
                           const EnvLookup& env = process_env);

}  // namespace codecity
