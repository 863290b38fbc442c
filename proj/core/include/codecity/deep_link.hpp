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

namespace codecity {

/// RFC 3986 percent-encoding; only unreserved characters pass through.
std::string percent_encode(std::string_view value);

/// `{frontendBase}/visualization?app=..&baseCommit=..&targetCommit=..`,
/// plus `baseWindow`/`targetWindow` when given. Throws kConfig when the base
/// is not an absolute http(s) URL.
std::string build_deep_link(std::string_view frontendBase, std::string_view application,
                            std::string_view baseCommit, std::string_view targetCommit,
                            std::optional<std::int64_t> baseWindow = std::nullopt,
                            std::optional<std::int64_t> targetWindow = std::nullopt);

}  // namespace codecity
