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

#include "codecity/deep_link.hpp"

#include <fmt/core.h>

#include "codecity/error.hpp"

namespace codecity {

namespace {

bool is_unreserved(unsigned char c) {
  return (c >= 'A' && c <= 'Z') || (c >= 'a' && c <= 'z') || (c >= '0' && c <= '9') ||
         c == '-' || c == '.' || c == '_' || c == '~';
}

bool is_absolute_http(std::string_view url) {
  for (std::string_view scheme : {"http://", "https://"}) {
    if (url.size() > scheme.size() && url.substr(0, scheme.size()) == scheme) return true;
  }
  return false;
}

}  // namespace

std::string percent_encode(std::string_view value) {
  static constexpr char kHex[] = "0123456789ABCDEF";
  std::string out;
  out.reserve(value.size());
  for (const char ch : value) {
    const auto c = static_cast<unsigned char>(ch);
    if (is_unreserved(c)) {
      out.push_back(ch);
    } else {
      out.push_back('%');
      out.push_back(kHex[c >> 4]);
      out.push_back(kHex[c & 0x0f]);
    }
  }
  return out;
}

std::string build_deep_link(std::string_view frontendBase, std::string_view application,
                            std::string_view baseCommit, std::string_view targetCommit,
                            std::optional<std::int64_t> baseWindow,
                            std::optional<std::int64_t> targetWindow) {
  if (!is_absolute_http(frontendBase)) {
    throw Error(ErrorCode::kConfig,
                fmt::format("frontend URL '{}' is not an absolute http(s) URL", frontendBase));
  }
  while (!frontendBase.empty() && frontendBase.back() == '/') frontendBase.remove_suffix(1);

  std::string url = fmt::format("{}/visualization?app={}&baseCommit={}&targetCommit={}",
                                frontendBase, percent_encode(application),
                                percent_encode(baseCommit), percent_encode(targetCommit));
  if (baseWindow) url += fmt::format("&baseWindow={}", *baseWindow);
  if (targetWindow) url += fmt::format("&targetWindow={}", *targetWindow);
  return url;
}

}  // namespace codecity
