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
#include <string_view>
#include <vector>

#include "codecity/model.hpp"

namespace codecity::detail {

enum class LineKind : std::uint8_t { kBlank, kComment, kCode };

/// One entry per physical line of `text`, with comment state carried
/// across lines.
std::vector<LineKind> classify_lines(std::string_view text);

/// Prefix sums over a classification so that any line range can be
/// measured in O(1).
class LineTally {
 public:
  explicit LineTally(const std::vector<LineKind>& kinds);

  [[nodiscard]] std::int64_t line_count() const noexcept {
    return static_cast<std::int64_t>(code_.size()) - 1;
  }

  /// 1-based inclusive range; the caller guarantees bounds.
  [[nodiscard]] LocMetrics range(std::int64_t first, std::int64_t last) const;

 private:
  std::vector<std::int64_t> code_;
  std::vector<std::int64_t> comment_;
  std::vector<std::int64_t> blank_;
};

}  // namespace codecity::detail
