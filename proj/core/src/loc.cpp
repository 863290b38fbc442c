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

#include <string>

#include "codecity/code_agent.hpp"
#include "line_classifier.hpp"

namespace codecity {
namespace detail {

std::vector<LineKind> classify_lines(std::string_view text) {
  enum class State { kNormal, kLineComment, kBlockComment, kString, kChar, kTextBlock };

  std::vector<LineKind> kinds;
  State state = State::kNormal;
  bool has_code = false;
  bool has_comment = false;
  bool has_text = false;

  auto finish_line = [&] {
    if (!has_text) {
      kinds.push_back(LineKind::kBlank);
    } else if (has_code) {
      kinds.push_back(LineKind::kCode);
    } else {
      kinds.push_back(has_comment ? LineKind::kComment : LineKind::kCode);
    }
    has_code = has_comment = has_text = false;
  };

  const std::size_t n = text.size();
  for (std::size_t i = 0; i < n; ++i) {
    const char c = text[i];
    const char next = i + 1 < n ? text[i + 1] : '\0';
    if (c == '\n') {
      if (state == State::kLineComment || state == State::kString ||
          state == State::kChar) {
        state = State::kNormal;
      }
      finish_line();
      continue;
    }
    const bool space = c == ' ' || c == '\t' || c == '\r' || c == '\f' || c == '\v';
    if (!space) {
      has_text = true;
    }
    switch (state) {
      case State::kNormal:
        if (space) break;
        if (c == '/' && next == '/') {
          has_comment = true;
          state = State::kLineComment;
          ++i;
        } else if (c == '/' && next == '*') {
          has_comment = true;
          state = State::kBlockComment;
          ++i;
        } else if (c == '"' && text.substr(i, 3) == "\"\"\"") {
          has_code = true;
          state = State::kTextBlock;
          i += 2;
        } else if (c == '"') {
          has_code = true;
          state = State::kString;
        } else if (c == '\'') {
          has_code = true;
          state = State::kChar;
        } else {
          has_code = true;
        }
        break;
      case State::kLineComment:
        break;
      case State::kBlockComment:
        if (!space) has_comment = true;
        if (c == '*' && next == '/') {
          state = State::kNormal;
          ++i;
        }
        break;
      case State::kString:
      case State::kChar:
        if (!space) has_code = true;
        if (c == '\\' && next != '\n') {
          ++i;
        } else if ((state == State::kString && c == '"') ||
                   (state == State::kChar && c == '\'')) {
          state = State::kNormal;
        }
        break;
      case State::kTextBlock:
        if (!space) has_code = true;
        if (c == '\\' && next != '\n') {
          ++i;
        } else if (c == '"' && text.substr(i, 3) == "\"\"\"") {
          state = State::kNormal;
          i += 2;
        }
        break;
    }
  }
  if (!text.empty() && text.back() != '\n') {
    finish_line();
  }
  return kinds;
}

LineTally::LineTally(const std::vector<LineKind>& kinds)
    : code_(kinds.size() + 1, 0), comment_(kinds.size() + 1, 0), blank_(kinds.size() + 1, 0) {
  for (std::size_t i = 0; i < kinds.size(); ++i) {
    code_[i + 1] = code_[i] + (kinds[i] == LineKind::kCode ? 1 : 0);
    comment_[i + 1] = comment_[i] + (kinds[i] == LineKind::kComment ? 1 : 0);
    blank_[i + 1] = blank_[i] + (kinds[i] == LineKind::kBlank ? 1 : 0);
  }
}

LocMetrics LineTally::range(std::int64_t first, std::int64_t last) const {
  auto f = static_cast<std::size_t>(first - 1);
  auto l = static_cast<std::size_t>(last);
  return LocMetrics{code_[l] - code_[f], comment_[l] - comment_[f], blank_[l] - blank_[f]};
}

}  // namespace detail

std::int64_t count_lines(std::string_view fileText) noexcept {
  std::int64_t lines = 0;
  for (char c : fileText) {
    if (c == '\n') ++lines;
  }
  if (!fileText.empty() && fileText.back() != '\n') ++lines;
  return lines;
}

LocMetrics compute_loc(std::string_view fileText, std::int64_t firstLine,
                       std::int64_t lastLine) {
  const auto kinds = detail::classify_lines(fileText);
  const auto total = static_cast<std::int64_t>(kinds.size());
  if (firstLine < 1 || firstLine > lastLine || lastLine > total) {
    throw Error(ErrorCode::kRange, "line range " + std::to_string(firstLine) + ".." +
                                       std::to_string(lastLine) + " outside 1.." +
                                       std::to_string(total));
  }
  return detail::LineTally(kinds).range(firstLine, lastLine);
}

LocMetrics compute_file_loc(std::string_view fileText) {
  const auto kinds = detail::classify_lines(fileText);
  if (kinds.empty()) {
    return {};
  }
  return detail::LineTally(kinds).range(1, static_cast<std::int64_t>(kinds.size()));
}

}  // namespace codecity
