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

#include <string>
#include <string_view>
#include <vector>

#include "codecity/trace.hpp"

namespace codecity {

inline constexpr std::string_view kSpansSchema = "codecity-spans/1";

/// A `codecity-spans/1` document. Every span carries the document's
/// application and commit.
struct SpanDocument {
  std::string application;
  std::string commit;
  std::vector<SpanRecord> spans;
};

enum class CommitStamp { kRequired, kOptional };

/// Parses the document shape; value checks (hex ids, durations) are left to
/// ingest so they can be rejected per record. Throws kSchema on a shape
/// violation. With CommitStamp::kOptional, missing application/commit
/// fields are allowed (replay fixtures) and yield empty strings.
SpanDocument parse_spans_document(std::string_view text,
                                  CommitStamp stamp = CommitStamp::kRequired);

/// Compact single-line document.
std::string emit_spans_document(const SpanDocument& document);

}  // namespace codecity
