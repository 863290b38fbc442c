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

#include <cstddef>
#include <map>
#include <optional>
#include <set>
#include <shared_mutex>
#include <string>
#include <unordered_set>
#include <utility>
#include <vector>

#include "codecity/trace.hpp"

namespace codecity {

struct SpanRejection {
  std::size_t index;
  std::string reason;

  friend bool operator==(const SpanRejection&, const SpanRejection&) = default;
};

struct IngestResult {
  std::size_t accepted = 0;  // includes re-posted duplicates
  std::vector<SpanRejection> rejected;
  std::vector<SpanRecord> newlyStored;
};

/// In-memory span store keyed by (application, commit), deduplicating on
/// (traceId, spanId). Safe for concurrent ingest; readers receive copies.
class SpanStore {
 public:
  /// Throws kInvalidArgument for an empty batch or a batch mixing
  /// applications or commits; nothing is stored in that case.
  IngestResult ingest(std::vector<SpanRecord> batch);

  [[nodiscard]] std::vector<SpanRecord> spans(const std::string& application,
                                              const std::string& commit) const;
  [[nodiscard]] std::vector<SpanRecord> window_spans(const std::string& application,
                                                     const std::string& commit,
                                                     std::int64_t windowIndex) const;
  [[nodiscard]] std::vector<std::int64_t> windows(const std::string& application,
                                                  const std::string& commit) const;
  [[nodiscard]] std::size_t size(const std::string& application, const std::string& commit) const;
  [[nodiscard]] std::set<std::string> applications() const;

  /// Aggregate for one window, or nullopt when no span starts in it.
  [[nodiscard]] std::optional<RuntimeSnapshot> runtime_snapshot(const std::string& application,
                                                                const std::string& commit,
                                                                std::int64_t windowIndex) const;

 private:
  struct CommitSpans {
    std::vector<SpanRecord> records;
    std::unordered_set<std::string> ids;  // traceId + ':' + spanId
    std::map<std::int64_t, std::vector<std::size_t>> byWindow;
  };

  mutable std::shared_mutex mutex_;
  std::map<std::pair<std::string, std::string>, CommitSpans> commits_;
};

}  // namespace codecity
