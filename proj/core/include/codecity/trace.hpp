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

#include <compare>
#include <cstdint>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "codecity/error.hpp"

namespace codecity {

struct SpanAttrs {
  std::string className;  // fully-qualified
  std::string method;
  std::optional<std::string> instanceId;

  friend bool operator==(const SpanAttrs&, const SpanAttrs&) = default;
};

/// One timed method execution, stamped with the commit it was recorded for.
struct SpanRecord {
  std::string traceId;  // 32 lowercase hex
  std::string spanId;   // 16 lowercase hex
  std::optional<std::string> parentSpanId;
  std::int64_t startNs = 0;
  std::int64_t endNs = 0;
  SpanAttrs attrs;
  std::string application;
  std::string commit;

  friend bool operator==(const SpanRecord&, const SpanRecord&) = default;
};

/// Runtime snapshots cover fixed, epoch-aligned windows of this length.
inline constexpr std::int64_t kWindowNs = 10'000'000'000;

/// floor(startNs / kWindowNs). Throws kInvalidArgument for negative input.
std::int64_t window_index(std::int64_t startNs);

/// Rejection reason for a span (e.g. "negative-duration"), or nullopt when
/// the span is valid.
std::optional<std::string> span_rejection_reason(const SpanRecord& span);

// ---------------------------------------------------------------------------
// Trace reconstruction

struct SpanNode {
  SpanRecord span;
  std::optional<std::size_t> parent;  // index into TraceTree::nodes
  std::vector<std::size_t> children;  // ordered by (startNs, spanId)
  bool orphan = false;                // parent id given but not present
};

struct TraceTree {
  std::string traceId;
  std::vector<SpanNode> nodes;
  std::vector<std::size_t> roots;  // ordered by (startNs, spanId)

  /// Longest root-to-leaf path, counted in nodes.
  [[nodiscard]] std::size_t depth() const;
  [[nodiscard]] std::size_t orphan_count() const;
};

/// Links the spans of one trace into a forest. A span whose parent is
/// missing becomes a flagged orphan root. Throws kInvalidArgument for an
/// empty input, mixed trace ids or repeated span ids, and kCycle (naming
/// the spans involved) when parent links form a cycle.
TraceTree reconstruct_trace(std::span<const SpanRecord> spans);

struct EdgeKey {
  std::string callerClass;
  std::string callerMethod;
  std::string calleeClass;
  std::string calleeMethod;

  friend auto operator<=>(const EdgeKey&, const EdgeKey&) = default;
};

/// One occurrence per parent->child pair whose classes differ, summed per
/// key and sorted by key.
std::vector<std::pair<EdgeKey, std::int64_t>> derive_edges(const TraceTree& tree);

// ---------------------------------------------------------------------------
// Aggregation

struct MethodKey {
  std::string className;
  std::string method;

  friend auto operator<=>(const MethodKey&, const MethodKey&) = default;
};

struct RuntimeSnapshot {
  std::string application;
  std::string commit;
  std::int64_t windowIndex = 0;
  std::int64_t windowNs = kWindowNs;
  std::map<std::string, std::int64_t> classInstances;
  std::map<MethodKey, std::int64_t> methodCalls;
  std::map<EdgeKey, std::int64_t> edges;

  friend bool operator==(const RuntimeSnapshot&, const RuntimeSnapshot&) = default;
};

/// Aggregates the spans that start in `windowIndex`. `context` holds other
/// spans of the same commit and is only consulted to find callers that
/// started outside the window; an edge is attributed to the window of its
/// callee. Throws kContractViolation when a window span lies outside the
/// window.
RuntimeSnapshot aggregate_window(std::string_view application, std::string_view commit,
                                 std::int64_t windowIndex,
                                 std::span<const SpanRecord> windowSpans,
                                 std::span<const SpanRecord> context = {});

}  // namespace codecity
