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

#include "codecity/trace.hpp"

#include <algorithm>
#include <set>
#include <unordered_map>

#include <fmt/core.h>

namespace codecity {
namespace {

bool is_lower_hex(std::string_view s, std::size_t length) {
  return s.size() == length && std::all_of(s.begin(), s.end(), [](char c) {
           return (c >= '0' && c <= '9') || (c >= 'a' && c <= 'f');
         });
}

std::string span_key(std::string_view traceId, std::string_view spanId) {
  std::string key;
  key.reserve(traceId.size() + spanId.size() + 1);
  key.append(traceId).append(":").append(spanId);
  return key;
}

}  // namespace

std::int64_t window_index(std::int64_t startNs) {
  if (startNs < 0) {
    throw Error(ErrorCode::kInvalidArgument,
                fmt::format("span start {} ns precedes the epoch", startNs));
  }
  return startNs / kWindowNs;
}

std::optional<std::string> span_rejection_reason(const SpanRecord& span) {
  if (!is_lower_hex(span.traceId, 32)) return "malformed-trace-id";
  if (!is_lower_hex(span.spanId, 16)) return "malformed-span-id";
  if (span.parentSpanId && !is_lower_hex(*span.parentSpanId, 16)) {
    return "malformed-parent-span-id";
  }
  if (span.startNs < 0) return "negative-start";
  if (span.endNs < span.startNs) return "negative-duration";
  if (span.attrs.className.empty()) return "missing-class";
  if (span.attrs.method.empty()) return "missing-method";
  if (!is_lower_hex(span.commit, 40)) return "malformed-commit";
  if (span.application.empty()) return "missing-application";
  return std::nullopt;
}

std::size_t TraceTree::depth() const {
  std::size_t best = 0;
  std::vector<std::pair<std::size_t, std::size_t>> stack;
  for (auto r : roots) stack.emplace_back(r, 1);
  while (!stack.empty()) {
    auto [node, d] = stack.back();
    stack.pop_back();
    best = std::max(best, d);
    for (auto c : nodes[node].children) stack.emplace_back(c, d + 1);
  }
  return best;
}

std::size_t TraceTree::orphan_count() const {
  return static_cast<std::size_t>(
      std::count_if(nodes.begin(), nodes.end(), [](const SpanNode& n) { return n.orphan; }));
}

TraceTree reconstruct_trace(std::span<const SpanRecord> spans) {
  if (spans.empty()) {
    throw Error(ErrorCode::kInvalidArgument, "cannot reconstruct a trace from zero spans");
  }
  TraceTree tree;
  tree.traceId = spans.front().traceId;
  tree.nodes.reserve(spans.size());

  std::unordered_map<std::string_view, std::size_t> by_id;
  for (const auto& span : spans) {
    if (span.traceId != tree.traceId) {
      throw Error(ErrorCode::kInvalidArgument,
                  fmt::format("span {} belongs to trace {}, not {}", span.spanId, span.traceId,
                              tree.traceId));
    }
    tree.nodes.push_back(SpanNode{span, std::nullopt, {}, false});
  }
  for (std::size_t i = 0; i < tree.nodes.size(); ++i) {
    if (!by_id.emplace(tree.nodes[i].span.spanId, i).second) {
      throw Error(ErrorCode::kInvalidArgument,
                  fmt::format("span id {} repeated in trace {}", tree.nodes[i].span.spanId,
                              tree.traceId));
    }
  }

  for (std::size_t i = 0; i < tree.nodes.size(); ++i) {
    SpanNode& node = tree.nodes[i];
    if (!node.span.parentSpanId) {
      tree.roots.push_back(i);
      continue;
    }
    auto it = by_id.find(*node.span.parentSpanId);
    if (it == by_id.end()) {
      node.orphan = true;
      tree.roots.push_back(i);
    } else {
      node.parent = it->second;
      tree.nodes[it->second].children.push_back(i);
    }
  }

  auto earlier = [&](std::size_t a, std::size_t b) {
    const auto& sa = tree.nodes[a].span;
    const auto& sb = tree.nodes[b].span;
    return std::tie(sa.startNs, sa.spanId) < std::tie(sb.startNs, sb.spanId);
  };
  std::sort(tree.roots.begin(), tree.roots.end(), earlier);
  for (auto& node : tree.nodes) std::sort(node.children.begin(), node.children.end(), earlier);

  // Whatever is not reachable from a root hangs on a parent cycle.
  std::vector<bool> reached(tree.nodes.size(), false);
  std::vector<std::size_t> stack(tree.roots.begin(), tree.roots.end());
  while (!stack.empty()) {
    auto n = stack.back();
    stack.pop_back();
    reached[n] = true;
    for (auto c : tree.nodes[n].children) stack.push_back(c);
  }
  std::set<std::string> cyclic;
  for (std::size_t i = 0; i < reached.size(); ++i) {
    if (!reached[i]) cyclic.insert(tree.nodes[i].span.spanId);
  }
  if (!cyclic.empty()) {
    std::string names;
    for (const auto& id : cyclic) {
      if (!names.empty()) names += ", ";
      names += id;
    }
    throw Error(ErrorCode::kCycle,
                fmt::format("trace {}: parent links form a cycle among spans {}", tree.traceId, names));
  }
  return tree;
}

std::vector<std::pair<EdgeKey, std::int64_t>> derive_edges(const TraceTree& tree) {
  std::map<EdgeKey, std::int64_t> counts;
  for (const auto& node : tree.nodes) {
    if (!node.parent) continue;
    const auto& caller = tree.nodes[*node.parent].span.attrs;
    const auto& callee = node.span.attrs;
    if (caller.className == callee.className) continue;
    ++counts[EdgeKey{caller.className, caller.method, callee.className, callee.method}];
  }
  return {counts.begin(), counts.end()};
}

RuntimeSnapshot aggregate_window(std::string_view application, std::string_view commit,
                                 std::int64_t windowIndex,
                                 std::span<const SpanRecord> windowSpans,
                                 std::span<const SpanRecord> context) {
  RuntimeSnapshot rs;
  rs.application = std::string(application);
  rs.commit = std::string(commit);
  rs.windowIndex = windowIndex;

  std::unordered_map<std::string, const SpanRecord*> by_id;
  by_id.reserve(windowSpans.size() + context.size());
  for (const auto& s : context) by_id.emplace(span_key(s.traceId, s.spanId), &s);
  for (const auto& s : windowSpans) by_id.emplace(span_key(s.traceId, s.spanId), &s);

  std::map<std::string, std::set<std::string>> instance_ids;
  std::map<std::string, std::int64_t> class_calls;
  for (const auto& s : windowSpans) {
    if (window_index(s.startNs) != windowIndex) {
      throw Error(ErrorCode::kContractViolation,
                  fmt::format("span {} starts at {} ns, outside window {}", s.spanId, s.startNs,
                              windowIndex));
    }
    ++rs.methodCalls[MethodKey{s.attrs.className, s.attrs.method}];
    ++class_calls[s.attrs.className];
    if (s.attrs.instanceId) instance_ids[s.attrs.className].insert(*s.attrs.instanceId);

    if (!s.parentSpanId) continue;
    auto it = by_id.find(span_key(s.traceId, *s.parentSpanId));
    if (it == by_id.end()) continue;
    const SpanAttrs& caller = it->second->attrs;
    if (caller.className == s.attrs.className) continue;
    ++rs.edges[EdgeKey{caller.className, caller.method, s.attrs.className, s.attrs.method}];
    rs.classInstances.try_emplace(caller.className, 0);
  }
  for (const auto& [cls, calls] : class_calls) {
    auto ids = instance_ids.find(cls);
    rs.classInstances[cls] =
        ids != instance_ids.end() ? static_cast<std::int64_t>(ids->second.size()) : calls;
  }
  return rs;
}

}  // namespace codecity
