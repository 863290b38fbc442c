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

#include "codecity/span_store.hpp"

#include <mutex>

#include <fmt/core.h>

namespace codecity {

IngestResult SpanStore::ingest(std::vector<SpanRecord> batch) {
  if (batch.empty()) {
    throw Error(ErrorCode::kInvalidArgument, "span batch is empty");
  }
  const std::string& application = batch.front().application;
  const std::string& commit = batch.front().commit;
  for (std::size_t i = 1; i < batch.size(); ++i) {
    if (batch[i].application != application || batch[i].commit != commit) {
      throw Error(ErrorCode::kInvalidArgument,
                  fmt::format("span {} is stamped {}@{} but the batch is for {}@{}", i,
                              batch[i].application, batch[i].commit, application, commit));
    }
  }

  IngestResult result;
  std::unique_lock lock(mutex_);
  CommitSpans& bucket = commits_[{application, commit}];
  for (std::size_t i = 0; i < batch.size(); ++i) {
    if (auto reason = span_rejection_reason(batch[i])) {
      result.rejected.push_back({i, std::move(*reason)});
      continue;
    }
    ++result.accepted;
    if (!bucket.ids.insert(batch[i].traceId + ":" + batch[i].spanId).second) continue;
    const std::size_t slot = bucket.records.size();
    bucket.byWindow[window_index(batch[i].startNs)].push_back(slot);
    bucket.records.push_back(batch[i]);
    result.newlyStored.push_back(std::move(batch[i]));
  }
  if (bucket.records.empty()) {
    commits_.erase({application, commit});
  }
  return result;
}

std::vector<SpanRecord> SpanStore::spans(const std::string& application,
                                         const std::string& commit) const {
  std::shared_lock lock(mutex_);
  auto it = commits_.find({application, commit});
  return it == commits_.end() ? std::vector<SpanRecord>{} : it->second.records;
}

std::vector<SpanRecord> SpanStore::window_spans(const std::string& application,
                                                const std::string& commit,
                                                std::int64_t windowIndex) const {
  std::shared_lock lock(mutex_);
  std::vector<SpanRecord> out;
  auto it = commits_.find({application, commit});
  if (it == commits_.end()) return out;
  auto w = it->second.byWindow.find(windowIndex);
  if (w == it->second.byWindow.end()) return out;
  out.reserve(w->second.size());
  for (auto slot : w->second) out.push_back(it->second.records[slot]);
  return out;
}

std::vector<std::int64_t> SpanStore::windows(const std::string& application,
                                             const std::string& commit) const {
  std::shared_lock lock(mutex_);
  std::vector<std::int64_t> out;
  auto it = commits_.find({application, commit});
  if (it == commits_.end()) return out;
  for (const auto& [window, slots] : it->second.byWindow) out.push_back(window);
  return out;
}

std::size_t SpanStore::size(const std::string& application, const std::string& commit) const {
  std::shared_lock lock(mutex_);
  auto it = commits_.find({application, commit});
  return it == commits_.end() ? 0 : it->second.records.size();
}

std::set<std::string> SpanStore::applications() const {
  std::shared_lock lock(mutex_);
  std::set<std::string> out;
  for (const auto& [key, bucket] : commits_) out.insert(key.first);
  return out;
}

std::optional<RuntimeSnapshot> SpanStore::runtime_snapshot(const std::string& application,
                                                           const std::string& commit,
                                                           std::int64_t windowIndex) const {
  std::vector<SpanRecord> all;
  std::vector<SpanRecord> in_window;
  {
    std::shared_lock lock(mutex_);
    auto it = commits_.find({application, commit});
    if (it == commits_.end()) return std::nullopt;
    auto w = it->second.byWindow.find(windowIndex);
    if (w == it->second.byWindow.end()) return std::nullopt;
    for (auto slot : w->second) in_window.push_back(it->second.records[slot]);
    // Callers may have started in another window.
    for (const auto& [window, slots] : it->second.byWindow) {
      if (window == windowIndex) continue;
      for (auto slot : slots) all.push_back(it->second.records[slot]);
    }
  }
  return aggregate_window(application, commit, windowIndex, in_window, all);
}

}  // namespace codecity
