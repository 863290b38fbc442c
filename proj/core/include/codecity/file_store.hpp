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
#include <filesystem>
#include <map>
#include <mutex>
#include <optional>
#include <set>
#include <shared_mutex>
#include <string>
#include <vector>

#include "codecity/code_agent.hpp"
#include "codecity/span_store.hpp"

namespace codecity {

struct StoredCommit {
  CommitRef ref;
  std::int64_t receivedAtMs = 0;
};

/// File-backed persistence. Layout under the data directory:
///
///   apps/<app>/commits/<commit>/structure.json   canonical structure document
///   apps/<app>/commits/<commit>/received.json    receipt metadata
///   apps/<app>/commits/<commit>/spans/<window>.jsonl
///                                                append log, one spans document
///                                                per accepted batch
///
/// Everything is loaded into memory on construction.
class FileStore {
 public:
  explicit FileStore(std::filesystem::path dataDir);

  enum class PutResult { kStored, kAlreadyPresent };

  /// Throws kConflict when a different structure is already stored for the
  /// same (application, commit). The analysis timestamp is not compared.
  PutResult put_structure(const StructuralSnapshot& snapshot, std::int64_t receivedAtMs);

  [[nodiscard]] std::optional<StructuralSnapshot> structure(const std::string& application,
                                                            const std::string& commit) const;

  /// Commits with a stored structure, ordered by (receivedAtMs, commit).
  [[nodiscard]] std::vector<StoredCommit> commits(const std::string& application) const;

  IngestResult ingest_spans(std::vector<SpanRecord> batch);

  [[nodiscard]] const SpanStore& spans() const noexcept { return spans_; }

  [[nodiscard]] std::set<std::string> applications() const;

  [[nodiscard]] const std::filesystem::path& data_dir() const noexcept { return dataDir_; }

 private:
  struct StructureEntry {
    StructuralSnapshot snapshot;
    std::int64_t receivedAtMs = 0;
  };

  [[nodiscard]] std::filesystem::path commit_dir(const std::string& application,
                                                 const std::string& commit) const;
  void load();

  std::filesystem::path dataDir_;
  mutable std::shared_mutex structuresMutex_;
  std::map<std::pair<std::string, std::string>, StructureEntry> structures_;
  std::mutex appendMutex_;
  SpanStore spans_;
};

}  // namespace codecity
