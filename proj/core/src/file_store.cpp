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

#include "codecity/file_store.hpp"

#include <algorithm>
#include <fstream>
#include <tuple>
#include <sstream>

#include <fmt/core.h>

#include "codecity/spans_document.hpp"
#include "codecity/structure_document.hpp"
#include "json_util.hpp"

namespace fs = std::filesystem;

namespace codecity {
namespace {

std::string read_text(const fs::path& file) {
  std::ifstream in(file, std::ios::binary);
  if (!in) throw Error(ErrorCode::kIo, fmt::format("cannot read {}", file.string()));
  std::ostringstream buf;
  buf << in.rdbuf();
  return std::move(buf).str();
}

void write_atomically(const fs::path& file, std::string_view text) {
  fs::create_directories(file.parent_path());
  const fs::path tmp = file.string() + ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    out << text;
    if (!out) throw Error(ErrorCode::kIo, fmt::format("cannot write {}", tmp.string()));
  }
  fs::rename(tmp, file);
}

}  // namespace

FileStore::FileStore(fs::path dataDir) : dataDir_(std::move(dataDir)) {
  std::error_code ec;
  fs::create_directories(dataDir_ / "apps", ec);
  if (ec) {
    throw Error(ErrorCode::kIo,
                fmt::format("cannot create data directory {}: {}", dataDir_.string(), ec.message()));
  }
  load();
}

fs::path FileStore::commit_dir(const std::string& application, const std::string& commit) const {
  return dataDir_ / "apps" / application / "commits" / commit;
}

void FileStore::load() {
  struct Loaded {
    StructuralSnapshot snapshot;
    std::int64_t receivedAtMs;
  };
  std::vector<Loaded> loaded;
  for (const auto& app_dir : fs::directory_iterator(dataDir_ / "apps")) {
    const fs::path commits = app_dir.path() / "commits";
    if (!fs::is_directory(commits)) continue;
    for (const auto& commit_dir : fs::directory_iterator(commits)) {
      const fs::path structure = commit_dir.path() / "structure.json";
      if (fs::exists(structure)) {
        const auto meta = detail::parse_json(read_text(commit_dir.path() / "received.json"),
                                             "receipt metadata");
        loaded.push_back({parse_structure_document(read_text(structure)),
                          detail::int_field(meta, "receivedAtMs", "receipt metadata")});
      }
      const fs::path spans = commit_dir.path() / "spans";
      if (!fs::is_directory(spans)) continue;
      for (const auto& log : fs::directory_iterator(spans)) {
        std::istringstream lines(read_text(log.path()));
        std::string line;
        while (std::getline(lines, line)) {
          if (line.empty()) continue;
          auto doc = parse_spans_document(line);
          if (!doc.spans.empty()) spans_.ingest(std::move(doc.spans));
        }
      }
    }
  }
  for (auto& l : loaded) {
    auto key = std::make_pair(l.snapshot.commitRef.application, l.snapshot.commitRef.commit);
    structures_.emplace(std::move(key),
                        StructureEntry{std::move(l.snapshot), l.receivedAtMs});
  }
}

FileStore::PutResult FileStore::put_structure(const StructuralSnapshot& snapshot,
                                              std::int64_t receivedAtMs) {
  const auto& ref = snapshot.commitRef;
  ref.validate();
  std::unique_lock lock(structuresMutex_);
  auto key = std::make_pair(ref.application, ref.commit);
  if (auto it = structures_.find(key); it != structures_.end()) {
    if (same_structure(it->second.snapshot, snapshot)) return PutResult::kAlreadyPresent;
    throw Error(ErrorCode::kConflict,
                fmt::format("commit {} of {} is already stored with different content", ref.commit,
                            ref.application));
  }
  const fs::path dir = commit_dir(ref.application, ref.commit);
  detail::Json meta{{"receivedAtMs", receivedAtMs}};
  write_atomically(dir / "received.json", detail::dump_json(meta) + "\n");
  write_atomically(dir / "structure.json", emit_snapshot_document(snapshot));
  structures_.emplace(std::move(key), StructureEntry{snapshot, receivedAtMs});
  return PutResult::kStored;
}

std::optional<StructuralSnapshot> FileStore::structure(const std::string& application,
                                                       const std::string& commit) const {
  std::shared_lock lock(structuresMutex_);
  auto it = structures_.find({application, commit});
  if (it == structures_.end()) return std::nullopt;
  return it->second.snapshot;
}

std::vector<StoredCommit> FileStore::commits(const std::string& application) const {
  std::vector<const StructureEntry*> entries;
  std::shared_lock lock(structuresMutex_);
  for (auto it = structures_.lower_bound({application, ""});
       it != structures_.end() && it->first.first == application; ++it) {
    entries.push_back(&it->second);
  }
  std::sort(entries.begin(), entries.end(), [](const StructureEntry* a, const StructureEntry* b) {
    return std::tie(a->receivedAtMs, a->snapshot.commitRef.commit) <
           std::tie(b->receivedAtMs, b->snapshot.commitRef.commit);
  });
  std::vector<StoredCommit> out;
  for (const auto* e : entries) out.push_back({e->snapshot.commitRef, e->receivedAtMs});
  return out;
}

IngestResult FileStore::ingest_spans(std::vector<SpanRecord> batch) {
  if (!batch.empty()) validate_application_name(batch.front().application);
  std::lock_guard lock(appendMutex_);
  IngestResult result = spans_.ingest(std::move(batch));
  if (result.newlyStored.empty()) return result;

  std::map<std::int64_t, SpanDocument> by_window;
  for (const auto& span : result.newlyStored) {
    auto& doc = by_window[window_index(span.startNs)];
    doc.application = span.application;
    doc.commit = span.commit;
    doc.spans.push_back(span);
  }
  for (const auto& [window, doc] : by_window) {
    const fs::path log = commit_dir(doc.application, doc.commit) / "spans" /
                         fmt::format("{}.jsonl", window);
    fs::create_directories(log.parent_path());
    std::ofstream out(log, std::ios::binary | std::ios::app);
    out << emit_spans_document(doc) << '\n';
    if (!out) throw Error(ErrorCode::kIo, fmt::format("cannot append to {}", log.string()));
  }
  return result;
}

std::set<std::string> FileStore::applications() const {
  std::set<std::string> apps = spans_.applications();
  std::shared_lock lock(structuresMutex_);
  for (const auto& [key, entry] : structures_) apps.insert(key.first);
  return apps;
}

}  // namespace codecity
