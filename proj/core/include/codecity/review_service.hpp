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
#include <functional>
#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "codecity/comparison.hpp"
#include "codecity/file_store.hpp"
#include "codecity/layout.hpp"

namespace codecity {

struct CommitInfo {
  std::string commit;
  std::string branch;
  std::int64_t receivedAtMs = 0;
  bool hasRuntime = false;
};

struct StoreOutcome {
  CommitRef commitRef;
  bool created = false;  // false when an identical structure was already stored
};

struct ComparisonRequest {
  std::string application;
  std::string base;
  std::string target;
  std::optional<std::int64_t> baseWindow;
  std::optional<std::int64_t> targetWindow;
  FilterMode filter;
};

struct ComparisonResult {
  ComparisonModel model;
  CityLayout layout;
  std::vector<std::string> warnings;
};

/// Milliseconds since the epoch.
using Clock = std::function<std::int64_t()>;
std::int64_t system_clock_ms();

/// Backend operations, independent of the HTTP transport.
class ReviewService {
 public:
  explicit ReviewService(std::filesystem::path dataDir, Clock clock = system_clock_ms);

  /// Accepts a `codecity-structure/1` document. Throws kSchema or
  /// kConflict.
  StoreOutcome store_structure(std::string_view documentText);

  /// Accepts a `codecity-spans/1` document.
  IngestResult ingest_spans(std::string_view documentText);

  [[nodiscard]] std::vector<std::string> applications() const;
  [[nodiscard]] std::vector<CommitInfo> commits(const std::string& application) const;
  [[nodiscard]] std::vector<std::int64_t> windows(const std::string& application,
                                                  const std::string& commit) const;

  /// Most recently received commit; ties on the receipt time go to the
  /// larger commit hash. Throws kNotFound.
  [[nodiscard]] CommitRef latest_commit(const std::string& application) const;

  /// diff_structures -> diff_runtime -> merge -> filter -> layout, computed
  /// on demand. Throws kNotFound for an unknown commit and kInvalidMode for
  /// an invalid filter.
  [[nodiscard]] ComparisonResult get_comparison(const ComparisonRequest& request) const;

  [[nodiscard]] const FileStore& store() const noexcept { return store_; }

 private:
  FileStore store_;
  Clock clock_;
};

/// HTTP front of a ReviewService (routes under /api/v1).
class HttpServer {
 public:
  explicit HttpServer(ReviewService& service);
  ~HttpServer();
  HttpServer(const HttpServer&) = delete;
  HttpServer& operator=(const HttpServer&) = delete;

  /// Binds `host:port`; port 0 picks a free port. Returns the bound port.
  int bind(const std::string& host, int port);
  /// Serves until stop(); call after bind().
  void serve();
  /// serve() on a background thread; returns once the server accepts.
  void start();
  void stop();

 private:
  struct Impl;
  std::unique_ptr<Impl> impl_;
};

/// Status code used by the HTTP layer for an error code.
int http_status_for(ErrorCode code) noexcept;

}  // namespace codecity
