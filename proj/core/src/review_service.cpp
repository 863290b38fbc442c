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

#include "codecity/review_service.hpp"

#include <algorithm>
#include <chrono>

#include <fmt/core.h>

#include "codecity/spans_document.hpp"
#include "codecity/structure_document.hpp"

namespace codecity {

std::int64_t system_clock_ms() {
  return std::chrono::duration_cast<std::chrono::milliseconds>(
             std::chrono::system_clock::now().time_since_epoch())
      .count();
}

ReviewService::ReviewService(std::filesystem::path dataDir, Clock clock)
    : store_(std::move(dataDir)), clock_(std::move(clock)) {}

StoreOutcome ReviewService::store_structure(std::string_view documentText) {
  StructuralSnapshot snapshot = parse_structure_document(documentText);
  const auto result = store_.put_structure(snapshot, clock_());
  return StoreOutcome{snapshot.commitRef, result == FileStore::PutResult::kStored};
}

IngestResult ReviewService::ingest_spans(std::string_view documentText) {
  SpanDocument doc = parse_spans_document(documentText);
  try {
    validate_application_name(doc.application);
  } catch (const Error& e) {
    throw Error(ErrorCode::kSchema, e.what());
  }
  if (doc.spans.empty()) {
    throw Error(ErrorCode::kSchema, "spans document holds no spans");
  }
  return store_.ingest_spans(std::move(doc.spans));
}

std::vector<std::string> ReviewService::applications() const {
  auto apps = store_.applications();
  return {apps.begin(), apps.end()};
}

std::vector<CommitInfo> ReviewService::commits(const std::string& application) const {
  std::vector<CommitInfo> out;
  for (const auto& c : store_.commits(application)) {
    out.push_back({c.ref.commit, c.ref.branch, c.receivedAtMs,
                   store_.spans().size(application, c.ref.commit) > 0});
  }
  return out;
}

std::vector<std::int64_t> ReviewService::windows(const std::string& application,
                                                 const std::string& commit) const {
  return store_.spans().windows(application, commit);
}

CommitRef ReviewService::latest_commit(const std::string& application) const {
  auto commits = store_.commits(application);
  if (commits.empty()) {
    throw Error(ErrorCode::kNotFound, fmt::format("no commits stored for '{}'", application));
  }
  return commits.back().ref;
}

ComparisonResult ReviewService::get_comparison(const ComparisonRequest& request) const {
  request.filter.validate();
  auto base = store_.structure(request.application, request.base);
  if (!base) {
    throw Error(ErrorCode::kNotFound, fmt::format("commit {} of '{}' has not been analyzed",
                                                  request.base, request.application));
  }
  auto target = store_.structure(request.application, request.target);
  if (!target) {
    throw Error(ErrorCode::kNotFound, fmt::format("commit {} of '{}' has not been analyzed",
                                                  request.target, request.application));
  }

  ComparisonResult result;
  auto runtime_side = [&](const std::string& commit, const std::optional<std::int64_t>& window) {
    std::optional<RuntimeSnapshot> rs;
    if (!window) return rs;
    rs = store_.spans().runtime_snapshot(request.application, commit, *window);
    if (!rs) {
      result.warnings.push_back(
          fmt::format("no runtime data for commit {} in window {}", commit, *window));
    }
    return rs;
  };
  const auto base_rs = runtime_side(request.base, request.baseWindow);
  const auto target_rs = runtime_side(request.target, request.targetWindow);

  const StructuralDiff structure = diff_structures(*base, *target);
  std::optional<RuntimeDiff> runtime;
  if (base_rs || target_rs) {
    runtime = diff_runtime(base_rs ? &*base_rs : nullptr, target_rs ? &*target_rs : nullptr);
  }
  const ComparisonModel merged =
      merge_comparison(structure, runtime ? &*runtime : nullptr,
                       ComparisonInputs{base->commitRef, target->commitRef,
                                        base_rs ? request.baseWindow : std::nullopt,
                                        target_rs ? request.targetWindow : std::nullopt});
  result.model = apply_filter(merged, request.filter);
  result.layout = layout_city(result.model);
  result.warnings.insert(result.warnings.end(), result.layout.warnings.begin(),
                         result.layout.warnings.end());
  return result;
}

int http_status_for(ErrorCode code) noexcept {
  switch (code) {
    case ErrorCode::kSchema: return 422;
    case ErrorCode::kConflict: return 409;
    case ErrorCode::kNotFound: return 404;
    case ErrorCode::kInvalidMode:
    case ErrorCode::kInvalidArgument:
    case ErrorCode::kInvalidIdentifier:
    case ErrorCode::kRange:
    case ErrorCode::kParse:
      return 400;
    default:
      return 500;
  }
}

}  // namespace codecity
