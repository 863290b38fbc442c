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

#include "codecity/ci_jobs.hpp"

#include <chrono>
#include <cmath>
#include <fstream>
#include <ostream>
#include <sstream>

#include <fmt/core.h>

#include "codecity/code_agent.hpp"
#include "codecity/deep_link.hpp"
#include "codecity/http_client.hpp"
#include "codecity/spans_document.hpp"
#include "codecity/structure_document.hpp"
#include "json_util.hpp"

namespace codecity {

namespace {

using detail::Json;

constexpr const char* kJsonType = "application/json";

std::optional<std::string> non_empty(const std::optional<std::string>& v) {
  if (v && !v->empty()) return v;
  return std::nullopt;
}

std::string read_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorCode::kIo, fmt::format("cannot read {}", path.string()));
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

std::int64_t scale_ns(std::int64_t ns, double factor) {
  return static_cast<std::int64_t>(std::llround(static_cast<double>(ns) * factor));
}

}  // namespace

CiContext resolve_ci_context(const CiOptions& options, const EnvLookup& env, bool requireApi) {
  CiContext ctx;
  ctx.application = options.application;
  validate_application_name(ctx.application);

  const auto commit = non_empty(options.commit) ? options.commit : non_empty(env("CI_COMMIT_SHA"));
  if (!commit) {
    throw Error(ErrorCode::kInvalidArgument, "no commit given: pass --commit or set CI_COMMIT_SHA");
  }
  if (!is_commit_hash(*commit)) {
    throw Error(ErrorCode::kInvalidArgument,
                fmt::format("commit '{}' is not a 40-char lowercase hex hash", *commit));
  }
  ctx.commit = *commit;

  const auto branch =
      non_empty(options.branch) ? options.branch : non_empty(env("CI_COMMIT_BRANCH"));
  ctx.branch = branch.value_or("HEAD");
  ctx.parentCommit = non_empty(options.parentCommit);

  const auto api = non_empty(options.apiUrl) ? options.apiUrl : non_empty(env("CODECITY_API_URL"));
  if (api) ctx.apiUrl = *api;
  if (requireApi && ctx.apiUrl.empty()) {
    throw Error(ErrorCode::kConfig, "no API URL: pass --api or set CODECITY_API_URL");
  }
  return ctx;
}

std::int64_t analysis_timestamp_ms(const EnvLookup& env) {
  if (const auto epoch = non_empty(env("SOURCE_DATE_EPOCH"))) {
    try {
      std::size_t used = 0;
      const long long seconds = std::stoll(*epoch, &used);
      if (used == epoch->size() && seconds >= 0) return seconds * 1000;
    } catch (const std::exception&) {
    }
    throw Error(ErrorCode::kConfig, fmt::format("SOURCE_DATE_EPOCH '{}' is not a number", *epoch));
  }
  return std::chrono::duration_cast<std::chrono::milliseconds>(
             std::chrono::system_clock::now().time_since_epoch())
      .count();
}

int exit_status_for(const Error& error) noexcept {
  switch (error.code()) {
    case ErrorCode::kInvalidArgument:
    case ErrorCode::kInvalidIdentifier:
    case ErrorCode::kInvalidMode:
    case ErrorCode::kConfig:
    case ErrorCode::kParse:
    case ErrorCode::kRange:
      return exit_status::kUsage;
    case ErrorCode::kIo:
      return exit_status::kIo;
    case ErrorCode::kSnapshotConflict:
    case ErrorCode::kSchema:
      return exit_status::kInput;
    case ErrorCode::kCredentials:
      return exit_status::kCredentials;
    case ErrorCode::kNotFound:
      return exit_status::kNotFound;
    case ErrorCode::kConflict:
    case ErrorCode::kTransport:
    case ErrorCode::kCycle:
    case ErrorCode::kContractViolation:
      return exit_status::kRemote;
  }
  return exit_status::kRemote;
}

int run_analyze_job(const CiContext& ctx, const std::filesystem::path& rootDir,
                    std::ostream& log, const EnvLookup& env) {
  try {
    const CommitRef ref{ctx.application, ctx.branch, ctx.commit, ctx.parentCommit};
    const StructuralSnapshot snapshot =
        analyze_source_tree(rootDir, ref, analysis_timestamp_ms(env));
    for (const auto& w : snapshot.warnings) log << "warning: " << w.path << ": " << w.reason << '\n';

    HttpClient client(ctx.apiUrl);
    const HttpResponse res =
        client.post("/api/v1/structure", emit_snapshot_document(snapshot), kJsonType);
    if (!res.ok()) {
      log << fmt::format("error: structure upload rejected with HTTP {}: {}\n", res.status,
                         res.body);
      return exit_status::kRemote;
    }
    log << fmt::format("stored structure of {}@{} ({} files)\n", ctx.application, ctx.commit,
                       snapshot.files.size());
    return exit_status::kOk;
  } catch (const Error& e) {
    log << "error: " << e.what() << '\n';
    return exit_status_for(e);
  }
}

std::vector<std::string> replay_batches(const CiContext& ctx, std::string_view fixtureText,
                                        double timeScale) {
  if (!(timeScale > 0.0) || !std::isfinite(timeScale)) {
    throw Error(ErrorCode::kInvalidArgument,
                fmt::format("time scale must be a positive number, not {}", timeScale));
  }
  SpanDocument fixture = parse_spans_document(fixtureText, CommitStamp::kOptional);

  std::vector<std::string> batches;
  for (std::size_t first = 0; first < fixture.spans.size(); first += kReplayBatchSize) {
    const std::size_t last = std::min(fixture.spans.size(), first + kReplayBatchSize);
    SpanDocument batch{ctx.application, ctx.commit, {}};
    batch.spans.reserve(last - first);
    for (std::size_t i = first; i < last; ++i) {
      SpanRecord span = fixture.spans[i];
      span.application = ctx.application;
      span.commit = ctx.commit;
      span.startNs = scale_ns(span.startNs, timeScale);
      span.endNs = scale_ns(span.endNs, timeScale);
      batch.spans.push_back(std::move(span));
    }
    batches.push_back(emit_spans_document(batch));
  }
  return batches;
}

int run_trace_replay(const CiContext& ctx, const std::filesystem::path& fixtureFile,
                     double timeScale, std::ostream& log) {
  std::vector<std::string> batches;
  try {
    batches = replay_batches(ctx, read_file(fixtureFile), timeScale);
  } catch (const Error& e) {
    log << "error: " << fixtureFile.string() << ": " << e.what() << '\n';
    return exit_status_for(e);
  }

  try {
    HttpClient client(ctx.apiUrl);
    std::size_t accepted = 0;
    for (std::size_t b = 0; b < batches.size(); ++b) {
      const HttpResponse res = client.post("/api/v1/spans", batches[b], kJsonType);
      if (!res.ok()) {
        log << fmt::format("error: span batch {} rejected with HTTP {}: {}\n", b, res.status,
                           res.body);
        return exit_status::kRemote;
      }
      const Json reply = detail::parse_json(res.body, "span upload reply");
      accepted += reply.value("accepted", std::size_t{0});
      if (const auto it = reply.find("rejected"); it != reply.end() && it->is_array()) {
        for (const auto& r : *it) {
          log << fmt::format("warning: batch {} span {} rejected: {}\n", b,
                             r.value("index", std::size_t{0}), r.value("reason", std::string{}));
        }
      }
    }
    log << fmt::format("replayed {} batches, {} spans accepted for {}@{}\n", batches.size(),
                       accepted, ctx.application, ctx.commit);
    return exit_status::kOk;
  } catch (const Error& e) {
    log << "error: " << e.what() << '\n';
    return e.code() == ErrorCode::kSchema ? exit_status::kRemote : exit_status_for(e);
  }
}

int run_link_job(const CiContext& ctx, const LinkJob& job, std::ostream& log,
                 const EnvLookup& env) {
  try {
    if (!ctx.apiUrl.empty()) {
      HttpClient api(ctx.apiUrl);
      const HttpResponse res = api.get(
          fmt::format("/api/v1/applications/{}/commits", percent_encode(ctx.application)));
      if (res.status == 404) {
        log << fmt::format("error: application '{}' is unknown to the backend\n",
                           ctx.application);
        return exit_status::kNotFound;
      }
      if (!res.ok()) {
        log << fmt::format("error: commit listing failed with HTTP {}\n", res.status);
        return exit_status::kRemote;
      }
      const Json commits = detail::parse_json(res.body, "commit listing");
      for (const auto& wanted : {job.baseCommit, job.targetCommit}) {
        bool found = false;
        for (const auto& c : commits) found = found || c.value("commit", std::string{}) == wanted;
        if (!found) {
          log << fmt::format("error: commit {} has no stored structure\n", wanted);
          return exit_status::kNotFound;
        }
      }
    }

    const std::string link = build_deep_link(job.frontendUrl, ctx.application, job.baseCommit,
                                             job.targetCommit, job.baseWindow, job.targetWindow);
    upsert_cr_link(job.ghs, link, env);
    log << "linked " << link << '\n';
    return exit_status::kOk;
  } catch (const Error& e) {
    log << "error: " << e.what() << '\n';
    return exit_status_for(e);
  }
}

}  // namespace codecity
