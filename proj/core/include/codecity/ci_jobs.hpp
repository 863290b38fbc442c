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
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "codecity/error.hpp"
#include "codecity/ghs_client.hpp"

namespace codecity {

/// Process exit statuses shared by the CLI and the CI jobs.
namespace exit_status {
inline constexpr int kOk = 0;
inline constexpr int kUsage = 2;
inline constexpr int kIo = 3;
inline constexpr int kInput = 4;  // snapshot conflict or malformed fixture
inline constexpr int kRemote = 5;
inline constexpr int kCredentials = 6;
inline constexpr int kNotFound = 7;
}  // namespace exit_status

/// Values given on the command line; unset ones fall back to CI variables.
struct CiOptions {
  std::string application;
  std::optional<std::string> commit;
  std::optional<std::string> branch;
  std::optional<std::string> parentCommit;
  std::optional<std::string> apiUrl;
};

struct CiContext {
  std::string application;
  std::string commit;
  std::string branch;
  std::optional<std::string> parentCommit;
  std::string apiUrl;  // empty when not needed
};

/// Flags win over `CI_COMMIT_SHA`, `CI_COMMIT_BRANCH` and `CODECITY_API_URL`.
/// The branch defaults to "HEAD". Throws kInvalidArgument when the commit is
/// missing or malformed and kConfig when `requireApi` is set and no API URL
/// is known.
CiContext resolve_ci_context(const CiOptions& options, const EnvLookup& env = process_env,
                             bool requireApi = true);

/// `SOURCE_DATE_EPOCH` in milliseconds when set, else the wall clock.
std::int64_t analysis_timestamp_ms(const EnvLookup& env = process_env);

/// Maps a library error to the exit status the CLI reports for it.
int exit_status_for(const Error& error) noexcept;

inline constexpr std::size_t kReplayBatchSize = 1000;

/// Analyzes `rootDir` and POSTs the structure document to the API.
int run_analyze_job(const CiContext& ctx, const std::filesystem::path& rootDir,
                    std::ostream& log, const EnvLookup& env = process_env);

/// Stamps every span of an unstamped `codecity-spans/1` fixture with the
/// job's application and commit, multiplies timestamps by `timeScale` and
/// POSTs them in batches of at most kReplayBatchSize spans.
int run_trace_replay(const CiContext& ctx, const std::filesystem::path& fixtureFile,
                     double timeScale, std::ostream& log);

/// Pure part of the replay: the batches that would be posted.
std::vector<std::string> replay_batches(const CiContext& ctx, std::string_view fixtureText,
                                        double timeScale);

struct LinkJob {
  GhsConfig ghs;
  std::string frontendUrl;
  std::string baseCommit;
  std::string targetCommit;
  std::optional<std::int64_t> baseWindow;
  std::optional<std::int64_t> targetWindow;
};

/// Builds the deep link and upserts it into the change-request description.
/// When `ctx.apiUrl` is set, both commits must be known to the backend.
int run_link_job(const CiContext& ctx, const LinkJob& job, std::ostream& log,
                 const EnvLookup& env = process_env);

}  // namespace codecity
