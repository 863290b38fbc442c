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

#include <csignal>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>

#include <fmt/core.h>

#include "CLI11.hpp"
#include "codecity/ci_jobs.hpp"
#include "codecity/code_agent.hpp"
#include "codecity/http_client.hpp"
#include "codecity/review_service.hpp"
#include "codecity/structure_document.hpp"

namespace {

using namespace codecity;

std::string env_or(const char* name, std::string fallback) {
  if (const auto v = process_env(name); v && !v->empty()) return *v;
  return fallback;
}

std::optional<std::string> opt(const std::string& v) {
  if (v.empty()) return std::nullopt;
  return v;
}

std::optional<std::int64_t> opt_window(std::int64_t v) {
  if (v < 0) return std::nullopt;
  return v;
}

int fail(const Error& e) {
  std::cerr << "error: " << e.what() << '\n';
  return exit_status_for(e);
}

struct AnalyzeArgs {
  std::string root, app, commit, branch, parent, changedList, out, push;
};

int cmd_analyze(const AnalyzeArgs& a) {
  try {
    CiOptions options{a.app, opt(a.commit), opt(a.branch), opt(a.parent), std::nullopt};
    const CiContext ctx = resolve_ci_context(options, process_env, false);

    if (!a.changedList.empty()) {
      std::ifstream in(a.changedList, std::ios::binary);
      if (!in) throw Error(ErrorCode::kIo, fmt::format("cannot read {}", a.changedList));
      std::ostringstream text;
      text << in.rdbuf();
      const auto changed = read_changed_paths(text.str());
      std::size_t sources = 0;
      for (const auto& c : changed) sources += c.path.ends_with(".java") ? 1 : 0;
      std::cerr << fmt::format("{} changed paths ({} java); analyzing the full tree\n",
                               changed.size(), sources);
    }

    if (!a.push.empty()) {
      CiContext pushCtx = ctx;
      pushCtx.apiUrl = a.push;
      return run_analyze_job(pushCtx, a.root, std::cerr);
    }

    const CommitRef ref{ctx.application, ctx.branch, ctx.commit, ctx.parentCommit};
    const StructuralSnapshot snapshot =
        analyze_source_tree(a.root, ref, analysis_timestamp_ms());
    for (const auto& w : snapshot.warnings) std::cerr << "warning: " << w.path << ": " << w.reason << '\n';
    const std::string doc = emit_snapshot_document(snapshot);
    if (a.out == "-") {
      std::cout << doc;
    } else {
      const std::filesystem::path tmp = a.out + ".tmp";
      {
        std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
        out << doc;
        if (!out.flush()) throw Error(ErrorCode::kIo, fmt::format("cannot write {}", a.out));
      }
      std::filesystem::rename(tmp, a.out);
    }
    return exit_status::kOk;
  } catch (const Error& e) {
    return fail(e);
  } catch (const std::filesystem::filesystem_error& e) {
    std::cerr << "error: " << e.what() << '\n';
    return exit_status::kIo;
  }
}

struct ServeArgs {
  std::string listen, dataDir;
};

int cmd_serve(const ServeArgs& a) {
  try {
    const auto colon = a.listen.rfind(':');
    if (colon == std::string::npos) {
      throw Error(ErrorCode::kConfig, fmt::format("listen address '{}' is not host:port", a.listen));
    }
    const std::string host = a.listen.substr(0, colon);
    int port = 0;
    try {
      port = std::stoi(a.listen.substr(colon + 1));
    } catch (const std::exception&) {
      throw Error(ErrorCode::kConfig, fmt::format("listen address '{}' has no port", a.listen));
    }

    sigset_t signals;
    sigemptyset(&signals);
    sigaddset(&signals, SIGINT);
    sigaddset(&signals, SIGTERM);
    pthread_sigmask(SIG_BLOCK, &signals, nullptr);

    ReviewService service(a.dataDir);
    HttpServer server(service);
    const int bound = server.bind(host, port);
    server.start();
    std::cerr << fmt::format("listening on {}:{} (data: {})\n", host, bound, a.dataDir);
    if (const auto frontend = process_env("CODECITY_FRONTEND_URL")) {
      std::cerr << "frontend: " << *frontend << '\n';
    }

    int sig = 0;
    sigwait(&signals, &sig);
    std::cerr << "shutting down\n";
    server.stop();
    return exit_status::kOk;
  } catch (const Error& e) {
    return fail(e);
  }
}

struct CiArgs {
  std::string root, fixture, app, commit, api;
  double timeScale = 1.0;
};

int cmd_ci_analyze(const CiArgs& a) {
  try {
    const CiContext ctx = resolve_ci_context({a.app, opt(a.commit), std::nullopt, std::nullopt, opt(a.api)});
    return run_analyze_job(ctx, a.root, std::cerr);
  } catch (const Error& e) {
    return fail(e);
  }
}

int cmd_ci_replay(const CiArgs& a) {
  try {
    const CiContext ctx = resolve_ci_context({a.app, opt(a.commit), std::nullopt, std::nullopt, opt(a.api)});
    return run_trace_replay(ctx, a.fixture, a.timeScale, std::cerr);
  } catch (const Error& e) {
    return fail(e);
  }
}

struct LinkArgs {
  std::string app, base, target, ghsUrl, project, cr, tokenEnv = "CODECITY_GHS_TOKEN";
  std::string frontendUrl, api;
  std::int64_t baseWindow = -1, targetWindow = -1;
};

int cmd_ci_link(const LinkArgs& a) {
  try {
    CiContext ctx;
    ctx.application = a.app;
    validate_application_name(ctx.application);
    ctx.apiUrl = a.api.empty() ? env_or("CODECITY_API_URL", "") : a.api;

    LinkJob job;
    job.ghs = GhsConfig{a.ghsUrl, a.project, a.cr, a.tokenEnv};
    job.frontendUrl = a.frontendUrl.empty() ? env_or("CODECITY_FRONTEND_URL", "") : a.frontendUrl;
    if (job.frontendUrl.empty()) {
      throw Error(ErrorCode::kConfig, "no frontend URL: pass --frontend-url or set CODECITY_FRONTEND_URL");
    }
    for (const auto* c : {&a.base, &a.target}) {
      if (!is_commit_hash(*c)) {
        throw Error(ErrorCode::kInvalidArgument,
                    fmt::format("commit '{}' is not a 40-char lowercase hex hash", *c));
      }
    }
    job.baseCommit = a.base;
    job.targetCommit = a.target;
    job.baseWindow = opt_window(a.baseWindow);
    job.targetWindow = opt_window(a.targetWindow);
    return run_link_job(ctx, job, std::cerr);
  } catch (const Error& e) {
    return fail(e);
  }
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"codecity: structural and runtime comparison of commits as software cities"};
  app.require_subcommand(1);

  AnalyzeArgs analyze;
  auto* an = app.add_subcommand("analyze", "Analyze a Java source tree into a structure document");
  an->add_option("--root", analyze.root, "Source tree root")->required();
  an->add_option("--app", analyze.app, "Application name")->required();
  an->add_option("--commit", analyze.commit, "Commit hash (default: $CI_COMMIT_SHA)");
  an->add_option("--branch", analyze.branch, "Branch name (default: $CI_COMMIT_BRANCH or HEAD)");
  an->add_option("--parent", analyze.parent, "Parent commit hash");
  an->add_option("--changed-list", analyze.changedList, "`git diff --name-status` output file");
  auto* destination = an->add_option_group("destination", "Where the document goes");
  destination->add_option("--out", analyze.out, "Write the document to FILE ('-' for stdout)");
  destination->add_option("--push", analyze.push, "POST the document to this API base URL");
  destination->require_option(1);

  ServeArgs serve;
  serve.listen = env_or("CODECITY_LISTEN_ADDR", "127.0.0.1:8080");
  serve.dataDir = env_or("CODECITY_DATA_DIR", "codecity-data");
  auto* sv = app.add_subcommand("serve", "Run the review service");
  sv->add_option("--listen", serve.listen, "host:port (default: $CODECITY_LISTEN_ADDR)");
  sv->add_option("--data-dir", serve.dataDir, "Store directory (default: $CODECITY_DATA_DIR)");

  CiArgs ciAnalyze;
  auto* ca = app.add_subcommand("ci-analyze", "CI job: analyze and upload the structure");
  ca->add_option("--root", ciAnalyze.root, "Source tree root")->required();
  ca->add_option("--app", ciAnalyze.app, "Application name")->required();
  ca->add_option("--commit", ciAnalyze.commit, "Commit hash (default: $CI_COMMIT_SHA)");
  ca->add_option("--api", ciAnalyze.api, "Review service URL (default: $CODECITY_API_URL)");

  CiArgs ciReplay;
  auto* cr = app.add_subcommand("ci-replay", "CI job: replay a span fixture against the service");
  cr->add_option("--fixture", ciReplay.fixture, "Unstamped spans document")->required();
  cr->add_option("--app", ciReplay.app, "Application name")->required();
  cr->add_option("--commit", ciReplay.commit, "Commit hash (default: $CI_COMMIT_SHA)");
  cr->add_option("--time-scale", ciReplay.timeScale, "Timestamp multiplier")->check(CLI::PositiveNumber);
  cr->add_option("--api", ciReplay.api, "Review service URL (default: $CODECITY_API_URL)");

  LinkArgs link;
  auto* cl = app.add_subcommand("ci-link", "CI job: put the visualization link into the change request");
  cl->add_option("--app", link.app, "Application name")->required();
  cl->add_option("--base", link.base, "Base commit hash")->required();
  cl->add_option("--target", link.target, "Target commit hash")->required();
  cl->add_option("--ghs-url", link.ghsUrl, "Hosting-service base URL")->required();
  cl->add_option("--project", link.project, "Project id or path")->required();
  cl->add_option("--cr", link.cr, "Change request id")->required();
  cl->add_option("--token-env", link.tokenEnv, "Variable holding the access token");
  cl->add_option("--frontend-url", link.frontendUrl, "Frontend base URL (default: $CODECITY_FRONTEND_URL)");
  cl->add_option("--api", link.api, "Review service URL used to check both commits exist");
  cl->add_option("--base-window", link.baseWindow, "Base runtime window index")->check(CLI::NonNegativeNumber);
  cl->add_option("--target-window", link.targetWindow, "Target runtime window index")->check(CLI::NonNegativeNumber);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : exit_status::kUsage;
  }

  if (an->parsed()) return cmd_analyze(analyze);
  if (sv->parsed()) return cmd_serve(serve);
  if (ca->parsed()) return cmd_ci_analyze(ciAnalyze);
  if (cr->parsed()) return cmd_ci_replay(ciReplay);
  if (cl->parsed()) return cmd_ci_link(link);
  return exit_status::kUsage;
}
