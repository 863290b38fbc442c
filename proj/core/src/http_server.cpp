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

#include <charconv>
#include <thread>

#include <fmt/core.h>

#include "codecity/comparison_document.hpp"
#include "codecity/review_service.hpp"
#include "httplib.h"
#include "json_util.hpp"

namespace codecity {
namespace {

using detail::Json;

constexpr const char* kJson = "application/json";

void send_error(httplib::Response& res, const Error& e) {
  res.status = http_status_for(e.code());
  res.set_content(detail::dump_json(Json{{"error", std::string(to_string(e.code()))},
                                         {"message", e.what()}}),
                  kJson);
}

bool flag_param(const httplib::Request& req, const char* name, bool fallback) {
  if (!req.has_param(name)) return fallback;
  const std::string v = req.get_param_value(name);
  if (v == "true" || v == "1") return true;
  if (v == "false" || v == "0") return false;
  throw Error(ErrorCode::kInvalidArgument,
              fmt::format("query parameter '{}' must be true or false, not '{}'", name, v));
}

std::optional<std::int64_t> window_param(const httplib::Request& req, const char* name) {
  if (!req.has_param(name) || req.get_param_value(name).empty()) return std::nullopt;
  const std::string v = req.get_param_value(name);
  std::int64_t out = 0;
  const auto [ptr, ec] = std::from_chars(v.data(), v.data() + v.size(), out);
  if (ec != std::errc() || ptr != v.data() + v.size() || out < 0) {
    throw Error(ErrorCode::kInvalidArgument,
                fmt::format("query parameter '{}' must be a window index, not '{}'", name, v));
  }
  return out;
}

std::string required_param(const httplib::Request& req, const char* name) {
  if (!req.has_param(name) || req.get_param_value(name).empty()) {
    throw Error(ErrorCode::kInvalidArgument, fmt::format("missing query parameter '{}'", name));
  }
  return req.get_param_value(name);
}

// Wraps a handler so that library errors become JSON error responses.
template <typename Fn>
httplib::Server::Handler guarded(Fn fn) {
  return [fn](const httplib::Request& req, httplib::Response& res) {
    try {
      fn(req, res);
    } catch (const Error& e) {
      send_error(res, e);
    } catch (const std::exception& e) {
      send_error(res, Error(ErrorCode::kContractViolation, e.what()));
    }
  };
}

}  // namespace

struct HttpServer::Impl {
  explicit Impl(ReviewService& s) : service(s) { routes(); }

  void routes() {
    server.Post("/api/v1/structure", guarded([this](const httplib::Request& req,
                                                     httplib::Response& res) {
      const StoreOutcome outcome = service.store_structure(req.body);
      res.status = outcome.created ? 201 : 200;
      res.set_content(emit_commit_ref(outcome.commitRef), kJson);
    }));

    server.Post("/api/v1/spans", guarded([this](const httplib::Request& req,
                                                 httplib::Response& res) {
      const IngestResult result = service.ingest_spans(req.body);
      Json rejected = Json::array();
      for (const auto& r : result.rejected) {
        rejected.push_back(Json{{"index", r.index}, {"reason", r.reason}});
      }
      res.set_content(detail::dump_json(Json{{"accepted", result.accepted},
                                             {"stored", result.newlyStored.size()},
                                             {"rejected", std::move(rejected)}}),
                      kJson);
    }));

    server.Get("/api/v1/applications", guarded([this](const httplib::Request&,
                                                       httplib::Response& res) {
      res.set_content(detail::dump_json(Json(service.applications())), kJson);
    }));

    server.Get(R"(/api/v1/applications/([^/]+)/commits)",
               guarded([this](const httplib::Request& req, httplib::Response& res) {
                 Json out = Json::array();
                 for (const auto& c : service.commits(req.matches[1])) {
                   out.push_back(Json{{"commit", c.commit},
                                      {"branch", c.branch},
                                      {"receivedAtMs", c.receivedAtMs},
                                      {"hasRuntime", c.hasRuntime}});
                 }
                 res.set_content(detail::dump_json(out), kJson);
               }));

    server.Get(R"(/api/v1/applications/([^/]+)/commits/([^/]+)/windows)",
               guarded([this](const httplib::Request& req, httplib::Response& res) {
                 res.set_content(
                     detail::dump_json(Json(service.windows(req.matches[1], req.matches[2]))),
                     kJson);
               }));

    server.Get(R"(/api/v1/applications/([^/]+)/latest)",
               guarded([this](const httplib::Request& req, httplib::Response& res) {
                 res.set_content(emit_commit_ref(service.latest_commit(req.matches[1])), kJson);
               }));

    server.Get(R"(/api/v1/applications/([^/]+)/comparison)",
               guarded([this](const httplib::Request& req, httplib::Response& res) {
                 ComparisonRequest request;
                 request.application = req.matches[1];
                 request.base = required_param(req, "base");
                 request.target = required_param(req, "target");
                 request.baseWindow = window_param(req, "baseWindow");
                 request.targetWindow = window_param(req, "targetWindow");
                 request.filter.includeStatic = flag_param(req, "static", true);
                 request.filter.includeDynamic = flag_param(req, "dynamic", true);
                 request.filter.diffOnly = flag_param(req, "diffOnly", false);
                 const ComparisonResult result = service.get_comparison(request);
                 res.set_content(
                     emit_comparison_response(result.model, result.layout, result.warnings), kJson);
               }));
  }

  ReviewService& service;
  httplib::Server server;
  std::thread worker;
};

HttpServer::HttpServer(ReviewService& service) : impl_(std::make_unique<Impl>(service)) {}

HttpServer::~HttpServer() { stop(); }

int HttpServer::bind(const std::string& host, int port) {
  if (port == 0) {
    const int bound = impl_->server.bind_to_any_port(host);
    if (bound < 0) throw Error(ErrorCode::kIo, fmt::format("cannot bind {}", host));
    return bound;
  }
  if (!impl_->server.bind_to_port(host, port)) {
    throw Error(ErrorCode::kIo, fmt::format("cannot bind {}:{}", host, port));
  }
  return port;
}

void HttpServer::serve() { impl_->server.listen_after_bind(); }

void HttpServer::start() {
  impl_->worker = std::thread([this] { impl_->server.listen_after_bind(); });
  impl_->server.wait_until_ready();
}

void HttpServer::stop() {
  if (!impl_) return;
  impl_->server.stop();
  if (impl_->worker.joinable()) impl_->worker.join();
}

}  // namespace codecity
