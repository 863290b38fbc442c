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

#include <atomic>
#include <mutex>
#include <string>
#include <thread>

#include "httplib.h"
#include "json.hpp"

namespace codecity::testing {

/// Minimal stand-in for a GitLab-style hosting service: one project, one
/// merge request, token-checked GET/PUT of its description.
class MockGhs {
 public:
  MockGhs(std::string project, std::string iid, std::string token, std::string description)
      : project_(std::move(project)), iid_(std::move(iid)), token_(std::move(token)),
        description_(std::move(description)) {
    const std::string pattern = R"(/api/v4/projects/([^/]+)/merge_requests/([^/]+))";
    server_.Get(pattern, [this](const httplib::Request& req, httplib::Response& res) {
      handle(req, res, false);
    });
    server_.Put(pattern, [this](const httplib::Request& req, httplib::Response& res) {
      handle(req, res, true);
    });
    port_ = server_.bind_to_any_port("127.0.0.1");
    thread_ = std::thread([this] { server_.listen_after_bind(); });
    server_.wait_until_ready();
  }

  ~MockGhs() {
    server_.stop();
    thread_.join();
  }

  [[nodiscard]] std::string url() const { return "http://127.0.0.1:" + std::to_string(port_); }

  [[nodiscard]] std::string description() const {
    std::lock_guard lock(mutex_);
    return description_;
  }

  [[nodiscard]] int writes() const { return writes_; }
  [[nodiscard]] int requests() const { return requests_; }

  /// Every request answers with this status when non-zero.
  void fail_with(int status) { failStatus_ = status; }

 private:
  void handle(const httplib::Request& req, httplib::Response& res, bool write) {
    ++requests_;
    if (failStatus_ != 0) {
      res.status = failStatus_;
      return;
    }
    if (req.get_header_value("PRIVATE-TOKEN") != token_) {
      res.status = 401;
      res.set_content(R"({"message":"401 Unauthorized"})", "application/json");
      return;
    }
    if (req.matches[1] != project_ || req.matches[2] != iid_) {
      res.status = 404;
      res.set_content(R"({"message":"404 Not Found"})", "application/json");
      return;
    }
    std::lock_guard lock(mutex_);
    if (write) {
      const auto body = nlohmann::json::parse(req.body, nullptr, false);
      if (body.is_discarded() || !body.contains("description")) {
        res.status = 400;
        return;
      }
      description_ = body["description"].get<std::string>();
      ++writes_;
    }
    res.set_content(nlohmann::json{{"iid", std::stoi(iid_)}, {"description", description_}}.dump(),
                    "application/json");
  }

  std::string project_;
  std::string iid_;
  std::string token_;
  mutable std::mutex mutex_;
  std::string description_;
  std::atomic<int> writes_{0};
  std::atomic<int> requests_{0};
  std::atomic<int> failStatus_{0};
  httplib::Server server_;
  int port_ = 0;
  std::thread thread_;
};

/// Answers every request with a fixed status; counts requests.
class FixedStatusServer {
 public:
  explicit FixedStatusServer(int status) {
    server_.set_pre_routing_handler([this, status](const httplib::Request&, httplib::Response& res) {
      ++requests_;
      res.status = status;
      res.set_content(R"({"error":"mock"})", "application/json");
      return httplib::Server::HandlerResponse::Handled;
    });
    port_ = server_.bind_to_any_port("127.0.0.1");
    thread_ = std::thread([this] { server_.listen_after_bind(); });
    server_.wait_until_ready();
  }
  ~FixedStatusServer() {
    server_.stop();
    thread_.join();
  }
  [[nodiscard]] std::string url() const { return "http://127.0.0.1:" + std::to_string(port_); }
  [[nodiscard]] int requests() const { return requests_; }

 private:
  httplib::Server server_;
  std::atomic<int> requests_{0};
  int port_ = 0;
  std::thread thread_;
};

}  // namespace codecity::testing
