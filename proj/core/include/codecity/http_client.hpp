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

#include <chrono>
#include <memory>
#include <string>
#include <utility>
#include <vector>

namespace codecity {

using HttpHeaders = std::vector<std::pair<std::string, std::string>>;

struct HttpResponse {
  int status = 0;
  std::string body;

  [[nodiscard]] bool ok() const noexcept { return status >= 200 && status < 300; }
};

/// Blocking HTTP client bound to one base URL. The base may carry a path
/// prefix (`https://host/ci/codecity`) which is prepended to every request.
/// Any HTTP status is returned; only connection-level failures throw
/// kTransport. A malformed base URL throws kConfig.
class HttpClient {
 public:
  explicit HttpClient(const std::string& baseUrl,
                      std::chrono::milliseconds timeout = std::chrono::seconds(30));
  ~HttpClient();
  HttpClient(const HttpClient&) = delete;
  HttpClient& operator=(const HttpClient&) = delete;

  HttpResponse get(const std::string& path, const HttpHeaders& headers = {});
  HttpResponse post(const std::string& path, const std::string& body,
                    const std::string& contentType, const HttpHeaders& headers = {});
  HttpResponse put(const std::string& path, const std::string& body,
                   const std::string& contentType, const HttpHeaders& headers = {});

 private:
  struct Impl;
  std::unique_ptr<Impl> impl_;
};

}  // namespace codecity
