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

#include "codecity/http_client.hpp"

#include <regex>

#include <fmt/core.h>

#include "codecity/error.hpp"
#include "httplib.h"

namespace codecity {

namespace {

httplib::Headers to_headers(const HttpHeaders& headers) {
  httplib::Headers out;
  for (const auto& [k, v] : headers) out.emplace(k, v);
  return out;
}

}  // namespace

struct HttpClient::Impl {
  std::string origin;
  std::string prefix;
  std::unique_ptr<httplib::Client> client;

  std::string full(const std::string& path) const {
    if (path.empty() || path.front() != '/') return prefix + "/" + path;
    return prefix + path;
  }

  HttpResponse unwrap(const httplib::Result& result, const char* method,
                      const std::string& path) const {
    if (!result) {
      throw Error(ErrorCode::kTransport, fmt::format("{} {}{}: {}", method, origin, full(path),
                                                     httplib::to_string(result.error())));
    }
    return HttpResponse{result->status, result->body};
  }
};

HttpClient::HttpClient(const std::string& baseUrl, std::chrono::milliseconds timeout)
    : impl_(std::make_unique<Impl>()) {
  static const std::regex kUrl(R"(^(https?://[^/?#]+)(/[^?#]*)?$)");
  std::smatch m;
  if (!std::regex_match(baseUrl, m, kUrl)) {
    throw Error(ErrorCode::kConfig, fmt::format("'{}' is not an absolute http(s) URL", baseUrl));
  }
  impl_->origin = m[1];
  impl_->prefix = m[2];
  while (!impl_->prefix.empty() && impl_->prefix.back() == '/') impl_->prefix.pop_back();
#ifndef CPPHTTPLIB_OPENSSL_SUPPORT
  if (impl_->origin.rfind("https://", 0) == 0) {
    throw Error(ErrorCode::kConfig, "this build has no TLS support; use an http:// URL");
  }
#endif
  impl_->client = std::make_unique<httplib::Client>(impl_->origin);
  impl_->client->set_connection_timeout(timeout);
  impl_->client->set_read_timeout(timeout);
  impl_->client->set_write_timeout(timeout);
}

HttpClient::~HttpClient() = default;

HttpResponse HttpClient::get(const std::string& path, const HttpHeaders& headers) {
  return impl_->unwrap(impl_->client->Get(impl_->full(path), to_headers(headers)), "GET", path);
}

HttpResponse HttpClient::post(const std::string& path, const std::string& body,
                              const std::string& contentType, const HttpHeaders& headers) {
  return impl_->unwrap(
      impl_->client->Post(impl_->full(path), to_headers(headers), body, contentType), "POST",
      path);
}

HttpResponse HttpClient::put(const std::string& path, const std::string& body,
                             const std::string& contentType, const HttpHeaders& headers) {
  return impl_->unwrap(
      impl_->client->Put(impl_->full(path), to_headers(headers), body, contentType), "PUT",
      path);
}

}  // namespace codecity
