// Copyright 2026 The xmc Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "xmc/service/server.h"

#include <charconv>
#include <cstdlib>
#include <string_view>

#include "httplib.h"
#include "xmc/core/errors.h"
#include "xmc/service/api.h"

namespace xmc {

int PortFromEnvironment(int fallback) {
  const char* value = std::getenv(kPortEnvironmentVariable);
  if (value == nullptr || *value == '\0') return fallback;
  std::string_view text(value);
  int port = 0;
  auto [end, ec] = std::from_chars(text.data(), text.data() + text.size(), port);
  if (ec != std::errc() || end != text.data() + text.size() || port < 0 ||
      port > 65535) {
    throw InvalidArgument(std::string(kPortEnvironmentVariable) + "='" +
                          value + "' is not a port");
  }
  return port;
}

struct ApiServer::Impl {
  explicit Impl(ApiSession& session) : api(session) {}

  void Dispatch(const httplib::Request& req, httplib::Response& res) {
    ApiRequest request;
    request.method = req.method;
    request.path = req.path;
    for (const auto& [key, value] : req.params) request.query.emplace(key, value);
    request.body = req.body;
    ApiResponse response = api.Handle(request);
    res.status = response.status;
    res.set_header("Access-Control-Allow-Origin", "*");
    res.set_content(response.body, "application/json");
  }

  Api api;
  httplib::Server server;
};

ApiServer::ApiServer(ApiSession& session) : impl_(std::make_unique<Impl>(session)) {
  auto handler = [this](const httplib::Request& req, httplib::Response& res) {
    impl_->Dispatch(req, res);
  };
  impl_->server.Get(".*", handler);
  impl_->server.Post(".*", handler);
}

ApiServer::~ApiServer() { Stop(); }

int ApiServer::Bind(const std::string& host, int port) {
  int bound = port;
  if (port == 0) {
    bound = impl_->server.bind_to_any_port(host);
  } else if (!impl_->server.bind_to_port(host, port)) {
    bound = -1;
  }
  if (bound < 0) throw IoError("cannot bind " + host + ":" + std::to_string(port));
  return bound;
}

void ApiServer::Listen() { impl_->server.listen_after_bind(); }

void ApiServer::Stop() {
  if (impl_->server.is_running()) impl_->server.stop();
}

}  // namespace xmc
