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

#ifndef XMC_SERVICE_SERVER_H_
#define XMC_SERVICE_SERVER_H_

#include <memory>
#include <string>

#include "xmc/service/session.h"

namespace xmc {

inline constexpr char kPortEnvironmentVariable[] = "XMC_PORT";
inline constexpr int kDefaultPort = 8080;

// Port from XMC_PORT, or `fallback` when unset. Throws InvalidArgument for a
// value that is not a port number.
int PortFromEnvironment(int fallback = kDefaultPort);

// HTTP front end for Api.
class ApiServer {
 public:
  explicit ApiServer(ApiSession& session);
  ~ApiServer();
  ApiServer(const ApiServer&) = delete;
  ApiServer& operator=(const ApiServer&) = delete;

  // Port 0 binds any free port. Returns the bound port; throws IoError.
  int Bind(const std::string& host, int port);
  // Serves until Stop(). Call after Bind.
  void Listen();
  void Stop();

 private:
  struct Impl;
  std::unique_ptr<Impl> impl_;
};

}  // namespace xmc

#endif  // XMC_SERVICE_SERVER_H_
