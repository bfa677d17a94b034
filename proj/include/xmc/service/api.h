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

#ifndef XMC_SERVICE_API_H_
#define XMC_SERVICE_API_H_

#include <map>
#include <string>

#include "xmc/service/session.h"

namespace xmc {

inline constexpr std::size_t kDefaultPageSize = 50;
inline constexpr std::size_t kMaxPageSize = 1000;

struct ApiRequest {
  std::string method;  // "GET", "POST"
  std::string path;    // decoded, without the query string
  std::map<std::string, std::string> query;
  std::string body;
};

struct ApiResponse {
  int status = 200;
  std::string body;  // always JSON
};

// Transport-independent request router.
//
//   GET  /health
//   GET  /corpus/stats
//   GET  /testsets
//   GET  /documents/{id}/scores   ?config=<json>
//   GET  /documents/{id}/detail   ?config=<json>
//   GET  /rank  ?type=&testset=&order=desc|asc&page=1&page_size=50&config=
//   POST /score     {"doc_id", "config"?, "exclude"?: [entity ids]}
//   POST /evaluate  {"type", "strategy", "seed", "subset"?, "scene_kind"?,
//                    "ap_mode"?, "config"?}
//
// Errors carry {"error": message}: 400 for unparsable JSON, 404 for unknown
// routes, documents and test sets, 409 when no corpus is loaded, 422 for an
// invalid configuration or parameter.
class Api {
 public:
  explicit Api(ApiSession& session) : session_(session) {}

  ApiResponse Handle(const ApiRequest& request);

 private:
  ApiResponse Route(const ApiRequest& request);

  ApiSession& session_;
};

}  // namespace xmc

#endif  // XMC_SERVICE_API_H_
