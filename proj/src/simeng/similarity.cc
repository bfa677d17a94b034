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

#include "xmc/simeng/similarity.h"

#include <algorithm>
#include <string>

#include "xmc/core/errors.h"

namespace xmc {

double Cosine(const Embedding& a, const Embedding& b) {
  if (a.dim() != b.dim()) {
    throw DimMismatch("cosine of dim " + std::to_string(a.dim()) + " and " +
                      std::to_string(b.dim()));
  }
  const double c = Dot(a.values(), b.values()) / (a.norm() * b.norm());
  return std::clamp(c, -1.0, 1.0);
}

double NormalizedCosine(const Embedding& a, const Embedding& b) {
  return (Cosine(a, b) + 1.0) / 2.0;
}

}  // namespace xmc
