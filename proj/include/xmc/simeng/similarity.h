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

#ifndef XMC_SIMENG_SIMILARITY_H_
#define XMC_SIMENG_SIMILARITY_H_

#include "xmc/core/embedding.h"

namespace xmc {

// (a.b) / (|a| |b|), clamped to [-1, 1]. Throws DimMismatch.
double Cosine(const Embedding& a, const Embedding& b);

// Cosine mapped onto [0, 1] as (cos + 1) / 2.
double NormalizedCosine(const Embedding& a, const Embedding& b);

}  // namespace xmc

#endif  // XMC_SIMENG_SIMILARITY_H_
