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

#include "xmc/core/embedding.h"

#include <cmath>
#include <string>

#include "xmc/core/errors.h"

namespace xmc {

double Dot(std::span<const double> a, std::span<const double> b) {
  double sum = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) sum += a[i] * b[i];
  return sum;
}

Embedding::Embedding(std::vector<double> values) : values_(std::move(values)) {
  if (values_.empty()) throw InvalidEmbedding("dimension must be positive");
  for (std::size_t i = 0; i < values_.size(); ++i) {
    if (!std::isfinite(values_[i])) {
      throw InvalidEmbedding("non-finite component at index " +
                             std::to_string(i));
    }
  }
  norm_ = std::sqrt(Dot(values_, values_));
  if (!(norm_ > 0.0) || !std::isfinite(norm_)) {
    throw InvalidEmbedding("zero or non-finite norm");
  }
}

Embedding::Embedding(std::initializer_list<double> values)
    : Embedding(std::vector<double>(values)) {}

Embedding Embedding::Scaled(double factor) const {
  if (!(factor > 0.0)) throw InvalidArgument("scale factor must be positive");
  std::vector<double> out(values_);
  for (double& v : out) v *= factor;
  return Embedding(std::move(out));
}

}  // namespace xmc
