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

#ifndef XMC_CORE_EMBEDDING_H_
#define XMC_CORE_EMBEDDING_H_

#include <cstddef>
#include <span>
#include <vector>

namespace xmc {

// A fixed-dimension real feature vector. Construction validates that every
// component is finite and that the Euclidean norm is strictly positive, so
// cosine similarity is always defined between two embeddings of equal dim.
//
// Values are held in double precision. Embeddings read from a blob are exact
// widenings of binary32 values, which keeps blob round trips bit-exact.
class Embedding {
 public:
  explicit Embedding(std::vector<double> values);
  Embedding(std::initializer_list<double> values);

  std::size_t dim() const { return values_.size(); }
  std::span<const double> values() const { return values_; }
  double operator[](std::size_t i) const { return values_[i]; }
  double norm() const { return norm_; }

  // Returns a copy multiplied by a positive factor.
  Embedding Scaled(double factor) const;

  friend bool operator==(const Embedding& a, const Embedding& b) {
    return a.values_ == b.values_;
  }

 private:
  std::vector<double> values_;
  double norm_ = 0.0;
};

double Dot(std::span<const double> a, std::span<const double> b);

}  // namespace xmc

#endif  // XMC_CORE_EMBEDDING_H_
