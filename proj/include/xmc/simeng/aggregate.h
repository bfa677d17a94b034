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

#ifndef XMC_SIMENG_AGGREGATE_H_
#define XMC_SIMENG_AGGREGATE_H_

#include <optional>
#include <span>
#include <string>
#include <string_view>

namespace xmc {

// Reduces the similarities of one entity's reference images to a single
// value: either the maximum or a quantile.
class Aggregator {
 public:
  enum class Kind { kMax, kQuantile };

  static Aggregator Max() { return Aggregator(Kind::kMax, 1.0); }
  // Throws InvalidArgument unless q is in (0, 1].
  static Aggregator Quantile(double q);

  Kind kind() const { return kind_; }
  double q() const { return q_; }

  // "max", "q75", "q90", "q95" or "quantile:<q>".
  std::string ToString() const;
  static std::optional<Aggregator> Parse(std::string_view text);

  friend bool operator==(const Aggregator&, const Aggregator&) = default;

 private:
  Aggregator(Kind kind, double q) : kind_(kind), q_(q) {}

  Kind kind_;
  double q_;
};

// Max, or the inclusive linear-interpolation quantile: with the values sorted
// ascending as x[0..n-1] and h = (n - 1) q, the result is
// x[floor(h)] + (h - floor(h)) (x[floor(h) + 1] - x[floor(h)]).
// Quantile(1.0) returns exactly the maximum. Throws EmptyInput.
double Aggregate(std::span<const double> values, const Aggregator& agg);

}  // namespace xmc

#endif  // XMC_SIMENG_AGGREGATE_H_
