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

#include "xmc/simeng/aggregate.h"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <sstream>
#include <vector>

#include "xmc/core/errors.h"

namespace xmc {

Aggregator Aggregator::Quantile(double q) {
  if (!(q > 0.0 && q <= 1.0)) {
    throw InvalidArgument("quantile must be in (0, 1], got " + std::to_string(q));
  }
  return Aggregator(Kind::kQuantile, q);
}

std::string Aggregator::ToString() const {
  if (kind_ == Kind::kMax) return "max";
  for (int pct : {75, 90, 95}) {
    if (q_ == pct / 100.0) return "q" + std::to_string(pct);
  }
  std::ostringstream out;
  out.precision(17);
  out << "quantile:" << q_;
  return out.str();
}

std::optional<Aggregator> Aggregator::Parse(std::string_view text) {
  if (text == "max") return Max();
  double q = 0.0;
  std::string_view number;
  double scale = 1.0;
  if (text.starts_with("quantile:")) {
    number = text.substr(9);
  } else if (text.size() > 1 && text[0] == 'q') {
    number = text.substr(1);
    scale = 100.0;
  } else {
    return std::nullopt;
  }
  auto [ptr, ec] =
      std::from_chars(number.data(), number.data() + number.size(), q);
  if (number.empty() || ec != std::errc() ||
      ptr != number.data() + number.size()) {
    return std::nullopt;
  }
  q /= scale;
  if (!(q > 0.0 && q <= 1.0)) return std::nullopt;
  return Quantile(q);
}

double Aggregate(std::span<const double> values, const Aggregator& agg) {
  if (values.empty()) throw EmptyInput("aggregate of no similarities");
  if (agg.kind() == Aggregator::Kind::kMax) {
    return *std::max_element(values.begin(), values.end());
  }
  std::vector<double> sorted(values.begin(), values.end());
  std::sort(sorted.begin(), sorted.end());
  const double h = static_cast<double>(sorted.size() - 1) * agg.q();
  const auto lo = static_cast<std::size_t>(std::floor(h));
  if (lo + 1 >= sorted.size()) return sorted.back();
  const double frac = h - static_cast<double>(lo);
  return sorted[lo] + frac * (sorted[lo + 1] - sorted[lo]);
}

}  // namespace xmc
