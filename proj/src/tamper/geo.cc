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

#include "xmc/tamper/geo.h"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>

#include "xmc/core/errors.h"

namespace xmc {
namespace {

double Radians(double degrees) { return degrees * std::numbers::pi / 180.0; }

void Check(const Coordinates& c) {
  if (!c.IsValid()) {
    throw InvalidCoordinate("(" + std::to_string(c.latitude) + ", " +
                            std::to_string(c.longitude) + ")");
  }
}

}  // namespace

double HaversineKm(const Coordinates& a, const Coordinates& b) {
  Check(a);
  Check(b);
  const double dlat = Radians(b.latitude - a.latitude);
  const double dlon = Radians(b.longitude - a.longitude);
  const double s1 = std::sin(dlat / 2.0);
  const double s2 = std::sin(dlon / 2.0);
  double h = s1 * s1 + std::cos(Radians(a.latitude)) *
                           std::cos(Radians(b.latitude)) * s2 * s2;
  h = std::clamp(h, 0.0, 1.0);
  return 2.0 * kEarthRadiusKm * std::asin(std::sqrt(h));
}

}  // namespace xmc
