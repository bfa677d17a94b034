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

#ifndef XMC_TAMPER_GEO_H_
#define XMC_TAMPER_GEO_H_

#include "xmc/core/corpus.h"

namespace xmc {

inline constexpr double kEarthRadiusKm = 6371.0;

// Great-circle distance on a sphere of radius kEarthRadiusKm, via the
// haversine formula. Throws InvalidCoordinate.
double HaversineKm(const Coordinates& a, const Coordinates& b);

}  // namespace xmc

#endif  // XMC_TAMPER_GEO_H_
