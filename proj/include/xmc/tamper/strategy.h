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

#ifndef XMC_TAMPER_STRATEGY_H_
#define XMC_TAMPER_STRATEGY_H_

#include <optional>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "xmc/core/corpus.h"
#include "xmc/simeng/measures.h"

namespace xmc {

struct PersonRandom {
  friend bool operator==(const PersonRandom&, const PersonRandom&) = default;
};
// PsG
struct PersonSameGender {
  friend bool operator==(const PersonSameGender&, const PersonSameGender&) = default;
};
// PsC
struct PersonSameCitizenship {
  friend bool operator==(const PersonSameCitizenship&, const PersonSameCitizenship&) = default;
};
// PsCG
struct PersonSameBoth {
  friend bool operator==(const PersonSameBoth&, const PersonSameBoth&) = default;
};
struct LocationRandom {
  friend bool operator==(const LocationRandom&, const LocationRandom&) = default;
};
// Replacement lies within [dmin_km, dmax_km] great-circle distance of the
// original and, when require_shared_parent is set, shares a parent class.
struct LocationGcdBand {
  double dmin_km = 0.0;
  double dmax_km = 0.0;
  bool require_shared_parent = true;

  friend bool operator==(const LocationGcdBand&, const LocationGcdBand&) = default;
};
struct EventRandom {
  friend bool operator==(const EventRandom&, const EventRandom&) = default;
};
// EsP
struct EventSameParent {
  friend bool operator==(const EventSameParent&, const EventSameParent&) = default;
};
struct ContextRandomImage {
  friend bool operator==(const ContextRandomImage&, const ContextRandomImage&) = default;
};
// Donor image drawn from the top `top_fraction` most similar other images.
struct ContextSimilarImage {
  double top_fraction = 0.25;

  friend bool operator==(const ContextSimilarImage&, const ContextSimilarImage&) = default;
};

using TamperStrategy =
    std::variant<PersonRandom, PersonSameGender, PersonSameCitizenship,
                 PersonSameBoth, LocationRandom, LocationGcdBand, EventRandom,
                 EventSameParent, ContextRandomImage, ContextSimilarImage>;

// What a strategy tampers: the entities of one type, or the image.
enum class TamperTarget { kPerson, kLocation, kEvent, kContext };

std::string_view ToString(TamperTarget t);
std::optional<TamperTarget> ParseTamperTarget(std::string_view text);
TamperTarget TargetOf(const TamperStrategy& s);
Measure MeasureFor(TamperTarget t);
// nullopt for kContext.
std::optional<EntityType> EntityTypeOf(TamperTarget t);

// Throws InvalidArgument when the parameters break 0 < dmin < dmax or
// 0 < top_fraction < 1.
void Validate(const TamperStrategy& s);

// Machine name used on the command line and in test-set files: "random",
// "psg", "psc", "pscg", "gcd:<dmin>:<dmax>" (suffix ":noparent" drops the
// shared-parent requirement), "esp", "similar:<fraction>".
std::string StrategyName(const TamperStrategy& s);
// Human label in results tables, e.g. "PsCG", "GCD(25, 200)".
std::string StrategyLabel(const TamperStrategy& s);
// Parses a machine name for `target`. Also accepts "similar<k>" for a top-k%
// similar-image strategy. Returns nullopt for unknown or invalid names.
std::optional<TamperStrategy> ParseStrategy(TamperTarget target,
                                            std::string_view name);

// The atomic conditions a strategy imposes on a replacement entity. The
// fallback rule ranks candidates by how many of these they satisfy.
enum class Constraint { kGender, kCitizenship, kSharedParent, kDistanceBand };
std::string_view ToString(Constraint c);

std::vector<Constraint> ConstraintsOf(const TamperStrategy& s);
bool Satisfies(const Entity& original, const Entity& candidate,
               const TamperStrategy& s, Constraint c);
std::size_t SatisfiedCount(const Entity& original, const Entity& candidate,
                           const TamperStrategy& s);

}  // namespace xmc

#endif  // XMC_TAMPER_STRATEGY_H_
