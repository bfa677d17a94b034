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

#include "xmc/tamper/strategy.h"

#include <algorithm>
#include <charconv>
#include <cmath>

#include "xmc/core/errors.h"
#include "xmc/tamper/geo.h"

namespace xmc {
namespace {

template <class... Ts>
struct Overloaded : Ts... {
  using Ts::operator()...;
};
template <class... Ts>
Overloaded(Ts...) -> Overloaded<Ts...>;

std::string ShortNumber(double x) {
  char buf[64];
  auto [end, ec] = std::to_chars(buf, buf + sizeof(buf), x);
  return std::string(buf, end);
}

std::optional<double> ParseNumber(std::string_view text) {
  double v = 0.0;
  auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), v);
  if (text.empty() || ec != std::errc() || ptr != text.data() + text.size()) {
    return std::nullopt;
  }
  return v;
}

std::vector<std::string_view> Split(std::string_view text, char sep) {
  std::vector<std::string_view> parts;
  std::size_t start = 0;
  for (;;) {
    std::size_t pos = text.find(sep, start);
    parts.push_back(text.substr(start, pos - start));
    if (pos == std::string_view::npos) break;
    start = pos + 1;
  }
  return parts;
}

bool Intersects(const std::set<std::string>& a, const std::set<std::string>& b) {
  auto ia = a.begin();
  auto ib = b.begin();
  while (ia != a.end() && ib != b.end()) {
    if (*ia == *ib) return true;
    if (*ia < *ib) {
      ++ia;
    } else {
      ++ib;
    }
  }
  return false;
}

const std::set<std::string>* ParentClasses(const Entity& e) {
  if (const LocationAttrs* l = e.location()) return &l->parent_classes;
  if (const EventAttrs* ev = e.event()) return &ev->parent_classes;
  return nullptr;
}

}  // namespace

std::string_view ToString(TamperTarget t) {
  switch (t) {
    case TamperTarget::kPerson:
      return "person";
    case TamperTarget::kLocation:
      return "location";
    case TamperTarget::kEvent:
      return "event";
    case TamperTarget::kContext:
      return "context";
  }
  return "unknown";
}

std::optional<TamperTarget> ParseTamperTarget(std::string_view text) {
  if (text == "context") return TamperTarget::kContext;
  if (auto type = ParseEntityType(text)) {
    return static_cast<TamperTarget>(static_cast<int>(*type));
  }
  return std::nullopt;
}

TamperTarget TargetOf(const TamperStrategy& s) {
  return std::visit(
      Overloaded{
          [](const PersonRandom&) { return TamperTarget::kPerson; },
          [](const PersonSameGender&) { return TamperTarget::kPerson; },
          [](const PersonSameCitizenship&) { return TamperTarget::kPerson; },
          [](const PersonSameBoth&) { return TamperTarget::kPerson; },
          [](const LocationRandom&) { return TamperTarget::kLocation; },
          [](const LocationGcdBand&) { return TamperTarget::kLocation; },
          [](const EventRandom&) { return TamperTarget::kEvent; },
          [](const EventSameParent&) { return TamperTarget::kEvent; },
          [](const ContextRandomImage&) { return TamperTarget::kContext; },
          [](const ContextSimilarImage&) { return TamperTarget::kContext; },
      },
      s);
}

Measure MeasureFor(TamperTarget t) { return static_cast<Measure>(static_cast<int>(t)); }

std::optional<EntityType> EntityTypeOf(TamperTarget t) {
  if (t == TamperTarget::kContext) return std::nullopt;
  return static_cast<EntityType>(static_cast<int>(t));
}

void Validate(const TamperStrategy& s) {
  if (const auto* band = std::get_if<LocationGcdBand>(&s)) {
    if (!(band->dmin_km > 0.0 && band->dmin_km < band->dmax_km &&
          std::isfinite(band->dmax_km))) {
      throw InvalidArgument("GCD band requires 0 < dmin < dmax");
    }
  }
  if (const auto* sim = std::get_if<ContextSimilarImage>(&s)) {
    if (!(sim->top_fraction > 0.0 && sim->top_fraction < 1.0)) {
      throw InvalidArgument("similar-image top fraction must be in (0, 1)");
    }
  }
}

std::string StrategyName(const TamperStrategy& s) {
  return std::visit(
      Overloaded{
          [](const PersonRandom&) -> std::string { return "random"; },
          [](const PersonSameGender&) -> std::string { return "psg"; },
          [](const PersonSameCitizenship&) -> std::string { return "psc"; },
          [](const PersonSameBoth&) -> std::string { return "pscg"; },
          [](const LocationRandom&) -> std::string { return "random"; },
          [](const LocationGcdBand& b) -> std::string {
            return "gcd:" + ShortNumber(b.dmin_km) + ":" + ShortNumber(b.dmax_km) +
                   (b.require_shared_parent ? "" : ":noparent");
          },
          [](const EventRandom&) -> std::string { return "random"; },
          [](const EventSameParent&) -> std::string { return "esp"; },
          [](const ContextRandomImage&) -> std::string { return "random"; },
          [](const ContextSimilarImage& c) -> std::string {
            return "similar:" + ShortNumber(c.top_fraction);
          },
      },
      s);
}

std::string StrategyLabel(const TamperStrategy& s) {
  return std::visit(
      Overloaded{
          [](const PersonSameGender&) -> std::string { return "PsG"; },
          [](const PersonSameCitizenship&) -> std::string { return "PsC"; },
          [](const PersonSameBoth&) -> std::string { return "PsCG"; },
          [](const LocationGcdBand& b) -> std::string {
            return "GCD(" + ShortNumber(b.dmin_km) + ", " + ShortNumber(b.dmax_km) +
                   ")" + (b.require_shared_parent ? "" : " any parent");
          },
          [](const EventSameParent&) -> std::string { return "EsP"; },
          [](const ContextSimilarImage& c) -> std::string {
            return "Similar (top-" + ShortNumber(c.top_fraction * 100.0) + "%)";
          },
          [](const auto&) -> std::string { return "Random"; },
      },
      s);
}

std::optional<TamperStrategy> ParseStrategy(TamperTarget target,
                                            std::string_view name) {
  std::optional<TamperStrategy> out;
  switch (target) {
    case TamperTarget::kPerson:
      if (name == "random") out = PersonRandom{};
      if (name == "psg") out = PersonSameGender{};
      if (name == "psc") out = PersonSameCitizenship{};
      if (name == "pscg") out = PersonSameBoth{};
      break;
    case TamperTarget::kLocation: {
      if (name == "random") {
        out = LocationRandom{};
        break;
      }
      auto parts = Split(name, ':');
      if (parts.size() < 3 || parts.size() > 4 || parts[0] != "gcd") break;
      auto dmin = ParseNumber(parts[1]);
      auto dmax = ParseNumber(parts[2]);
      if (!dmin || !dmax) break;
      if (parts.size() == 4 && parts[3] != "noparent") break;
      out = LocationGcdBand{*dmin, *dmax, parts.size() == 3};
      break;
    }
    case TamperTarget::kEvent:
      if (name == "random") out = EventRandom{};
      if (name == "esp") out = EventSameParent{};
      break;
    case TamperTarget::kContext: {
      if (name == "random") {
        out = ContextRandomImage{};
        break;
      }
      std::optional<double> fraction;
      if (name.starts_with("similar:")) {
        fraction = ParseNumber(name.substr(8));
      } else if (name.starts_with("similar")) {
        if (auto pct = ParseNumber(name.substr(7))) fraction = *pct / 100.0;
      }
      if (fraction) out = ContextSimilarImage{*fraction};
      break;
    }
  }
  if (!out) return std::nullopt;
  try {
    Validate(*out);
  } catch (const InvalidArgument&) {
    return std::nullopt;
  }
  return out;
}

std::string_view ToString(Constraint c) {
  switch (c) {
    case Constraint::kGender:
      return "gender";
    case Constraint::kCitizenship:
      return "citizenship";
    case Constraint::kSharedParent:
      return "shared_parent";
    case Constraint::kDistanceBand:
      return "distance_band";
  }
  return "unknown";
}

std::vector<Constraint> ConstraintsOf(const TamperStrategy& s) {
  return std::visit(
      Overloaded{
          [](const PersonSameGender&) -> std::vector<Constraint> {
            return {Constraint::kGender};
          },
          [](const PersonSameCitizenship&) -> std::vector<Constraint> {
            return {Constraint::kCitizenship};
          },
          [](const PersonSameBoth&) -> std::vector<Constraint> {
            return {Constraint::kGender, Constraint::kCitizenship};
          },
          [](const LocationGcdBand& b) -> std::vector<Constraint> {
            if (b.require_shared_parent) {
              return {Constraint::kSharedParent, Constraint::kDistanceBand};
            }
            return {Constraint::kDistanceBand};
          },
          [](const EventSameParent&) -> std::vector<Constraint> {
            return {Constraint::kSharedParent};
          },
          [](const auto&) -> std::vector<Constraint> { return {}; },
      },
      s);
}

bool Satisfies(const Entity& original, const Entity& candidate,
               const TamperStrategy& s, Constraint c) {
  switch (c) {
    case Constraint::kGender: {
      const PersonAttrs* a = original.person();
      const PersonAttrs* b = candidate.person();
      return a && b && !a->gender.empty() && a->gender == b->gender;
    }
    case Constraint::kCitizenship: {
      const PersonAttrs* a = original.person();
      const PersonAttrs* b = candidate.person();
      return a && b && Intersects(a->citizenship, b->citizenship);
    }
    case Constraint::kSharedParent: {
      const auto* a = ParentClasses(original);
      const auto* b = ParentClasses(candidate);
      return a && b && Intersects(*a, *b);
    }
    case Constraint::kDistanceBand: {
      const auto* band = std::get_if<LocationGcdBand>(&s);
      const LocationAttrs* a = original.location();
      const LocationAttrs* b = candidate.location();
      if (!band || !a || !b) return false;
      const double d = HaversineKm(a->coordinates, b->coordinates);
      return d >= band->dmin_km && d <= band->dmax_km;
    }
  }
  return false;
}

std::size_t SatisfiedCount(const Entity& original, const Entity& candidate,
                           const TamperStrategy& s) {
  std::size_t n = 0;
  for (Constraint c : ConstraintsOf(s)) n += Satisfies(original, candidate, s, c);
  return n;
}

}  // namespace xmc
