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

#ifndef XMC_TAMPER_RNG_H_
#define XMC_TAMPER_RNG_H_

#include <cstdint>
#include <random>
#include <string_view>

namespace xmc {

// Name recorded in every test set. The generator is std::mt19937_64, whose
// output sequence is fixed by the C++ standard; bounded draws use rejection
// sampling rather than std::uniform_int_distribution (whose algorithm is
// implementation-defined), so draws reproduce across platforms.
inline constexpr std::string_view kRngAlgorithm = "mt19937_64";

std::uint64_t SplitMix64(std::uint64_t x);
std::uint64_t Fnv1a64(std::string_view text);

class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  // Stream for one document: seeded with SplitMix64(seed ^ FNV-1a(key)), so
  // every document draws independently of processing order.
  static Rng ForKey(std::uint64_t seed, std::string_view key) {
    return Rng(SplitMix64(seed ^ Fnv1a64(key)));
  }

  std::uint64_t Next() { return engine_(); }
  // Uniform in [0, n). n must be positive.
  std::uint64_t UniformIndex(std::uint64_t n);
  // Uniform in [0, 1) with 53 random bits.
  double UniformReal() { return static_cast<double>(Next() >> 11) * 0x1.0p-53; }

 private:
  std::mt19937_64 engine_;
};

}  // namespace xmc

#endif  // XMC_TAMPER_RNG_H_
