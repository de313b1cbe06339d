// Copyright 2026 The dpa Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     https://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef DPA_RNG_H_
#define DPA_RNG_H_

#include <cstdint>
#include <random>

namespace dpa {

// SplitMix64 step; used to derive independent substream seeds.
uint64_t SplitMix64(uint64_t& state);

// Seed of substream `index` derived from `seed`.
uint64_t SubstreamSeed(uint64_t seed, uint64_t index);

// Deterministic generator whose output depends only on the seed, not on the
// standard library's distribution implementations.
class Rng {
 public:
  explicit Rng(uint64_t seed) : engine_(seed) {}

  // Uniform on the open interval (0, 1) with 53 random bits.
  double Uniform();
  // Standard normal via Box-Muller.
  double Normal();
  // Standard Laplace (rate 1) via inverse CDF.
  double Laplace();

 private:
  std::mt19937_64 engine_;
  bool has_spare_ = false;
  double spare_ = 0;
};

}  // namespace dpa

#endif  // DPA_RNG_H_
