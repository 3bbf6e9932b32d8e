// Copyright 2026 The Flint Authors.
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

#ifndef FLINT_RANDOM_H_
#define FLINT_RANDOM_H_

#include <cstddef>
#include <cstdint>
#include <random>
#include <string_view>
#include <vector>

namespace flint {

std::uint64_t Fnv1a64(std::string_view bytes);

// Per-sample seed: FNV-1a-64 over "global_seed|sample_id|transform_name".
std::uint64_t SampleSeed(std::uint64_t global_seed, std::string_view sample_id,
                         std::string_view transform_name);

// Thin wrapper over mt19937_64 with draws that do not depend on the standard
// library's distribution implementations.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  // Uniform in [0, n). n must be positive.
  std::size_t Uniform(std::size_t n);
  // Uniform in [0, 1).
  double UniformReal();
  bool Bernoulli(double p) { return UniformReal() < p; }

  template <typename T>
  const T& Choice(const std::vector<T>& items) {
    return items[Uniform(items.size())];
  }

  // Partial Fisher-Yates: k distinct indices from [0, n) in draw order.
  std::vector<std::size_t> Sample(std::size_t n, std::size_t k);

 private:
  std::mt19937_64 engine_;
};

}  // namespace flint

#endif  // FLINT_RANDOM_H_
