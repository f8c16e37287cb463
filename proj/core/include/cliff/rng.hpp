// Copyright 2026 The cliff Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <cstddef>
#include <cstdint>
#include <string_view>

namespace cliff {

std::uint64_t splitmix64(std::uint64_t x);

// Seed for one document (and optionally one named stream within it).
// Depends only on its arguments, so adding documents never perturbs others.
std::uint64_t derive_seed(std::uint64_t global_seed, std::string_view doc_id, std::string_view stream = {});

// Counter-based generator: output k is splitmix64(seed + k * golden).
// Plain value type; copies replay the same sequence.
class RngState {
 public:
  explicit RngState(std::uint64_t seed = 0) : seed_(seed) {}

  std::uint64_t next();
  // Uniform in [0, 1) with 53 bits.
  double uniform();
  // Uniform in [0, n); n > 0. Rejection sampling, no modulo bias.
  std::size_t below(std::size_t n);

  std::uint64_t seed() const { return seed_; }
  std::uint64_t stream() const { return counter_; }

 private:
  std::uint64_t seed_;
  std::uint64_t counter_ = 0;
};

}  // namespace cliff
