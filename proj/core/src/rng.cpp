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

#include "cliff/rng.hpp"

#include <limits>

#include "cliff/error.hpp"
#include "cliff/text.hpp"

namespace cliff {

std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

std::uint64_t derive_seed(std::uint64_t global_seed, std::string_view doc_id, std::string_view stream) {
  std::uint64_t h = splitmix64(global_seed);
  h = fnv1a64(doc_id, h ^ 0xcbf29ce484222325ULL);
  if (!stream.empty()) h = fnv1a64(stream, splitmix64(h) ^ 0x84222325cbf29ce4ULL);
  return splitmix64(h);
}

std::uint64_t RngState::next() {
  return splitmix64(seed_ + 0x9e3779b97f4a7c15ULL * counter_++);
}

double RngState::uniform() {
  return static_cast<double>(next() >> 11) * 0x1.0p-53;
}

std::size_t RngState::below(std::size_t n) {
  if (n == 0) throw Error("RngState::below: empty range");
  const std::uint64_t bound = static_cast<std::uint64_t>(n);
  const std::uint64_t limit = std::numeric_limits<std::uint64_t>::max() -
                              std::numeric_limits<std::uint64_t>::max() % bound;
  std::uint64_t x;
  do {
    x = next();
  } while (x >= limit);
  return static_cast<std::size_t>(x % bound);
}

}  // namespace cliff
