// Copyright 2026 The kgcrawl Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstdint>
#include <random>
#include <utility>
#include <vector>

namespace kgcrawl {

/// Fisher-Yates driven directly by mt19937_64 output. The standard
/// distributions are implementation-defined, so std::shuffle would make
/// seeded sampling differ between standard libraries.
template <typename T>
void seeded_shuffle(std::vector<T>& items, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  for (std::size_t i = items.size(); i > 1; --i) {
    auto j = static_cast<std::size_t>(rng() % i);
    using std::swap;
    swap(items[i - 1], items[j]);
  }
}

}  // namespace kgcrawl
