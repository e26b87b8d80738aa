#pragma once

#include <cstdint>
#include <string_view>

namespace rwc {

// SplitMix64 finalizer. Used only to derive independent sub-seeds; the
// actual random streams come from std::mt19937_64.
constexpr std::uint64_t mix64(std::uint64_t z) noexcept {
  z += 0x9e3779b97f4a7c15ULL;
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

constexpr std::uint64_t fnv1a64(std::string_view text) noexcept {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (char c : text) {
    h ^= static_cast<unsigned char>(c);
    h *= 0x100000001b3ULL;
  }
  return h;
}

/// Seed for a named stage ("graph", "pool", "walk", ...) of a run driven by
/// one global seed: mix64(seed ^ fnv1a64(stage)).
constexpr std::uint64_t derive_seed(std::uint64_t seed, std::string_view stage) noexcept {
  return mix64(seed ^ fnv1a64(stage));
}

/// Seed for the index-th independent item (walk, trial, node) under `seed`.
constexpr std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t index) noexcept {
  return mix64(mix64(seed) + index);
}

}  // namespace rwc
