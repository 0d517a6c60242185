#pragma once

#include <cstdint>

namespace wocce {

// splitmix64 finalizer over (base, counter); child streams are independent
// for practical purposes and replayable from the base seed alone.
constexpr std::uint64_t derive_seed(std::uint64_t base, std::uint64_t counter) {
  std::uint64_t z = base + 0x9e3779b97f4a7c15ULL * (counter + 1);
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

}  // namespace wocce
