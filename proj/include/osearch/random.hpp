#pragma once

#include <cstdint>
#include <initializer_list>
#include <random>
#include <vector>

namespace osearch {

using Rng = std::mt19937_64;

/// splitmix64 finalizer folded over the inputs; used to derive independent
/// per-trial seeds so that results never depend on evaluation order.
std::uint64_t derive_seed(std::initializer_list<std::uint64_t> parts);

/// Uniform integer in [0, bound) by rejection; portable across standard
/// libraries, unlike std::uniform_int_distribution.
std::uint64_t uniform_below(Rng& rng, std::uint64_t bound);

/// `count` distinct values from [0, universe), in draw order.
std::vector<int> sample_distinct(Rng& rng, int universe, int count);

}  // namespace osearch
