#pragma once

// Seeded random instances: expansions, multipliers and interval families.
// Every (seed, index) pair owns an independent stream, so trials can run in
// any order or concurrently and still reproduce.

#include <cstdint>
#include <random>

#include "hardy/dyadic.hpp"
#include "hardy/haar.hpp"

namespace hardy {

using Rng = std::mt19937_64;

Rng make_stream(std::uint64_t seed, std::uint64_t index);

// Each interval up to max_level is kept with probability density; entries are
// standard normal. Throws InvalidArgument unless density ∈ (0,1].
HaarExpansion gen_random(int max_level, int dimension, double density, std::uint64_t seed);
HaarExpansion gen_random(int max_level, int dimension, double density, Rng& rng);

// Uniform φ_I ∈ [-1,1] on the support of u.
Multiplier random_multiplier(const HaarExpansion& u, Rng& rng);

// Random non-empty family inside the tree of depth max_level; its Carleson
// constant is at most max_level + 1.
IntervalFamily random_family(int max_level, Rng& rng);

}  // namespace hardy
