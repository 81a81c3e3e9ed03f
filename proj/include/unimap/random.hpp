#pragma once

#include "unimap/numeric.hpp"

#include <cstdint>
#include <limits>
#include <random>
#include <span>

namespace unimap {

/// Every sampler takes an explicit stream; identical seeds give identical outputs.
using Rng = std::mt19937_64;

/// Independent per-trial seed derived from a master seed (splitmix64 finalizer).
std::uint64_t derive_seed(std::uint64_t master, std::uint64_t index);

/// Uniform integer in [0, bound); bound must be positive.
std::uint64_t uniform_below(std::uint64_t bound, Rng& rng);
BigInt uniform_below(const BigInt& bound, Rng& rng);

/// Index i drawn with probability weights[i] / sum(weights); weights nonnegative, sum positive.
std::size_t weighted_index(std::span<const BigInt> weights, Rng& rng);

/// Uniform real in [0, 1).
double uniform_unit(Rng& rng);

}  // namespace unimap
