#include "unimap/random.hpp"

#include "unimap/errors.hpp"

namespace unimap {

std::uint64_t derive_seed(std::uint64_t master, std::uint64_t index) {
  std::uint64_t z = master + 0x9E3779B97F4A7C15ULL * (index + 1);
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
  return z ^ (z >> 31);
}

std::uint64_t uniform_below(std::uint64_t bound, Rng& rng) {
  if (bound == 0) throw DomainError("uniform_below: empty range");
  return std::uniform_int_distribution<std::uint64_t>(0, bound - 1)(rng);
}

BigInt uniform_below(const BigInt& bound, Rng& rng) {
  if (bound <= 0) throw DomainError("uniform_below: empty range");
  if (bound <= std::numeric_limits<std::uint64_t>::max()) {
    return BigInt(uniform_below(bound.convert_to<std::uint64_t>(), rng));
  }
  const unsigned bits = boost::multiprecision::msb(bound) + 1;
  const unsigned words = (bits + 63) / 64;
  const unsigned top_bits = bits - 64 * (words - 1);
  const std::uint64_t top_mask = top_bits == 64 ? ~0ULL : ((1ULL << top_bits) - 1);
  for (;;) {
    BigInt candidate = 0;
    for (unsigned w = 0; w < words; ++w) {
      std::uint64_t chunk = rng();
      if (w == 0) chunk &= top_mask;
      candidate <<= 64;
      candidate += chunk;
    }
    if (candidate < bound) return candidate;
  }
}

std::size_t weighted_index(std::span<const BigInt> weights, Rng& rng) {
  BigInt total = 0;
  for (const auto& w : weights) {
    if (w < 0) throw DomainError("weighted_index: negative weight");
    total += w;
  }
  BigInt r = uniform_below(total, rng);
  for (std::size_t i = 0; i < weights.size(); ++i) {
    if (r < weights[i]) return i;
    r -= weights[i];
  }
  throw DomainError("weighted_index: inconsistent weights");
}

double uniform_unit(Rng& rng) { return std::uniform_real_distribution<double>(0.0, 1.0)(rng); }

}  // namespace unimap
