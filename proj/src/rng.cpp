#include "rfacet/rng.hpp"

#include <array>

#include "rfacet/errors.hpp"

namespace rfacet {

namespace {

std::mt19937_64 seeded(std::initializer_list<std::uint32_t> words) {
  std::seed_seq seq(words);
  return std::mt19937_64(seq);
}

std::uint32_t lo(std::uint64_t v) { return static_cast<std::uint32_t>(v); }
std::uint32_t hi(std::uint64_t v) { return static_cast<std::uint32_t>(v >> 32); }

}  // namespace

RandomSource::RandomSource(std::uint64_t seed) : engine_(seeded({lo(seed), hi(seed)})) {}

RandomSource::RandomSource(std::uint64_t seed, std::uint64_t index)
    : engine_(seeded({lo(seed), hi(seed), lo(index), hi(index), 0x5eedu})) {}

std::uint64_t RandomSource::below(std::uint64_t bound) {
  if (bound == 0) throw Error(ErrorCode::InvalidArgument, "below(0)");
  // Reject the low sliver so every residue is equally likely.
  const std::uint64_t threshold = (0 - bound) % bound;
  for (;;) {
    std::uint64_t r = engine_();
    if (r >= threshold) return r % bound;
  }
}

}  // namespace rfacet
