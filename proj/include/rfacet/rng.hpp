#pragma once

#include <cstdint>
#include <random>

namespace rfacet {

// mt19937_64 plus a bounded draw by rejection. Both the engine and the
// std::seed_seq mixing are fully specified by the standard, so a seed
// reproduces the same stream on every platform (std::uniform_int_distribution
// is implementation-defined and is deliberately avoided).
class RandomSource {
 public:
  explicit RandomSource(std::uint64_t seed);
  // Substream `index` of `seed`; independent of how many substreams exist.
  RandomSource(std::uint64_t seed, std::uint64_t index);

  // Uniform in [0, bound). bound must be positive.
  std::uint64_t below(std::uint64_t bound);

 private:
  std::mt19937_64 engine_;
};

template <typename T>
concept UniformIndexSource = requires(T& source, std::uint64_t bound) {
  { source.below(bound) } -> std::convertible_to<std::uint64_t>;
};

}  // namespace rfacet
