#pragma once

#include <cstddef>
#include <cstdint>

#include "fastpinv/matrix.hpp"

namespace fastpinv {

// Portable uniform stream: xoshiro256** seeded by four splitmix64 outputs.
// Doubles are 2 * u - 1 where u = (next_u64() >> 11) * 2^-53, so every value
// lies in [-1, 1). The sequence is fully determined by the seed.
class UniformStream {
 public:
  explicit UniformStream(std::uint64_t seed) noexcept;

  std::uint64_t next_u64() noexcept;
  double next() noexcept;

 private:
  std::uint64_t state_[4];
};

// Rank-deficient test family: G = B C rescaled so max |g_ij| = 1, with
// B m x rank and C rank x n uniform on [-1, 1].
struct MatrixFamilySpec {
  std::size_t n = 0;
  std::size_t m = 0;
  std::size_t rank = 0;
  std::uint64_t seed = 0;

  // m = 2n, rank = floor(7n / 8).
  static MatrixFamilySpec standard(std::size_t n, std::uint64_t seed);

  // Throws SpecError unless n, m >= 1 and 1 <= rank <= min(m, n).
  void validate() const;
};

struct RankDeficientSample {
  Matrix g;  // m x n, rank == spec.rank
  Matrix b;  // m x rank
  Matrix c;  // rank x n; any z with C z = 0 is in the null space of G
};

// B is filled first (row-major) and then C, from one UniformStream(seed).
RankDeficientSample random_rank_deficient(const MatrixFamilySpec& spec);

}  // namespace fastpinv
