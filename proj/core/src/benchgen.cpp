#include "fastpinv/benchgen.hpp"

#include <algorithm>
#include <bit>
#include <string>

namespace fastpinv {
namespace {

std::uint64_t splitmix64(std::uint64_t& x) noexcept {
  std::uint64_t z = (x += 0x9e3779b97f4a7c15ULL);
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

}  // namespace

UniformStream::UniformStream(std::uint64_t seed) noexcept {
  for (auto& s : state_) s = splitmix64(seed);
}

// xoshiro256**
std::uint64_t UniformStream::next_u64() noexcept {
  const std::uint64_t result = std::rotl(state_[1] * 5, 7) * 9;
  const std::uint64_t t = state_[1] << 17;
  state_[2] ^= state_[0];
  state_[3] ^= state_[1];
  state_[1] ^= state_[2];
  state_[0] ^= state_[3];
  state_[2] ^= t;
  state_[3] = std::rotl(state_[3], 45);
  return result;
}

double UniformStream::next() noexcept {
  const double u = static_cast<double>(next_u64() >> 11) * 0x1.0p-53;
  return 2.0 * u - 1.0;
}

MatrixFamilySpec MatrixFamilySpec::standard(std::size_t n, std::uint64_t seed) {
  return {n, 2 * n, (7 * n) / 8, seed};
}

void MatrixFamilySpec::validate() const {
  if (n < 1 || m < 1) throw SpecError("MatrixFamilySpec: n and m must be >= 1");
  if (rank < 1 || rank > std::min(m, n)) {
    throw SpecError("MatrixFamilySpec: rank " + std::to_string(rank) + " outside [1, " +
                    std::to_string(std::min(m, n)) + "]");
  }
}

RankDeficientSample random_rank_deficient(const MatrixFamilySpec& spec) {
  spec.validate();
  UniformStream stream(spec.seed);
  auto fill = [&stream](std::size_t rows, std::size_t cols) {
    std::vector<double> v(rows * cols);
    for (double& x : v) x = stream.next();
    return Matrix(rows, cols, std::move(v));
  };

  RankDeficientSample out;
  out.b = fill(spec.m, spec.rank);
  out.c = fill(spec.rank, spec.n);
  Matrix g = matmul(out.b, out.c);
  const double s = max_abs(g);
  if (s == 0.0) throw SpecError("random_rank_deficient: generated an all-zero matrix");
  // Division (not multiplication by 1/s) makes the largest entry exactly +-1.
  for (double& x : g.values()) x /= s;
  out.g = std::move(g);
  return out;
}

}  // namespace fastpinv
