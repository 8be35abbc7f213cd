#pragma once

#include <array>
#include <optional>
#include <string_view>

#include "fastpinv/baselines.hpp"
#include "fastpinv/fullrank_cholesky.hpp"
#include "fastpinv/matrix.hpp"

namespace fastpinv {

enum class PinvAlgorithm { geninv, greville, gso_qr, hyperpower, svd };

inline constexpr std::array<PinvAlgorithm, 5> kAllAlgorithms = {
    PinvAlgorithm::geninv, PinvAlgorithm::greville, PinvAlgorithm::gso_qr,
    PinvAlgorithm::hyperpower, PinvAlgorithm::svd};

// "geninv", "greville", "gso-qr", "hyperpower", "svd"
std::string_view to_string(PinvAlgorithm algorithm);
std::optional<PinvAlgorithm> parse_algorithm(std::string_view name);

struct AlgorithmOptions {
  ToleranceConfig tolerance;
  GrevilleConfig greville;
  IterativeConfig iterative;
  SvdConfig svd;
};

Matrix compute_pinv(PinvAlgorithm algorithm, const Matrix& g, const AlgorithmOptions& options = {});

}  // namespace fastpinv
