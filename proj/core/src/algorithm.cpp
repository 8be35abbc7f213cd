#include "fastpinv/algorithm.hpp"

#include "fastpinv/geninv.hpp"

namespace fastpinv {

std::string_view to_string(PinvAlgorithm algorithm) {
  switch (algorithm) {
    case PinvAlgorithm::geninv: return "geninv";
    case PinvAlgorithm::greville: return "greville";
    case PinvAlgorithm::gso_qr: return "gso-qr";
    case PinvAlgorithm::hyperpower: return "hyperpower";
    case PinvAlgorithm::svd: return "svd";
  }
  return "unknown";
}

std::optional<PinvAlgorithm> parse_algorithm(std::string_view name) {
  for (PinvAlgorithm a : kAllAlgorithms) {
    if (to_string(a) == name) return a;
  }
  return std::nullopt;
}

Matrix compute_pinv(PinvAlgorithm algorithm, const Matrix& g, const AlgorithmOptions& options) {
  switch (algorithm) {
    case PinvAlgorithm::geninv: return pinv_geninv(g, options.tolerance);
    case PinvAlgorithm::greville: return pinv_greville(g, options.greville);
    case PinvAlgorithm::gso_qr: return pinv_gso_qr(g, options.tolerance);
    case PinvAlgorithm::hyperpower: return pinv_hyperpower(g, options.iterative);
    case PinvAlgorithm::svd: return pinv_svd_reference(g, options.svd);
  }
  throw SpecError("compute_pinv: unknown algorithm");
}

}  // namespace fastpinv
