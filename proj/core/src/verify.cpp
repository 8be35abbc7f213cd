#include "fastpinv/verify.hpp"

#include <algorithm>
#include <cmath>

namespace fastpinv {
namespace {

// max |M' - M| for square M.
double asymmetry(const Matrix& a) {
  double worst = 0.0;
  for (std::size_t i = 0; i < a.rows(); ++i) {
    for (std::size_t j = 0; j < i; ++j) worst = std::max(worst, std::abs(a(i, j) - a(j, i)));
  }
  return worst;
}

bool is_column(const Matrix& a, std::size_t n) { return a.rows() == n && a.cols() == 1; }

}  // namespace

double PenroseReport::worst() const { return std::max({r1, r2, r3, r4}); }

PenroseReport penrose_residuals(const Matrix& g, const Matrix& x) {
  if (x.rows() != g.cols() || x.cols() != g.rows()) {
    throw ShapeError("penrose_residuals: candidate is " + x.shape_string() + ", expected " +
                     std::to_string(g.cols()) + "x" + std::to_string(g.rows()) + " for G " +
                     g.shape_string());
  }
  const Matrix gx = matmul(g, x);
  const Matrix xg = matmul(x, g);
  PenroseReport out;
  out.r1 = max_abs(subtract(matmul(gx, g), g));
  out.r2 = max_abs(subtract(matmul(xg, x), x));
  out.r3 = asymmetry(gx);
  out.r4 = asymmetry(xg);
  return out;
}

bool is_valid_pinv(const PenroseReport& report, double bound) {
  if (!(bound > 0.0)) throw SpecError("is_valid_pinv: bound must be positive");
  return report.r1 <= bound && report.r2 <= bound && report.r3 <= bound && report.r4 <= bound;
}

double nullspace_orthogonality(const Matrix& g, const Matrix& w, const Matrix& z) {
  const std::size_t n = g.cols();
  if (!is_column(w, n) || !is_column(z, n)) {
    throw ShapeError("nullspace_orthogonality: w is " + w.shape_string() + " and z is " +
                     z.shape_string() + ", expected " + std::to_string(n) + "x1");
  }
  const double nw = frobenius_norm(w);
  const double nz = frobenius_norm(z);
  if (nw == 0.0 || nz == 0.0) {
    throw DegenerateInputError("nullspace_orthogonality: zero-norm vector");
  }
  return std::abs(dot(w.values(), z.values())) / (nw * nz);
}

}  // namespace fastpinv
