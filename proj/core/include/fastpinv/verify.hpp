#pragma once

#include "fastpinv/matrix.hpp"

namespace fastpinv {

inline constexpr double kDefaultPenroseBound = 2e-10;

// Max-abs entries of the four Penrose residual matrices for a candidate X:
//   r1 = GXG - G,  r2 = XGX - X,  r3 = (GX)' - GX,  r4 = (XG)' - XG.
struct PenroseReport {
  double r1 = 0.0;
  double r2 = 0.0;
  double r3 = 0.0;
  double r4 = 0.0;

  double worst() const;

  friend bool operator==(const PenroseReport&, const PenroseReport&) = default;
};

// Throws ShapeError unless x is cols(g) x rows(g).
PenroseReport penrose_residuals(const Matrix& g, const Matrix& x);

// True iff every residual is <= bound (inclusive). Throws SpecError if
// bound <= 0.
bool is_valid_pinv(const PenroseReport& report, double bound = kDefaultPenroseBound);

// |w'z| / (|w| |z|) for column vectors w and z of length cols(g). Near zero
// means w has no component along the null-space direction z, which is what
// makes a least-squares solution minimum-norm.
//
// Throws ShapeError on mismatched shapes and DegenerateInputError when w or
// z is zero.
double nullspace_orthogonality(const Matrix& g, const Matrix& w, const Matrix& z);

}  // namespace fastpinv
