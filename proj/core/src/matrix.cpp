#include "fastpinv/matrix.hpp"

#include <algorithm>
#include <cmath>
#include <cstring>
#include <string>

namespace fastpinv {
namespace {

// Packed GEMM: C += op(A) op(B), op(A) M x K and op(B) K x N, all storage
// row-major. op(B) is packed once per KC slice into NR-wide column panels and
// op(A) per MC block into MR-tall row panels; the micro-kernel keeps an
// MR x NR tile of C in vector registers. Each entry of C is accumulated in a
// fixed order, so results are deterministic for a given build.
#if defined(__AVX512F__)
using Vec = double __attribute__((vector_size(64)));
#else
using Vec = double __attribute__((vector_size(32)));
#endif
constexpr std::size_t kLanes = sizeof(Vec) / sizeof(double);
constexpr std::size_t kMR = 4;
constexpr std::size_t kNV = 3;
constexpr std::size_t kNR = kNV * kLanes;
constexpr std::size_t kKC = 256;
constexpr std::size_t kMC = 64;

enum class Op { normal, transposed };

struct Operand {
  const double* data;
  std::size_t ld;  // row stride of the stored matrix
  Op op;

  double at(std::size_t i, std::size_t j) const {
    return op == Op::normal ? data[i * ld + j] : data[j * ld + i];
  }
};

// B slice rows [pc, pc + kc), all N columns, as ceil(N / NR) panels of kc x NR.
void pack_b(const Operand& b, std::size_t pc, std::size_t kc, std::size_t n, double* out) {
  for (std::size_t j0 = 0; j0 < n; j0 += kNR) {
    const std::size_t jn = std::min(kNR, n - j0);
    for (std::size_t p = 0; p < kc; ++p) {
      double* dst = out + p * kNR;
      std::size_t j = 0;
      if (b.op == Op::normal) {
        const double* src = b.data + (pc + p) * b.ld + j0;
        for (; j < jn; ++j) dst[j] = src[j];
      } else {
        for (; j < jn; ++j) dst[j] = b.data[(j0 + j) * b.ld + pc + p];
      }
      for (; j < kNR; ++j) dst[j] = 0.0;
    }
    out += kc * kNR;
  }
}

// A block rows [ic, ic + mc), columns [pc, pc + kc), as MR-tall panels.
void pack_a(const Operand& a, std::size_t ic, std::size_t mc, std::size_t pc, std::size_t kc,
            double* out) {
  for (std::size_t i0 = ic; i0 < ic + mc; i0 += kMR) {
    const std::size_t in = std::min(kMR, ic + mc - i0);
    for (std::size_t p = 0; p < kc; ++p) {
      double* dst = out + p * kMR;
      std::size_t r = 0;
      for (; r < in; ++r) dst[r] = a.at(i0 + r, pc + p);
      for (; r < kMR; ++r) dst[r] = 0.0;
    }
    out += kc * kMR;
  }
}

inline Vec load_vec(const double* p) {
  Vec v;
  std::memcpy(&v, p, sizeof(Vec));
  return v;
}

// C tile (rows x cols valid entries) += packed A panel * packed B panel.
void micro_kernel(std::size_t kc, const double* __restrict ap, const double* __restrict bp,
                  double* __restrict c, std::size_t ldc, std::size_t rows, std::size_t cols) {
  Vec acc[kMR][kNV] = {};
#pragma GCC unroll 4
  for (std::size_t p = 0; p < kc; ++p) {
    Vec bv[kNV];
    for (std::size_t v = 0; v < kNV; ++v) bv[v] = load_vec(bp + p * kNR + v * kLanes);
    for (std::size_t r = 0; r < kMR; ++r) {
      const Vec av = ap[p * kMR + r] - Vec{};
      for (std::size_t v = 0; v < kNV; ++v) acc[r][v] += av * bv[v];
    }
  }
  for (std::size_t r = 0; r < rows; ++r) {
    double tile[kNR];
    std::memcpy(tile, acc[r], sizeof(tile));
    double* crow = c + r * ldc;
    for (std::size_t j = 0; j < cols; ++j) crow[j] += tile[j];
  }
}

// With upper_only, tiles lying entirely below the diagonal are skipped.
void gemm(const Operand& a, const Operand& b, double* c, std::size_t m, std::size_t k,
          std::size_t n, bool upper_only) {
  if (m == 0 || n == 0 || k == 0) return;
  const std::size_t n_panels = (n + kNR - 1) / kNR;
  std::vector<double> bpack(std::min(kKC, k) * n_panels * kNR);
  std::vector<double> apack(std::min(kKC, k) * ((kMC + kMR - 1) / kMR) * kMR);
  for (std::size_t pc = 0; pc < k; pc += kKC) {
    const std::size_t kc = std::min(kKC, k - pc);
    pack_b(b, pc, kc, n, bpack.data());
    for (std::size_t ic = 0; ic < m; ic += kMC) {
      const std::size_t mc = std::min(kMC, m - ic);
      pack_a(a, ic, mc, pc, kc, apack.data());
      for (std::size_t jp = 0; jp < n_panels; ++jp) {
        const std::size_t j0 = jp * kNR;
        const std::size_t jn = std::min(kNR, n - j0);
        for (std::size_t i0 = ic; i0 < ic + mc; i0 += kMR) {
          if (upper_only && j0 + kNR <= i0) continue;
          const std::size_t in = std::min(kMR, ic + mc - i0);
          micro_kernel(kc, apack.data() + (i0 - ic) * kc, bpack.data() + jp * kc * kNR,
                       c + i0 * n + j0, n, in, jn);
        }
      }
    }
  }
}

std::string shape_mismatch(const char* op, const Matrix& a, const Matrix& b) {
  return std::string(op) + ": incompatible shapes " + a.shape_string() + " and " +
         b.shape_string();
}

void mirror_upper(Matrix& a) {
  const std::size_t n = a.rows();
  for (std::size_t i = 1; i < n; ++i) {
    for (std::size_t j = 0; j < i; ++j) a(i, j) = a(j, i);
  }
}

}  // namespace

Matrix::Matrix(std::size_t rows, std::size_t cols)
    : rows_(rows), cols_(cols), values_(rows * cols, 0.0) {}

Matrix::Matrix(std::size_t rows, std::size_t cols, std::vector<double> values)
    : rows_(rows), cols_(cols), values_(std::move(values)) {
  if (values_.size() != rows_ * cols_) {
    throw ShapeError("Matrix: " + std::to_string(values_.size()) +
                     " values do not fill a " + shape_string() + " matrix");
  }
  require_finite(*this, "Matrix");
}

Matrix Matrix::from_rows(std::initializer_list<std::initializer_list<double>> rows) {
  const std::size_t r = rows.size();
  const std::size_t c = r == 0 ? 0 : rows.begin()->size();
  std::vector<double> values;
  values.reserve(r * c);
  for (const auto& row : rows) {
    if (row.size() != c) throw ShapeError("Matrix::from_rows: ragged rows");
    values.insert(values.end(), row.begin(), row.end());
  }
  return Matrix(r, c, std::move(values));
}

std::string Matrix::shape_string() const {
  return std::to_string(rows_) + "x" + std::to_string(cols_);
}

Matrix identity(std::size_t n) {
  Matrix out(n, n);
  for (std::size_t i = 0; i < n; ++i) out(i, i) = 1.0;
  return out;
}

Matrix zeros(std::size_t rows, std::size_t cols) { return Matrix(rows, cols); }

Matrix matmul(const Matrix& a, const Matrix& b) {
  if (a.cols() != b.rows()) throw ShapeError(shape_mismatch("matmul", a, b));
  Matrix out(a.rows(), b.cols());
  if (out.empty() || a.cols() == 0) return out;
  gemm({a.values().data(), a.cols(), Op::normal}, {b.values().data(), b.cols(), Op::normal},
       out.values().data(), a.rows(), a.cols(), b.cols(), false);
  require_finite(out, "matmul");
  return out;
}

Matrix matmul_tn(const Matrix& a, const Matrix& b) {
  if (a.rows() != b.rows()) throw ShapeError(shape_mismatch("matmul_tn", a, b));
  Matrix out(a.cols(), b.cols());
  gemm({a.values().data(), a.cols(), Op::transposed}, {b.values().data(), b.cols(), Op::normal},
       out.values().data(), a.cols(), a.rows(), b.cols(), false);
  require_finite(out, "matmul_tn");
  return out;
}

Matrix matmul_nt(const Matrix& a, const Matrix& b) {
  if (a.cols() != b.cols()) throw ShapeError(shape_mismatch("matmul_nt", a, b));
  Matrix out(a.rows(), b.rows());
  gemm({a.values().data(), a.cols(), Op::normal}, {b.values().data(), b.cols(), Op::transposed},
       out.values().data(), a.rows(), a.cols(), b.rows(), false);
  require_finite(out, "matmul_nt");
  return out;
}

Matrix transpose(const Matrix& a) {
  constexpr std::size_t kTile = 32;
  Matrix out(a.cols(), a.rows());
  for (std::size_t ii = 0; ii < a.rows(); ii += kTile) {
    const std::size_t ie = std::min(ii + kTile, a.rows());
    for (std::size_t jj = 0; jj < a.cols(); jj += kTile) {
      const std::size_t je = std::min(jj + kTile, a.cols());
      for (std::size_t i = ii; i < ie; ++i) {
        for (std::size_t j = jj; j < je; ++j) out(j, i) = a(i, j);
      }
    }
  }
  return out;
}

Matrix gram(const Matrix& g, GramSide side) {
  const Operand stored{g.values().data(), g.cols(), Op::normal};
  const Operand flipped{g.values().data(), g.cols(), Op::transposed};
  Matrix out;
  if (side == GramSide::left) {
    out = Matrix(g.cols(), g.cols());
    gemm(flipped, stored, out.values().data(), g.cols(), g.rows(), g.cols(), true);
  } else {
    out = Matrix(g.rows(), g.rows());
    gemm(stored, flipped, out.values().data(), g.rows(), g.cols(), g.rows(), true);
  }
  mirror_upper(out);
  require_finite(out, "gram");
  return out;
}

Matrix spd_inverse(const Matrix& a) {
  if (a.rows() != a.cols()) {
    throw ShapeError("spd_inverse: expected a square matrix, got " + a.shape_string());
  }
  const std::size_t n = a.rows();

  // a = R R' with R lower triangular.
  Matrix r(n, n);
  for (std::size_t j = 0; j < n; ++j) {
    const auto rj = r.row(j).first(j);
    const double pivot = a(j, j) - dot(rj, rj);
    if (!(pivot > 0.0)) {
      throw DefinitenessError("spd_inverse: non-positive pivot " + std::to_string(pivot) +
                              " at index " + std::to_string(j));
    }
    const double d = std::sqrt(pivot);
    r(j, j) = d;
    for (std::size_t i = j + 1; i < n; ++i) {
      r(i, j) = (a(i, j) - dot(r.row(i).first(j), rj)) / d;
    }
  }

  // Rinv = R^-1, row by row: R Rinv = I.
  Matrix rinv(n, n);
  for (std::size_t i = 0; i < n; ++i) {
    double* __restrict out = rinv.row(i).data();
    for (std::size_t k = 0; k < i; ++k) {
      const double rik = r(i, k);
      if (rik == 0.0) continue;
      const double* __restrict src = rinv.row(k).data();
      for (std::size_t j = 0; j <= k; ++j) out[j] -= rik * src[j];
    }
    out[i] += 1.0;
    const double inv_d = 1.0 / r(i, i);
    for (std::size_t j = 0; j <= i; ++j) out[j] *= inv_d;
  }

  // a^-1 = Rinv' Rinv
  Matrix out = gram(rinv, GramSide::left);
  require_finite(out, "spd_inverse");
  return out;
}

Matrix add(const Matrix& a, const Matrix& b) {
  if (a.rows() != b.rows() || a.cols() != b.cols()) throw ShapeError(shape_mismatch("add", a, b));
  Matrix out = a;
  auto o = out.values();
  const auto v = b.values();
  for (std::size_t i = 0; i < o.size(); ++i) o[i] += v[i];
  require_finite(out, "add");
  return out;
}

Matrix subtract(const Matrix& a, const Matrix& b) {
  if (a.rows() != b.rows() || a.cols() != b.cols()) {
    throw ShapeError(shape_mismatch("subtract", a, b));
  }
  Matrix out = a;
  auto o = out.values();
  const auto v = b.values();
  for (std::size_t i = 0; i < o.size(); ++i) o[i] -= v[i];
  require_finite(out, "subtract");
  return out;
}

Matrix scale(const Matrix& a, double s) {
  Matrix out = a;
  for (double& x : out.values()) x *= s;
  require_finite(out, "scale");
  return out;
}

Matrix column(const Matrix& a, std::size_t j) {
  if (j >= a.cols()) {
    throw ShapeError("column: index " + std::to_string(j) + " out of range for " +
                     a.shape_string());
  }
  Matrix out(a.rows(), 1);
  for (std::size_t i = 0; i < a.rows(); ++i) out(i, 0) = a(i, j);
  return out;
}

double max_abs(const Matrix& a) {
  double m = 0.0;
  for (double x : a.values()) m = std::max(m, std::abs(x));
  return m;
}

double frobenius_norm(const Matrix& a) {
  // Scaled sum of squares so huge entries do not overflow.
  const double s = max_abs(a);
  if (s == 0.0) return 0.0;
  double acc = 0.0;
  for (double x : a.values()) {
    const double t = x / s;
    acc += t * t;
  }
  return s * std::sqrt(acc);
}

double one_norm(const Matrix& a) {
  std::vector<double> sums(a.cols(), 0.0);
  for (std::size_t i = 0; i < a.rows(); ++i) {
    const auto r = a.row(i);
    for (std::size_t j = 0; j < a.cols(); ++j) sums[j] += std::abs(r[j]);
  }
  return sums.empty() ? 0.0 : *std::max_element(sums.begin(), sums.end());
}

double inf_norm(const Matrix& a) {
  double m = 0.0;
  for (std::size_t i = 0; i < a.rows(); ++i) {
    double s = 0.0;
    for (double x : a.row(i)) s += std::abs(x);
    m = std::max(m, s);
  }
  return m;
}

bool is_symmetric(const Matrix& a) {
  if (a.rows() != a.cols()) return false;
  for (std::size_t i = 0; i < a.rows(); ++i) {
    for (std::size_t j = 0; j < i; ++j) {
      if (a(i, j) != a(j, i)) return false;
    }
  }
  return true;
}

double dot(std::span<const double> x, std::span<const double> y) {
  // Four partial sums break the add dependency chain.
  const std::size_t n = std::min(x.size(), y.size());
  double s0 = 0.0, s1 = 0.0, s2 = 0.0, s3 = 0.0;
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4) {
    s0 += x[i] * y[i];
    s1 += x[i + 1] * y[i + 1];
    s2 += x[i + 2] * y[i + 2];
    s3 += x[i + 3] * y[i + 3];
  }
  for (; i < n; ++i) s0 += x[i] * y[i];
  return (s0 + s1) + (s2 + s3);
}

void require_finite(const Matrix& a, const char* where) {
  for (double x : a.values()) {
    if (!std::isfinite(x)) {
      throw NonFiniteError(std::string(where) + ": non-finite entry in " + a.shape_string() +
                           " matrix");
    }
  }
}

}  // namespace fastpinv
