#include "schurloc/matrix.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <string>
#include <utility>

#include "schurloc/error.hpp"

namespace schurloc {

std::string_view errc_name(Errc code) noexcept {
  switch (code) {
    case Errc::singular: return "Singular";
    case Errc::no_convergence: return "NoConvergence";
    case Errc::index_out_of_range: return "IndexOutOfRange";
    case Errc::size_mismatch: return "SizeMismatch";
    case Errc::lambda_in_sigma_d: return "LambdaInSigmaD";
    case Errc::delta_singular: return "DeltaSingular";
    case Errc::diagonal_resolvent_singular: return "DiagonalResolventSingular";
    case Errc::window_mismatch: return "WindowMismatch";
    case Errc::range_empty: return "RangeEmpty";
    case Errc::parse_error: return "ParseError";
    case Errc::config_error: return "ConfigError";
    case Errc::hermitian_check_failed: return "HermitianCheckFailed";
    case Errc::invalid_argument: return "InvalidArgument";
    case Errc::io_error: return "IoError";
  }
  return "Unknown";
}

Matrix::Matrix(std::size_t rows, std::size_t cols)
    : rows_(rows), cols_(cols), data_(rows * cols, Complex{}) {}

Matrix::Matrix(std::initializer_list<std::initializer_list<Complex>> rows) {
  rows_ = rows.size();
  cols_ = rows_ == 0 ? 0 : rows.begin()->size();
  data_.reserve(rows_ * cols_);
  for (const auto& r : rows) {
    if (r.size() != cols_) throw Error(Errc::size_mismatch, "ragged matrix initializer");
    data_.insert(data_.end(), r.begin(), r.end());
  }
}

Matrix Matrix::identity(std::size_t n) {
  Matrix m(n, n);
  for (std::size_t i = 0; i < n; ++i) m(i, i) = 1.0;
  return m;
}

Matrix Matrix::diagonal(std::span<const Complex> diag) {
  Matrix m(diag.size(), diag.size());
  for (std::size_t i = 0; i < diag.size(); ++i) m(i, i) = diag[i];
  return m;
}

Matrix Matrix::sub(std::size_t r0, std::size_t c0, std::size_t nr, std::size_t nc) const {
  if (r0 + nr > rows_ || c0 + nc > cols_) {
    throw Error(Errc::index_out_of_range, "sub-matrix exceeds matrix bounds");
  }
  Matrix out(nr, nc);
  for (std::size_t r = 0; r < nr; ++r) {
    std::copy_n(data_.begin() + static_cast<std::ptrdiff_t>((r0 + r) * cols_ + c0), nc,
                out.data_.begin() + static_cast<std::ptrdiff_t>(r * nc));
  }
  return out;
}

void Matrix::set_sub(std::size_t r0, std::size_t c0, const Matrix& m) {
  if (r0 + m.rows_ > rows_ || c0 + m.cols_ > cols_) {
    throw Error(Errc::index_out_of_range, "sub-matrix exceeds matrix bounds");
  }
  for (std::size_t r = 0; r < m.rows_; ++r) {
    std::copy_n(m.data_.begin() + static_cast<std::ptrdiff_t>(r * m.cols_), m.cols_,
                data_.begin() + static_cast<std::ptrdiff_t>((r0 + r) * cols_ + c0));
  }
}

Matrix Matrix::adjoint() const {
  Matrix out(cols_, rows_);
  for (std::size_t r = 0; r < rows_; ++r)
    for (std::size_t c = 0; c < cols_; ++c) out(c, r) = std::conj((*this)(r, c));
  return out;
}

bool Matrix::all_finite() const noexcept {
  return std::all_of(data_.begin(), data_.end(), [](const Complex& z) {
    return std::isfinite(z.real()) && std::isfinite(z.imag());
  });
}

Matrix Matrix::shifted_negation(Complex lambda) const {
  if (!is_square()) throw Error(Errc::size_mismatch, "shift requires a square matrix");
  Matrix out(rows_, cols_);
  for (std::size_t i = 0; i < data_.size(); ++i) out.data_[i] = -data_[i];
  for (std::size_t i = 0; i < rows_; ++i) out(i, i) += lambda;
  return out;
}

Matrix& Matrix::operator+=(const Matrix& o) {
  if (rows_ != o.rows_ || cols_ != o.cols_) throw Error(Errc::size_mismatch, "matrix sum shape");
  for (std::size_t i = 0; i < data_.size(); ++i) data_[i] += o.data_[i];
  return *this;
}

Matrix& Matrix::operator-=(const Matrix& o) {
  if (rows_ != o.rows_ || cols_ != o.cols_) throw Error(Errc::size_mismatch, "matrix difference shape");
  for (std::size_t i = 0; i < data_.size(); ++i) data_[i] -= o.data_[i];
  return *this;
}

Matrix& Matrix::operator*=(Complex s) {
  for (auto& z : data_) z *= s;
  return *this;
}

Matrix operator*(const Matrix& a, const Matrix& b) {
  if (a.cols_ != b.rows_) throw Error(Errc::size_mismatch, "matrix product shape");
  Matrix out(a.rows_, b.cols_);
  for (std::size_t i = 0; i < a.rows_; ++i) {
    for (std::size_t k = 0; k < a.cols_; ++k) {
      const Complex aik = a(i, k);
      if (aik == Complex{}) continue;
      for (std::size_t j = 0; j < b.cols_; ++j) out(i, j) += aik * b(k, j);
    }
  }
  return out;
}

Matrix lu_inverse(const Matrix& m) {
  if (!m.is_square()) throw Error(Errc::size_mismatch, "inverse of a non-square matrix");
  const std::size_t n = m.rows();
  const double scale = l1_op_norm(m);
  const double threshold = kSingularPivot * scale;

  Matrix lu = m;
  std::vector<std::size_t> perm(n);
  std::iota(perm.begin(), perm.end(), std::size_t{0});

  for (std::size_t k = 0; k < n; ++k) {
    std::size_t piv = k;
    double best = std::abs(lu(k, k));
    for (std::size_t r = k + 1; r < n; ++r) {
      const double v = std::abs(lu(r, k));
      if (v > best) {
        best = v;
        piv = r;
      }
    }
    if (best == 0.0 || best < threshold) {
      throw Error(Errc::singular, "matrix is singular to working precision (pivot " +
                                      std::to_string(best) + ")");
    }
    if (piv != k) {
      for (std::size_t c = 0; c < n; ++c) std::swap(lu(k, c), lu(piv, c));
      std::swap(perm[k], perm[piv]);
    }
    const Complex inv_pivot = 1.0 / lu(k, k);
    for (std::size_t r = k + 1; r < n; ++r) {
      const Complex f = lu(r, k) * inv_pivot;
      lu(r, k) = f;
      if (f == Complex{}) continue;
      for (std::size_t c = k + 1; c < n; ++c) lu(r, c) -= f * lu(k, c);
    }
  }

  // Solve LU x = P e_j column by column.
  Matrix inv(n, n);
  std::vector<Complex> x(n);
  for (std::size_t j = 0; j < n; ++j) {
    for (std::size_t r = 0; r < n; ++r) x[r] = perm[r] == j ? Complex{1.0} : Complex{};
    for (std::size_t r = 0; r < n; ++r) {
      Complex s = x[r];
      for (std::size_t c = 0; c < r; ++c) s -= lu(r, c) * x[c];
      x[r] = s;
    }
    for (std::size_t r = n; r-- > 0;) {
      Complex s = x[r];
      for (std::size_t c = r + 1; c < n; ++c) s -= lu(r, c) * x[c];
      x[r] = s / lu(r, r);
    }
    for (std::size_t r = 0; r < n; ++r) inv(r, j) = x[r];
  }
  return inv;
}

double l1_op_norm(const Matrix& m) {
  double best = 0.0;
  for (std::size_t c = 0; c < m.cols(); ++c) {
    double s = 0.0;
    for (std::size_t r = 0; r < m.rows(); ++r) s += std::abs(m(r, c));
    best = std::max(best, s);
  }
  return best;
}

double linf_op_norm(const Matrix& m) {
  double best = 0.0;
  for (std::size_t r = 0; r < m.rows(); ++r) {
    double s = 0.0;
    for (std::size_t c = 0; c < m.cols(); ++c) s += std::abs(m(r, c));
    best = std::max(best, s);
  }
  return best;
}

double max_abs(const Matrix& m) {
  double best = 0.0;
  for (const auto& z : m.data()) best = std::max(best, std::abs(z));
  return best;
}

Complex trace(const Matrix& m) {
  Complex t{};
  for (std::size_t i = 0; i < std::min(m.rows(), m.cols()); ++i) t += m(i, i);
  return t;
}

bool is_hermitian(const Matrix& m, double tol) {
  if (!m.is_square()) return false;
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t j = i; j < m.cols(); ++j)
      if (std::abs(m(i, j) - std::conj(m(j, i))) > tol) return false;
  return true;
}

bool spectra_match(std::span<const Complex> a, std::span<const Complex> b, double tol) {
  if (a.size() != b.size()) return false;
  std::vector<bool> used(b.size(), false);
  for (const Complex& z : a) {
    std::size_t best = b.size();
    double best_d = std::numeric_limits<double>::infinity();
    for (std::size_t j = 0; j < b.size(); ++j) {
      if (used[j]) continue;
      const double d = std::abs(z - b[j]);
      if (d < best_d) {
        best_d = d;
        best = j;
      }
    }
    if (best == b.size() || best_d > tol) return false;
    used[best] = true;
  }
  return true;
}

Permutation::Permutation(std::vector<std::size_t> images) : images_(std::move(images)) {
  std::vector<bool> seen(images_.size(), false);
  for (std::size_t v : images_) {
    if (v >= images_.size() || seen[v]) {
      throw Error(Errc::invalid_argument, "permutation images are not a bijection");
    }
    seen[v] = true;
  }
}

Permutation Permutation::identity(std::size_t n) {
  std::vector<std::size_t> img(n);
  std::iota(img.begin(), img.end(), std::size_t{0});
  return Permutation(std::move(img));
}

Permutation Permutation::transposition(std::size_t n, std::size_t a, std::size_t b) {
  if (a >= n || b >= n) throw Error(Errc::index_out_of_range, "transposition index");
  std::vector<std::size_t> img(n);
  std::iota(img.begin(), img.end(), std::size_t{0});
  std::swap(img[a], img[b]);
  return Permutation(std::move(img));
}

Permutation Permutation::inverse() const {
  std::vector<std::size_t> inv(images_.size());
  for (std::size_t i = 0; i < images_.size(); ++i) inv[images_[i]] = i;
  return Permutation(std::move(inv));
}

BlockMatrix::BlockMatrix(Matrix base, std::vector<std::size_t> partition)
    : base_(std::move(base)), partition_(std::move(partition)) {
  if (!base_.is_square() || base_.rows() == 0) {
    throw Error(Errc::size_mismatch, "block matrix base must be square and non-empty");
  }
  if (partition_.empty()) throw Error(Errc::size_mismatch, "empty partition");
  offsets_.reserve(partition_.size());
  std::size_t sum = 0;
  for (std::size_t d : partition_) {
    if (d == 0) throw Error(Errc::size_mismatch, "partition entries must be positive");
    offsets_.push_back(sum);
    sum += d;
  }
  if (sum != base_.rows()) {
    throw Error(Errc::size_mismatch, "partition sums to " + std::to_string(sum) +
                                         " but the matrix has dimension " +
                                         std::to_string(base_.rows()));
  }
}

BlockMatrix::BlockMatrix(Matrix base)
    : BlockMatrix(base, std::vector<std::size_t>(base.rows(), 1)) {}

bool BlockMatrix::is_scalar() const noexcept {
  return std::all_of(partition_.begin(), partition_.end(), [](std::size_t d) { return d == 1; });
}

Matrix BlockMatrix::block(std::size_t i, std::size_t j) const {
  if (i >= num_blocks() || j >= num_blocks()) {
    throw Error(Errc::index_out_of_range, "block index (" + std::to_string(i) + ", " +
                                              std::to_string(j) + ") out of range");
  }
  return base_.sub(offsets_[i], offsets_[j], partition_[i], partition_[j]);
}

BlockMatrix BlockMatrix::upper_left(std::size_t k) const {
  if (k == 0 || k > num_blocks()) {
    throw Error(Errc::index_out_of_range, "upper-left block count " + std::to_string(k));
  }
  if (k == num_blocks()) return *this;
  const std::size_t m = offsets_[k];
  return BlockMatrix(base_.sub(0, 0, m, m),
                     std::vector<std::size_t>(partition_.begin(),
                                              partition_.begin() + static_cast<std::ptrdiff_t>(k)));
}

BlockMatrix BlockMatrix::permute_blocks(const Permutation& pi) const {
  if (pi.size() != num_blocks()) {
    throw Error(Errc::size_mismatch, "permutation acts on " + std::to_string(pi.size()) +
                                         " blocks, matrix has " + std::to_string(num_blocks()));
  }
  const Permutation inv = pi.inverse();
  const std::size_t n = num_blocks();
  std::vector<std::size_t> parts(n);
  std::vector<std::size_t> offs(n);
  std::size_t sum = 0;
  for (std::size_t i = 0; i < n; ++i) {
    parts[i] = partition_[inv(i)];
    offs[i] = sum;
    sum += parts[i];
  }
  Matrix out(dim(), dim());
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) out.set_sub(offs[i], offs[j], block(inv(i), inv(j)));
  return BlockMatrix(std::move(out), std::move(parts));
}

Matrix permutation_matrix(const Permutation& pi, std::span<const std::size_t> partition) {
  if (pi.size() != partition.size()) throw Error(Errc::size_mismatch, "permutation size");
  const std::size_t n = partition.size();
  const Permutation inv = pi.inverse();
  std::vector<std::size_t> src_off(n), dst_off(n);
  std::size_t s = 0;
  for (std::size_t i = 0; i < n; ++i) {
    src_off[i] = s;
    s += partition[i];
  }
  std::size_t d = 0;
  for (std::size_t i = 0; i < n; ++i) {
    dst_off[i] = d;
    d += partition[inv(i)];
  }
  Matrix p(s, s);
  for (std::size_t j = 0; j < n; ++j) {
    const std::size_t row0 = dst_off[pi(j)];
    for (std::size_t t = 0; t < partition[j]; ++t) p(row0 + t, src_off[j] + t) = 1.0;
  }
  return p;
}

}  // namespace schurloc
