#pragma once

// Dense complex matrices, block partitions, and the numerical kernels the
// region code relies on: LU inversion, induced l1 norms and an eigenvalue
// oracle. All indices in this header are zero-based.

#include <complex>
#include <cstddef>
#include <initializer_list>
#include <span>
#include <vector>

namespace schurloc {

using Complex = std::complex<double>;

/// Row-major dense complex matrix. Rectangular shapes are allowed because
/// off-diagonal blocks of a partition are rectangular.
class Matrix {
 public:
  Matrix() = default;
  Matrix(std::size_t rows, std::size_t cols);
  Matrix(std::initializer_list<std::initializer_list<Complex>> rows);

  static Matrix identity(std::size_t n);
  static Matrix diagonal(std::span<const Complex> diag);

  std::size_t rows() const noexcept { return rows_; }
  std::size_t cols() const noexcept { return cols_; }
  bool is_square() const noexcept { return rows_ == cols_; }
  bool empty() const noexcept { return data_.empty(); }

  Complex& operator()(std::size_t r, std::size_t c) { return data_[r * cols_ + c]; }
  const Complex& operator()(std::size_t r, std::size_t c) const { return data_[r * cols_ + c]; }

  std::span<const Complex> data() const noexcept { return data_; }
  std::span<Complex> data() noexcept { return data_; }

  Matrix sub(std::size_t r0, std::size_t c0, std::size_t nr, std::size_t nc) const;
  void set_sub(std::size_t r0, std::size_t c0, const Matrix& m);

  Matrix adjoint() const;
  bool all_finite() const noexcept;

  /// lambda*I - this; requires a square matrix.
  Matrix shifted_negation(Complex lambda) const;

  Matrix& operator+=(const Matrix& o);
  Matrix& operator-=(const Matrix& o);
  Matrix& operator*=(Complex s);

  friend Matrix operator+(Matrix a, const Matrix& b) { return a += b; }
  friend Matrix operator-(Matrix a, const Matrix& b) { return a -= b; }
  friend Matrix operator*(Matrix a, Complex s) { return a *= s; }
  friend Matrix operator*(const Matrix& a, const Matrix& b);
  friend bool operator==(const Matrix& a, const Matrix& b) = default;

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<Complex> data_;
};

/// Relative pivot threshold below which a matrix counts as singular.
inline constexpr double kSingularPivot = 1e-12;

/// Inverse by LU with partial pivoting. Throws Error{singular} when the
/// smallest pivot falls below kSingularPivot times the largest initial
/// column absolute-sum.
Matrix lu_inverse(const Matrix& m);

/// Induced l1 operator norm: the largest column absolute-sum.
double l1_op_norm(const Matrix& m);
/// Induced l-infinity operator norm: the largest row absolute-sum.
double linf_op_norm(const Matrix& m);
double max_abs(const Matrix& m);
Complex trace(const Matrix& m);
bool is_hermitian(const Matrix& m, double tol);

/// Eigenvalues with algebraic multiplicity, sorted by (real, imag).
using Spectrum = std::vector<Complex>;

/// Balancing, Hessenberg reduction and single-shift complex QR. Throws
/// Error{no_convergence} after 100*n iterations on one eigenvalue.
Spectrum eigenvalues(const Matrix& m);

/// Greedy nearest-neighbour pairing of two multisets; true when every pair
/// is within tol.
bool spectra_match(std::span<const Complex> a, std::span<const Complex> b, double tol);

/// A bijection of {0, ..., n-1}. images()[i] is the image of i.
class Permutation {
 public:
  explicit Permutation(std::vector<std::size_t> images);

  static Permutation identity(std::size_t n);
  static Permutation transposition(std::size_t n, std::size_t a, std::size_t b);

  std::size_t size() const noexcept { return images_.size(); }
  std::size_t operator()(std::size_t i) const { return images_.at(i); }
  const std::vector<std::size_t>& images() const noexcept { return images_; }
  Permutation inverse() const;

 private:
  std::vector<std::size_t> images_;
};

/// A square matrix viewed as an n x n operator matrix with block sizes
/// partition()[0..n).
class BlockMatrix {
 public:
  BlockMatrix(Matrix base, std::vector<std::size_t> partition);
  /// All-ones partition.
  explicit BlockMatrix(Matrix base);

  const Matrix& base() const noexcept { return base_; }
  const std::vector<std::size_t>& partition() const noexcept { return partition_; }
  std::size_t num_blocks() const noexcept { return partition_.size(); }
  std::size_t dim() const noexcept { return base_.rows(); }
  std::size_t offset(std::size_t i) const { return offsets_.at(i); }
  std::size_t block_size(std::size_t i) const { return partition_.at(i); }
  bool is_scalar() const noexcept;

  Matrix block(std::size_t i, std::size_t j) const;
  /// Leading k x k block sub-matrix, 1 <= k <= num_blocks().
  BlockMatrix upper_left(std::size_t k) const;
  /// Block (i, j) of the result is block (pi^-1(i), pi^-1(j)) of this.
  BlockMatrix permute_blocks(const Permutation& pi) const;

 private:
  Matrix base_;
  std::vector<std::size_t> partition_;
  std::vector<std::size_t> offsets_;
};

/// The block permutation matrix P with P_{pi(j), j} = Id, so that
/// permute_blocks(pi).base() == P * base * P^T.
Matrix permutation_matrix(const Permutation& pi, std::span<const std::size_t> partition);

}  // namespace schurloc
