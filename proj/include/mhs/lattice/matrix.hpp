#pragma once

#include <cstddef>
#include <optional>
#include <vector>

#include "mhs/lattice/scalar.hpp"

namespace mhs::lattice {

/// Dense matrix of scalars sharing one backend. Row-major storage.
class Matrix {
 public:
  Matrix() = default;
  Matrix(std::size_t rows, std::size_t cols, Backend backend = Backend::exact());

  static Matrix identity(std::size_t n, Backend backend = Backend::exact());
  static Matrix from_ints(const std::vector<std::vector<long>>& rows);
  static Matrix from_rows(const std::vector<std::vector<Scalar>>& rows, Backend backend);
  static Matrix column(const std::vector<Scalar>& entries, Backend backend);

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  const Backend& backend() const { return backend_; }
  BackendKind kind() const { return backend_.kind; }
  bool is_exact() const { return backend_.is_exact(); }
  bool empty() const { return rows_ == 0 || cols_ == 0; }

  Scalar& operator()(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }
  const Scalar& operator()(std::size_t i, std::size_t j) const { return data_[i * cols_ + j]; }

  Matrix col(std::size_t j) const;
  Matrix row(std::size_t i) const;
  Matrix col_range(std::size_t first, std::size_t count) const;
  Matrix row_range(std::size_t first, std::size_t count) const;

  Matrix transpose() const;
  Matrix conj() const;
  Matrix real_part() const;
  Matrix imag_part() const;

  static Matrix hcat(const Matrix& a, const Matrix& b);
  static Matrix vcat(const Matrix& a, const Matrix& b);

  Matrix& operator+=(const Matrix& o);
  Matrix& operator-=(const Matrix& o);
  friend Matrix operator+(Matrix a, const Matrix& b) { return a += b; }
  friend Matrix operator-(Matrix a, const Matrix& b) { return a -= b; }
  friend Matrix operator*(const Matrix& a, const Matrix& b);
  friend Matrix operator*(const Scalar& s, Matrix m);
  Matrix operator-() const;

  bool is_zero() const;
  bool is_real() const;
  bool is_integral() const;
  double max_abs() const;

  /// Exact entry-wise equality (and equal backend kind and shape).
  friend bool operator==(const Matrix& a, const Matrix& b);
  bool approx_equal(const Matrix& o, double tol) const;

  Matrix to_floating(double rank_tol = 1e-9) const;
  Matrix with_backend(Backend backend) const;

 private:
  void require_same_shape(const Matrix& o, const char* op) const;

  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  Backend backend_ = Backend::exact();
  std::vector<Scalar> data_;
};

struct RowEchelon {
  Matrix reduced;                   // reduced row echelon form, zero rows at the bottom
  std::vector<std::size_t> pivots;  // pivot column of each nonzero row
  std::size_t rank() const { return pivots.size(); }
};

/// Reduced row echelon form. On the float backend a pivot candidate is
/// negligible when its modulus is at most rank_tol times the largest
/// singular value of the input.
/// Float entries below rank_tol * max(sigma_max(m), scale) count as zero; pass
/// `scale` when m is derived from larger data and may be pure rounding noise.
RowEchelon row_reduce(const Matrix& m, double scale = 0.0);

std::size_t rank(const Matrix& m);
double largest_singular_value(const Matrix& m);

/// Columns spanning the null space, one per free variable.
Matrix kernel_basis(const Matrix& m);

/// Particular solution X of A X = B with free variables set to zero.
std::optional<Matrix> solve(const Matrix& a, const Matrix& b);

Matrix inverse(const Matrix& m);
Scalar determinant(const Matrix& m);

/// Column-major vectorization of an r x c matrix into an rc x 1 column.
Matrix vectorize(const Matrix& m);
Matrix unvectorize(const Matrix& v, std::size_t rows, std::size_t cols);

}  // namespace mhs::lattice
