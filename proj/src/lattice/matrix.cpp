#include "mhs/lattice/matrix.hpp"

#include <algorithm>
#include <cmath>

#include <Eigen/SVD>

#include "mhs/error.hpp"

namespace mhs::lattice {

Matrix::Matrix(std::size_t rows, std::size_t cols, Backend backend)
    : rows_(rows), cols_(cols), backend_(backend), data_(rows * cols, Scalar::zero(backend.kind)) {}

Matrix Matrix::identity(std::size_t n, Backend backend) {
  Matrix m(n, n, backend);
  for (std::size_t i = 0; i < n; ++i) m(i, i) = Scalar::one(backend.kind);
  return m;
}

Matrix Matrix::from_ints(const std::vector<std::vector<long>>& rows) {
  const std::size_t r = rows.size();
  const std::size_t c = r == 0 ? 0 : rows.front().size();
  Matrix m(r, c);
  for (std::size_t i = 0; i < r; ++i) {
    if (rows[i].size() != c) throw Error(ErrorKind::dimension_mismatch, "ragged integer matrix");
    for (std::size_t j = 0; j < c; ++j) m(i, j) = Scalar::integer(rows[i][j], BackendKind::exact);
  }
  return m;
}

Matrix Matrix::from_rows(const std::vector<std::vector<Scalar>>& rows, Backend backend) {
  const std::size_t r = rows.size();
  const std::size_t c = r == 0 ? 0 : rows.front().size();
  Matrix m(r, c, backend);
  for (std::size_t i = 0; i < r; ++i) {
    if (rows[i].size() != c) throw Error(ErrorKind::dimension_mismatch, "ragged matrix");
    for (std::size_t j = 0; j < c; ++j) {
      if (rows[i][j].backend() != backend.kind) {
        throw Error(ErrorKind::backend_mismatch, "matrix entry backend differs from matrix backend");
      }
      m(i, j) = rows[i][j];
    }
  }
  return m;
}

Matrix Matrix::column(const std::vector<Scalar>& entries, Backend backend) {
  Matrix m(entries.size(), 1, backend);
  for (std::size_t i = 0; i < entries.size(); ++i) {
    if (entries[i].backend() != backend.kind) {
      throw Error(ErrorKind::backend_mismatch, "vector entry backend differs from backend");
    }
    m(i, 0) = entries[i];
  }
  return m;
}

Matrix Matrix::col(std::size_t j) const { return col_range(j, 1); }
Matrix Matrix::row(std::size_t i) const { return row_range(i, 1); }

Matrix Matrix::col_range(std::size_t first, std::size_t count) const {
  if (first + count > cols_) throw Error(ErrorKind::dimension_mismatch, "column range out of bounds");
  Matrix out(rows_, count, backend_);
  for (std::size_t i = 0; i < rows_; ++i)
    for (std::size_t j = 0; j < count; ++j) out(i, j) = (*this)(i, first + j);
  return out;
}

Matrix Matrix::row_range(std::size_t first, std::size_t count) const {
  if (first + count > rows_) throw Error(ErrorKind::dimension_mismatch, "row range out of bounds");
  Matrix out(count, cols_, backend_);
  for (std::size_t i = 0; i < count; ++i)
    for (std::size_t j = 0; j < cols_; ++j) out(i, j) = (*this)(first + i, j);
  return out;
}

Matrix Matrix::transpose() const {
  Matrix out(cols_, rows_, backend_);
  for (std::size_t i = 0; i < rows_; ++i)
    for (std::size_t j = 0; j < cols_; ++j) out(j, i) = (*this)(i, j);
  return out;
}

Matrix Matrix::conj() const {
  Matrix out = *this;
  for (auto& s : out.data_) s = s.conj();
  return out;
}

Matrix Matrix::real_part() const {
  Matrix out = *this;
  for (auto& s : out.data_) s = s.real_part();
  return out;
}

Matrix Matrix::imag_part() const {
  Matrix out = *this;
  for (auto& s : out.data_) s = s.imag_part();
  return out;
}

Matrix Matrix::hcat(const Matrix& a, const Matrix& b) {
  if (a.cols_ == 0) return b;
  if (b.cols_ == 0) return a;
  if (a.rows_ != b.rows_) throw Error(ErrorKind::dimension_mismatch, "hcat: row counts differ");
  if (!(a.backend_ == b.backend_)) throw Error(ErrorKind::backend_mismatch, "hcat: backend mismatch");
  Matrix out(a.rows_, a.cols_ + b.cols_, a.backend_);
  for (std::size_t i = 0; i < a.rows_; ++i) {
    for (std::size_t j = 0; j < a.cols_; ++j) out(i, j) = a(i, j);
    for (std::size_t j = 0; j < b.cols_; ++j) out(i, a.cols_ + j) = b(i, j);
  }
  return out;
}

Matrix Matrix::vcat(const Matrix& a, const Matrix& b) {
  if (a.rows_ == 0) return b;
  if (b.rows_ == 0) return a;
  if (a.cols_ != b.cols_) throw Error(ErrorKind::dimension_mismatch, "vcat: column counts differ");
  if (!(a.backend_ == b.backend_)) throw Error(ErrorKind::backend_mismatch, "vcat: backend mismatch");
  Matrix out(a.rows_ + b.rows_, a.cols_, a.backend_);
  std::copy(a.data_.begin(), a.data_.end(), out.data_.begin());
  std::copy(b.data_.begin(), b.data_.end(), out.data_.begin() + static_cast<std::ptrdiff_t>(a.data_.size()));
  return out;
}

void Matrix::require_same_shape(const Matrix& o, const char* op) const {
  if (rows_ != o.rows_ || cols_ != o.cols_) {
    throw Error(ErrorKind::dimension_mismatch, std::string(op) + ": shape mismatch");
  }
  if (!(backend_ == o.backend_)) throw Error(ErrorKind::backend_mismatch, std::string(op) + ": backend mismatch");
}

Matrix& Matrix::operator+=(const Matrix& o) {
  require_same_shape(o, "add");
  for (std::size_t k = 0; k < data_.size(); ++k) data_[k] += o.data_[k];
  return *this;
}

Matrix& Matrix::operator-=(const Matrix& o) {
  require_same_shape(o, "subtract");
  for (std::size_t k = 0; k < data_.size(); ++k) data_[k] -= o.data_[k];
  return *this;
}

Matrix operator*(const Matrix& a, const Matrix& b) {
  if (a.cols_ != b.rows_) throw Error(ErrorKind::dimension_mismatch, "multiply: inner dimensions differ");
  if (!(a.backend_ == b.backend_)) throw Error(ErrorKind::backend_mismatch, "multiply: backend mismatch");
  Matrix out(a.rows_, b.cols_, a.backend_);
  for (std::size_t i = 0; i < a.rows_; ++i) {
    for (std::size_t k = 0; k < a.cols_; ++k) {
      const Scalar& aik = a(i, k);
      if (aik.is_zero()) continue;
      for (std::size_t j = 0; j < b.cols_; ++j) {
        if (b(k, j).is_zero()) continue;
        out(i, j) += aik * b(k, j);
      }
    }
  }
  return out;
}

Matrix operator*(const Scalar& s, Matrix m) {
  for (auto& x : m.data_) x *= s;
  return m;
}

Matrix Matrix::operator-() const {
  Matrix out = *this;
  for (auto& s : out.data_) s = -s;
  return out;
}

bool Matrix::is_zero() const {
  return std::all_of(data_.begin(), data_.end(), [](const Scalar& s) { return s.is_zero(); });
}

bool Matrix::is_real() const {
  return std::all_of(data_.begin(), data_.end(), [](const Scalar& s) { return s.is_real(); });
}

bool Matrix::is_integral() const {
  return std::all_of(data_.begin(), data_.end(), [](const Scalar& s) { return s.is_integer(); });
}

double Matrix::max_abs() const {
  double m = 0.0;
  for (const auto& s : data_) m = std::max(m, s.abs());
  return m;
}

bool operator==(const Matrix& a, const Matrix& b) {
  return a.rows_ == b.rows_ && a.cols_ == b.cols_ && a.backend_ == b.backend_ && a.data_ == b.data_;
}

bool Matrix::approx_equal(const Matrix& o, double tol) const {
  if (rows_ != o.rows_ || cols_ != o.cols_) return false;
  for (std::size_t k = 0; k < data_.size(); ++k) {
    if (std::abs(data_[k].to_complex() - o.data_[k].to_complex()) > tol) return false;
  }
  return true;
}

Matrix Matrix::to_floating(double rank_tol) const {
  Matrix out(rows_, cols_, Backend::floating(rank_tol));
  for (std::size_t k = 0; k < data_.size(); ++k) out.data_[k] = Scalar::floating(data_[k].to_complex());
  return out;
}

Matrix Matrix::with_backend(Backend backend) const {
  if (backend.kind == backend_.kind) {
    Matrix out = *this;
    out.backend_ = backend;
    return out;
  }
  if (backend.kind == BackendKind::floating) return to_floating(backend.rank_tol);
  throw Error(ErrorKind::backend_mismatch, "cannot convert float matrix to exact backend");
}

double largest_singular_value(const Matrix& m) {
  if (m.empty()) return 0.0;
  Eigen::MatrixXcd e(m.rows(), m.cols());
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t j = 0; j < m.cols(); ++j) e(i, j) = m(i, j).to_complex();
  Eigen::JacobiSVD<Eigen::MatrixXcd> svd(e);
  return svd.singularValues().size() == 0 ? 0.0 : svd.singularValues()(0);
}

RowEchelon row_reduce(const Matrix& m, double scale) {
  RowEchelon out{m, {}};
  Matrix& r = out.reduced;
  const bool exact = m.is_exact();
  const double threshold = exact ? 0.0 : m.backend().rank_tol * std::max(largest_singular_value(m), scale);
  const BackendKind kind = m.kind();

  std::size_t row = 0;
  for (std::size_t c = 0; c < r.cols() && row < r.rows(); ++c) {
    std::size_t best = r.rows();
    if (exact) {
      for (std::size_t i = row; i < r.rows(); ++i) {
        if (!r(i, c).is_zero()) {
          best = i;
          break;
        }
      }
    } else {
      double best_abs = threshold;
      for (std::size_t i = row; i < r.rows(); ++i) {
        const double a = r(i, c).abs();
        if (a > best_abs) {
          best_abs = a;
          best = i;
        }
      }
    }
    if (best == r.rows()) {
      if (!exact) {
        for (std::size_t i = row; i < r.rows(); ++i) r(i, c) = Scalar::zero(kind);
      }
      continue;
    }
    if (best != row) {
      for (std::size_t j = 0; j < r.cols(); ++j) std::swap(r(row, j), r(best, j));
    }
    const Scalar pivot = r(row, c);
    for (std::size_t j = c; j < r.cols(); ++j) r(row, j) /= pivot;
    r(row, c) = Scalar::one(kind);
    for (std::size_t i = 0; i < r.rows(); ++i) {
      if (i == row || r(i, c).is_zero()) continue;
      const Scalar factor = r(i, c);
      for (std::size_t j = c; j < r.cols(); ++j) {
        if (!r(row, j).is_zero()) r(i, j) -= factor * r(row, j);
      }
      r(i, c) = Scalar::zero(kind);
    }
    out.pivots.push_back(c);
    ++row;
  }
  if (!exact) {
    for (std::size_t i = row; i < r.rows(); ++i)
      for (std::size_t j = 0; j < r.cols(); ++j) r(i, j) = Scalar::zero(kind);
  }
  return out;
}

std::size_t rank(const Matrix& m) { return row_reduce(m).rank(); }

Matrix kernel_basis(const Matrix& m) {
  const RowEchelon ech = row_reduce(m);
  const std::size_t n = m.cols();
  std::vector<bool> is_pivot(n, false);
  for (auto p : ech.pivots) is_pivot[p] = true;
  std::vector<std::size_t> free_cols;
  for (std::size_t j = 0; j < n; ++j)
    if (!is_pivot[j]) free_cols.push_back(j);

  Matrix out(n, free_cols.size(), m.backend());
  for (std::size_t k = 0; k < free_cols.size(); ++k) {
    const std::size_t fc = free_cols[k];
    out(fc, k) = Scalar::one(m.kind());
    for (std::size_t r = 0; r < ech.pivots.size(); ++r) out(ech.pivots[r], k) = -ech.reduced(r, fc);
  }
  return out;
}

std::optional<Matrix> solve(const Matrix& a, const Matrix& b) {
  if (a.rows() != b.rows()) throw Error(ErrorKind::dimension_mismatch, "solve: row counts differ");
  const RowEchelon ech = row_reduce(Matrix::hcat(a, b));
  const std::size_t n = a.cols();
  // inconsistent iff some pivot lies in the augmented block
  for (auto p : ech.pivots)
    if (p >= n) return std::nullopt;
  Matrix x(n, b.cols(), a.backend());
  for (std::size_t r = 0; r < ech.pivots.size(); ++r)
    for (std::size_t j = 0; j < b.cols(); ++j) x(ech.pivots[r], j) = ech.reduced(r, n + j);
  if (!a.is_exact()) {
    // residual check guards against pivots lost to the tolerance
    const Matrix res = a * x - b;
    if (res.max_abs() > 1e3 * a.backend().rank_tol * std::max(1.0, b.max_abs())) return std::nullopt;
  }
  return x;
}

Matrix inverse(const Matrix& m) {
  if (m.rows() != m.cols()) throw Error(ErrorKind::dimension_mismatch, "inverse of non-square matrix");
  const std::size_t n = m.rows();
  const RowEchelon ech = row_reduce(Matrix::hcat(m, Matrix::identity(n, m.backend())));
  if (ech.rank() < n || (n > 0 && ech.pivots[n - 1] >= n)) {
    throw Error(ErrorKind::singular, "matrix is singular");
  }
  return ech.reduced.col_range(n, n);
}

Scalar determinant(const Matrix& m) {
  if (m.rows() != m.cols()) throw Error(ErrorKind::dimension_mismatch, "determinant of non-square matrix");
  Matrix r = m;
  const std::size_t n = r.rows();
  Scalar det = Scalar::one(m.kind());
  for (std::size_t c = 0; c < n; ++c) {
    std::size_t p = n;
    double best = -1.0;
    for (std::size_t i = c; i < n; ++i) {
      if (r(i, c).is_zero()) continue;
      if (m.is_exact()) {
        p = i;
        break;
      }
      if (r(i, c).abs() > best) {
        best = r(i, c).abs();
        p = i;
      }
    }
    if (p == n) return Scalar::zero(m.kind());
    if (p != c) {
      for (std::size_t j = 0; j < n; ++j) std::swap(r(p, j), r(c, j));
      det = -det;
    }
    det *= r(c, c);
    for (std::size_t i = c + 1; i < n; ++i) {
      if (r(i, c).is_zero()) continue;
      const Scalar factor = r(i, c) / r(c, c);
      for (std::size_t j = c; j < n; ++j) r(i, j) -= factor * r(c, j);
    }
  }
  return det;
}

Matrix vectorize(const Matrix& m) {
  Matrix v(m.rows() * m.cols(), 1, m.backend());
  for (std::size_t j = 0; j < m.cols(); ++j)
    for (std::size_t i = 0; i < m.rows(); ++i) v(i + j * m.rows(), 0) = m(i, j);
  return v;
}

Matrix unvectorize(const Matrix& v, std::size_t rows, std::size_t cols) {
  if (v.rows() != rows * cols || v.cols() != 1) throw Error(ErrorKind::dimension_mismatch, "unvectorize: size mismatch");
  Matrix m(rows, cols, v.backend());
  for (std::size_t j = 0; j < cols; ++j)
    for (std::size_t i = 0; i < rows; ++i) m(i, j) = v(i + j * rows, 0);
  return m;
}

}  // namespace mhs::lattice
