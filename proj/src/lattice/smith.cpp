#include "mhs/lattice/smith.hpp"

#include <utility>

#include "mhs/error.hpp"

namespace mhs::lattice {

namespace {

using IntMat = std::vector<std::vector<mpz_class>>;

IntMat to_int(const Matrix& m) {
  if (!m.is_exact() || !m.is_integral()) {
    throw Error(ErrorKind::not_integral, "expected an integer matrix");
  }
  IntMat out(m.rows(), std::vector<mpz_class>(m.cols()));
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t j = 0; j < m.cols(); ++j) out[i][j] = m(i, j).re_q().get_num();
  return out;
}

Matrix from_int(const IntMat& a, std::size_t rows, std::size_t cols) {
  Matrix out(rows, cols);
  for (std::size_t i = 0; i < rows; ++i)
    for (std::size_t j = 0; j < cols; ++j) out(i, j) = Scalar::exact(mpq_class(a[i][j]));
  return out;
}

IntMat int_identity(std::size_t n) {
  IntMat id(n, std::vector<mpz_class>(n, 0));
  for (std::size_t i = 0; i < n; ++i) id[i][i] = 1;
  return id;
}

// row_i += k * row_j on A and U
void add_row(IntMat& a, IntMat& u, std::size_t i, std::size_t j, const mpz_class& k) {
  for (std::size_t c = 0; c < a[i].size(); ++c) a[i][c] += k * a[j][c];
  for (std::size_t c = 0; c < u[i].size(); ++c) u[i][c] += k * u[j][c];
}

// col_i += k * col_j on A and V
void add_col(IntMat& a, IntMat& v, std::size_t i, std::size_t j, const mpz_class& k) {
  for (auto& row : a) row[i] += k * row[j];
  for (auto& row : v) row[i] += k * row[j];
}

void swap_cols(IntMat& a, std::size_t i, std::size_t j) {
  for (auto& row : a) std::swap(row[i], row[j]);
}

}  // namespace

SmithDecomposition smith_normal_form(const Matrix& m) {
  IntMat a = to_int(m);
  const std::size_t rows = m.rows();
  const std::size_t cols = m.cols();
  IntMat u = int_identity(rows);
  IntMat v = int_identity(cols);

  std::vector<mpz_class> factors;
  for (std::size_t t = 0; t < std::min(rows, cols); ++t) {
    while (true) {
      // smallest nonzero entry of the trailing block becomes the pivot
      std::size_t pi = rows, pj = cols;
      for (std::size_t i = t; i < rows; ++i) {
        for (std::size_t j = t; j < cols; ++j) {
          if (a[i][j] == 0) continue;
          if (pi == rows || abs(a[i][j]) < abs(a[pi][pj])) {
            pi = i;
            pj = j;
          }
        }
      }
      if (pi == rows) break;
      std::swap(a[t], a[pi]);
      std::swap(u[t], u[pi]);
      swap_cols(a, t, pj);
      swap_cols(v, t, pj);

      bool clean = true;
      for (std::size_t i = t + 1; i < rows; ++i) {
        if (a[i][t] == 0) continue;
        mpz_class q;
        mpz_fdiv_q(q.get_mpz_t(), a[i][t].get_mpz_t(), a[t][t].get_mpz_t());
        add_row(a, u, i, t, -q);
        if (a[i][t] != 0) clean = false;
      }
      for (std::size_t j = t + 1; j < cols; ++j) {
        if (a[t][j] == 0) continue;
        mpz_class q;
        mpz_fdiv_q(q.get_mpz_t(), a[t][j].get_mpz_t(), a[t][t].get_mpz_t());
        add_col(a, v, j, t, -q);
        if (a[t][j] != 0) clean = false;
      }
      if (!clean) continue;

      // divisibility chain: fold an offending row into the pivot row
      bool divides = true;
      for (std::size_t i = t + 1; i < rows && divides; ++i) {
        for (std::size_t j = t + 1; j < cols; ++j) {
          if (a[i][j] % a[t][t] != 0) {
            add_row(a, u, t, i, 1);
            divides = false;
            break;
          }
        }
      }
      if (divides) break;
    }
    if (a[t][t] == 0) break;
    if (a[t][t] < 0) {
      for (auto& x : a[t]) x = -x;
      for (auto& x : u[t]) x = -x;
    }
    factors.push_back(a[t][t]);
  }

  return SmithDecomposition{from_int(u, rows, rows), from_int(a, rows, cols), from_int(v, cols, cols),
                            std::move(factors)};
}

namespace {

// Multiplies each column by the lcm of its denominators.
Matrix clear_column_denominators(const Matrix& m) {
  Matrix out = m;
  for (std::size_t j = 0; j < m.cols(); ++j) {
    mpz_class l = 1;
    for (std::size_t i = 0; i < m.rows(); ++i) mpz_lcm(l.get_mpz_t(), l.get_mpz_t(), m(i, j).re_q().get_den_mpz_t());
    const Scalar s = Scalar::exact(mpq_class(l));
    for (std::size_t i = 0; i < m.rows(); ++i) out(i, j) *= s;
  }
  return out;
}

}  // namespace

Matrix saturated_basis(const Subspace& v) {
  const Matrix& b = v.basis();
  if (!b.is_exact() || !b.is_real()) {
    throw Error(ErrorKind::not_integral, "saturation requires a subspace defined over Q");
  }
  if (v.dim() == 0) return Matrix(v.ambient(), 0);
  const SmithDecomposition snf = smith_normal_form(clear_column_denominators(b));
  return inverse(snf.U).col_range(0, snf.rank());
}

std::optional<Matrix> solve_integer(const Matrix& a, const Matrix& b) {
  if (a.rows() != b.rows() || b.cols() != 1) throw Error(ErrorKind::dimension_mismatch, "solve_integer: shape mismatch");
  if (!a.is_exact() || !b.is_exact() || !a.is_real() || !b.is_real()) {
    throw Error(ErrorKind::not_integral, "solve_integer requires rational input");
  }
  // scale each row to integers
  Matrix aug = Matrix::hcat(a, b);
  Matrix scaled = clear_column_denominators(aug.transpose()).transpose();
  const Matrix ai = scaled.col_range(0, a.cols());
  const Matrix bi = scaled.col(a.cols());

  const SmithDecomposition snf = smith_normal_form(ai);
  const Matrix ub = snf.U * bi;
  Matrix z(a.cols(), 1);
  for (std::size_t i = 0; i < ub.rows(); ++i) {
    const mpz_class rhs = ub(i, 0).re_q().get_num();
    if (i < snf.rank()) {
      if (rhs % snf.invariant_factors[i] != 0) return std::nullopt;
      z(i, 0) = Scalar::exact(mpq_class(rhs / snf.invariant_factors[i]));
    } else if (rhs != 0) {
      return std::nullopt;
    }
  }
  return snf.V * z;
}

Matrix integer_right_inverse(const Matrix& g) {
  const SmithDecomposition snf = smith_normal_form(g);
  const std::size_t r = g.rows();
  if (snf.rank() != r) throw Error(ErrorKind::not_surjective, "g not surjective: rank deficient");
  for (const auto& d : snf.invariant_factors) {
    if (d != 1) throw Error(ErrorKind::not_surjective, "g not surjective over Z: image has index " + mpz_class(d).get_str());
  }
  // G = U^-1 D V^-1 with D = [I | 0]  =>  S = V D^T U
  Matrix dt(g.cols(), r);
  for (std::size_t i = 0; i < r; ++i) dt(i, i) = Scalar::one(BackendKind::exact);
  return snf.V * dt * snf.U;
}

Matrix integer_left_inverse(const Matrix& f) {
  const SmithDecomposition snf = smith_normal_form(f);
  const std::size_t c = f.cols();
  if (snf.rank() != c) throw Error(ErrorKind::invalid_input, "f not injective");
  for (const auto& d : snf.invariant_factors) {
    if (d != 1) throw Error(ErrorKind::invalid_input, "f image not saturated");
  }
  Matrix dt(c, f.rows());
  for (std::size_t i = 0; i < c; ++i) dt(i, i) = Scalar::one(BackendKind::exact);
  return snf.V * dt * snf.U;
}

bool is_unimodular(const Matrix& m) {
  if (m.rows() != m.cols() || !m.is_exact() || !m.is_integral()) return false;
  const Scalar d = determinant(m);
  return d == Scalar::integer(1, BackendKind::exact) || d == Scalar::integer(-1, BackendKind::exact);
}

mpz_class content(const Matrix& m) {
  mpz_class g = 0;
  for (std::size_t i = 0; i < m.rows(); ++i) {
    for (std::size_t j = 0; j < m.cols(); ++j) {
      if (!m(i, j).is_integer()) throw Error(ErrorKind::not_integral, "content of a non-integer matrix");
      mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), m(i, j).re_q().get_num_mpz_t());
    }
  }
  return g;
}

}  // namespace mhs::lattice
