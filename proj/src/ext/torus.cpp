#include "mhs/ext/torus.hpp"

#include <cmath>
#include <utility>

#include <Eigen/Dense>

#include "mhs/error.hpp"
#include "mhs/lattice/smith.hpp"

namespace mhs {

using lattice::BackendKind;

std::string to_string(TorusKind kind) {
  switch (kind) {
    case TorusKind::real_torus:
      return "real_torus";
    case TorusKind::j0hom:
      return "j0hom";
    case TorusKind::complex_lattice:
      return "complex_lattice";
    case TorusKind::periods:
      return "periods";
  }
  return "unknown";
}

namespace {

Eigen::MatrixXd real_eigen(const Matrix& m) {
  Eigen::MatrixXd out(m.rows(), m.cols());
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t j = 0; j < m.cols(); ++j) out(i, j) = m(i, j).real_double();
  return out;
}

Matrix stack_real_imag(const Matrix& m) { return Matrix::vcat(m.real_part(), m.imag_part()); }

}  // namespace

TorusElement::TorusElement(TorusKind kind, std::string ambient, Matrix representative, Matrix lattice, Matrix point,
                           double tolerance)
    : kind_(kind),
      ambient_(std::move(ambient)),
      representative_(std::move(representative)),
      lattice_(std::move(lattice)),
      point_(std::move(point)),
      tolerance_(tolerance) {
  if (point_.cols() != 1 || lattice_.rows() != point_.rows()) {
    throw Error(ErrorKind::dimension_mismatch, "torus element: point and lattice shapes disagree");
  }
  if (!(lattice_.backend() == point_.backend())) {
    throw Error(ErrorKind::backend_mismatch, "torus element: lattice and point backends differ");
  }
  if (!lattice_.is_real() || !point_.is_real()) {
    if (point_.is_exact()) throw Error(ErrorKind::invalid_input, "torus element: coordinates must be real");
    lattice_ = lattice_.real_part();
    point_ = point_.real_part();
  }
  if (lattice::rank(lattice_) != lattice_.cols()) {
    throw Error(ErrorKind::assumption_failure, "torus element: lattice generators are dependent in " + ambient_);
  }
}

TorusElement::Canonical TorusElement::canonical() const {
  const std::size_t r = lattice_.cols();
  if (r == 0) return {Matrix(0, 1, point_.backend()), point_};
  const Matrix gram = lattice_.transpose() * lattice_;
  Matrix x = lattice::inverse(gram) * (lattice_.transpose() * point_);
  const Matrix transverse = point_ - lattice_ * x;
  for (std::size_t i = 0; i < r; ++i) {
    if (x.is_exact()) {
      const mpq_class& q = x(i, 0).re_q();
      mpz_class fl;
      mpz_fdiv_q(fl.get_mpz_t(), q.get_num_mpz_t(), q.get_den_mpz_t());
      x(i, 0) = Scalar::exact(q - mpq_class(fl));
    } else {
      double v = x(i, 0).real_double();
      v -= std::floor(v);
      if (v >= 1.0) v = 0.0;
      x(i, 0) = Scalar::floating({v, 0.0});
    }
  }
  return {x, transverse};
}

double TorusElement::distance_to_lattice() const {
  const Eigen::MatrixXd phi = real_eigen(lattice_);
  const Eigen::VectorXd t = real_eigen(point_);
  if (phi.cols() == 0) return t.norm();
  const Eigen::VectorXd x = phi.colPivHouseholderQr().solve(t);
  Eigen::VectorXd n = x.array().round().matrix();
  double best = (t - phi * n).norm();
  // neighbouring cells catch rounding ties in skewed bases
  if (phi.cols() <= 4) {
    const long cells = static_cast<long>(std::pow(3, phi.cols()));
    for (long code = 0; code < cells; ++code) {
      Eigen::VectorXd m = n;
      long c = code;
      for (Eigen::Index i = 0; i < phi.cols(); ++i) {
        m(i) += static_cast<double>(c % 3 - 1);
        c /= 3;
      }
      best = std::min(best, (t - phi * m).norm());
    }
  }
  return best;
}

bool TorusElement::is_zero() const {
  if (is_exact()) {
    if (lattice_.cols() == 0) return point_.is_zero();
    return lattice::solve_integer(lattice_, point_).has_value();
  }
  return distance_to_lattice() <= tolerance_;
}

void TorusElement::require_same_ambient(const TorusElement& o) const {
  if (kind_ != o.kind_ || lattice_.rows() != o.lattice_.rows() || lattice_.cols() != o.lattice_.cols()) {
    throw Error(ErrorKind::dimension_mismatch, "torus elements live in different ambients: " + ambient_ + " vs " +
                                                   o.ambient_);
  }
  if (!(point_.backend() == o.point_.backend())) {
    throw Error(ErrorKind::backend_mismatch, "torus elements on different backends");
  }
  const bool same = is_exact() ? lattice_ == o.lattice_ : lattice_.approx_equal(o.lattice_, tolerance_);
  if (!same) throw Error(ErrorKind::dimension_mismatch, "torus elements have different period lattices");
}

TorusElement TorusElement::operator+(const TorusElement& o) const {
  require_same_ambient(o);
  return TorusElement(kind_, ambient_, representative_ + o.representative_, lattice_, point_ + o.point_, tolerance_);
}

TorusElement TorusElement::operator-(const TorusElement& o) const {
  require_same_ambient(o);
  return TorusElement(kind_, ambient_, representative_ - o.representative_, lattice_, point_ - o.point_, tolerance_);
}

bool operator==(const TorusElement& a, const TorusElement& b) { return (a - b).is_zero(); }

TorusElement real_torus_element(const Matrix& value) {
  if (value.cols() != 1) throw Error(ErrorKind::dimension_mismatch, "A_R/A_Z element must be a column vector");
  Matrix v = value;
  if (!v.is_real()) {
    if (v.is_exact() || v.imag_part().max_abs() > v.backend().rank_tol * std::max(1.0, v.max_abs())) {
      throw Error(ErrorKind::invalid_input, "A_R/A_Z element has a nonzero imaginary part");
    }
    v = v.real_part();
  }
  return TorusElement(TorusKind::real_torus, "A_R/A_Z (rank " + std::to_string(v.rows()) + ")", v,
                      Matrix::identity(v.rows(), v.backend()), v);
}

Matrix f0_hom_constraints(const MixedHodgeStructure& b, const MixedHodgeStructure& a) {
  if (!(a.backend() == b.backend())) throw Error(ErrorKind::backend_mismatch, "F^0 Hom: backends differ");
  const std::size_t na = a.rank();
  const std::size_t nb = b.rank();
  const Backend backend = a.backend();
  Matrix rows(0, na * nb, backend);
  if (na == 0 || nb == 0) return rows;
  for (int p = b.lowest_hodge_index(); p <= b.highest_hodge_index(); ++p) {
    const Matrix fb = b.F(p).basis();
    if (fb.cols() == 0) continue;
    const Matrix ann = lattice::annihilator(a.F(p)).basis();
    for (std::size_t l = 0; l < ann.cols(); ++l) {
      for (std::size_t c = 0; c < fb.cols(); ++c) {
        Matrix row(1, na * nb, backend);
        for (std::size_t j = 0; j < nb; ++j)
          for (std::size_t i = 0; i < na; ++i) row(0, j * na + i) = ann(i, l) * fb(j, c);
        rows = Matrix::vcat(rows, row);
      }
    }
  }
  if (rows.rows() == 0) return rows;
  return Subspace::span(rows.transpose()).basis().transpose();
}

Subspace f0_hom(const MixedHodgeStructure& b, const MixedHodgeStructure& a) {
  const Matrix c = f0_hom_constraints(b, a);
  if (c.rows() == 0) return Subspace::full(a.rank() * b.rank(), a.backend());
  return lattice::kernel(c);
}

bool in_f0_hom(const MixedHodgeStructure& b, const MixedHodgeStructure& a, const Matrix& hom) {
  if (hom.rows() != a.rank() || hom.cols() != b.rank()) {
    throw Error(ErrorKind::dimension_mismatch, "F^0 Hom membership: hom has the wrong shape");
  }
  return f0_hom(b, a).contains(lattice::vectorize(hom));
}

TorusElement j0hom_element(const MixedHodgeStructure& b, const MixedHodgeStructure& a, const Matrix& hom) {
  if (hom.rows() != a.rank() || hom.cols() != b.rank()) {
    throw Error(ErrorKind::dimension_mismatch, "J^0 Hom element: hom has the wrong shape");
  }
  const Matrix lambda = f0_hom_constraints(b, a);
  const Matrix h = hom.with_backend(a.backend());
  const Matrix phi = stack_real_imag(lambda);
  const Matrix point = stack_real_imag(lambda * lattice::vectorize(h));
  return TorusElement(TorusKind::j0hom,
                      "J0Hom(B,A) (B rank " + std::to_string(b.rank()) + ", A rank " + std::to_string(a.rank()) + ")",
                      h, phi, point);
}

TorusElement complex_lattice_element(std::complex<double> z, std::complex<double> w1, std::complex<double> w2,
                                     double tolerance) {
  const Backend fl = Backend::floating();
  Matrix phi(2, 2, fl);
  phi(0, 0) = Scalar::floating(w1.real());
  phi(1, 0) = Scalar::floating(w1.imag());
  phi(0, 1) = Scalar::floating(w2.real());
  phi(1, 1) = Scalar::floating(w2.imag());
  Matrix point(2, 1, fl);
  point(0, 0) = Scalar::floating(z.real());
  point(1, 0) = Scalar::floating(z.imag());
  Matrix rep(1, 1, fl);
  rep(0, 0) = Scalar::floating(z);
  return TorusElement(TorusKind::complex_lattice, "C/(Z w1 + Z w2)", rep, phi, point, tolerance);
}

}  // namespace mhs
