#include "mhs/lattice/subspace.hpp"

#include "mhs/error.hpp"

namespace mhs::lattice {

namespace {

void require_compatible(const Subspace& u, const Subspace& v, const char* op) {
  if (u.ambient() != v.ambient()) {
    throw Error(ErrorKind::dimension_mismatch, std::string(op) + ": ambient dimensions differ (" +
                                                   std::to_string(u.ambient()) + " vs " +
                                                   std::to_string(v.ambient()) + ")");
  }
  if (!(u.backend() == v.backend())) {
    throw Error(ErrorKind::backend_mismatch, std::string(op) + ": backend mismatch");
  }
}

}  // namespace

Subspace Subspace::span(const Matrix& spanning, double scale) {
  Subspace s;
  s.ambient_ = spanning.rows();
  if (spanning.cols() == 0) {
    s.basis_ = Matrix(spanning.rows(), 0, spanning.backend());
    return s;
  }
  const RowEchelon ech = row_reduce(spanning.transpose(), scale);
  s.basis_ = ech.reduced.row_range(0, ech.rank()).transpose();
  return s;
}

Subspace Subspace::zero(std::size_t ambient, Backend backend) {
  return span(Matrix(ambient, 0, backend));
}

Subspace Subspace::full(std::size_t ambient, Backend backend) {
  return span(Matrix::identity(ambient, backend));
}

bool Subspace::contains(const Matrix& vectors) const {
  if (vectors.rows() != ambient_) throw Error(ErrorKind::dimension_mismatch, "contains: ambient mismatch");
  if (vectors.cols() == 0) return true;
  return rank(Matrix::hcat(basis_, vectors.with_backend(basis_.backend()))) == dim();
}

bool Subspace::contains(const Subspace& other) const {
  require_compatible(*this, other, "contains");
  return contains(other.basis_);
}

bool operator==(const Subspace& a, const Subspace& b) {
  if (a.ambient_ != b.ambient_ || !(a.backend() == b.backend()) || a.dim() != b.dim()) return false;
  if (a.basis_.is_exact()) return a.basis_ == b.basis_;
  return rank(Matrix::hcat(a.basis_, b.basis_)) == a.dim();
}

Subspace sum(const Subspace& u, const Subspace& v) {
  require_compatible(u, v, "sum");
  return Subspace::span(Matrix::hcat(u.basis(), v.basis()));
}

Subspace annihilator(const Subspace& v) {
  if (v.dim() == 0) return Subspace::full(v.ambient(), v.backend());
  return Subspace::span(kernel_basis(v.basis().transpose()));
}

Subspace intersect(const Subspace& u, const Subspace& v) {
  require_compatible(u, v, "intersect");
  if (u.is_zero() || v.is_zero()) return Subspace::zero(u.ambient(), u.backend());
  if (u.is_full()) return v;
  if (v.is_full()) return u;
  // U ∩ V = U·ker[U | -V]_top
  const Matrix stacked = Matrix::hcat(u.basis(), -v.basis());
  const Matrix k = kernel_basis(stacked);
  return Subspace::span(u.basis() * k.row_range(0, u.dim()));
}

Subspace conjugate_subspace(const Subspace& v) { return Subspace::span(v.basis().conj()); }

Subspace image(const Matrix& m, const Subspace& v) {
  if (m.cols() != v.ambient()) throw Error(ErrorKind::dimension_mismatch, "image: map/source mismatch");
  const Matrix basis = v.basis().with_backend(m.backend());
  if (m.is_exact()) return Subspace::span(m * basis);
  return Subspace::span(m * basis, largest_singular_value(m) * largest_singular_value(basis));
}

Subspace kernel(const Matrix& m) { return Subspace::span(kernel_basis(m)); }

Subspace preimage(const Matrix& m, const Subspace& v) {
  if (m.rows() != v.ambient()) throw Error(ErrorKind::dimension_mismatch, "preimage: map/target mismatch");
  const Subspace ann = annihilator(v);
  if (ann.dim() == 0) return Subspace::full(m.cols(), m.backend());
  return kernel(ann.basis().transpose() * m);
}

}  // namespace mhs::lattice
