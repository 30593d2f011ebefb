#pragma once

#include <cstddef>

#include "mhs/lattice/matrix.hpp"

namespace mhs::lattice {

/// Linear subspace of K^n held by a canonical basis: the columns are in
/// column reduced echelon form with leading-one pivots.
class Subspace {
 public:
  Subspace() = default;

  /// Column span of `spanning` (any number of columns, possibly dependent).
  static Subspace span(const Matrix& spanning, double scale = 0.0);
  static Subspace zero(std::size_t ambient, Backend backend = Backend::exact());
  static Subspace full(std::size_t ambient, Backend backend = Backend::exact());

  std::size_t ambient() const { return ambient_; }
  std::size_t dim() const { return basis_.cols(); }
  const Matrix& basis() const { return basis_; }
  const Backend& backend() const { return basis_.backend(); }
  bool is_zero() const { return dim() == 0; }
  bool is_full() const { return dim() == ambient_; }

  bool contains(const Matrix& vectors) const;
  bool contains(const Subspace& other) const;

  /// Exact backend: canonical bases are entry-wise equal. Float backend:
  /// equal dimension and the sum has the same dimension.
  friend bool operator==(const Subspace& a, const Subspace& b);

 private:
  std::size_t ambient_ = 0;
  Matrix basis_;
};

Subspace sum(const Subspace& u, const Subspace& v);
Subspace intersect(const Subspace& u, const Subspace& v);
/// Entry-wise conjugate in the fixed integral basis.
Subspace conjugate_subspace(const Subspace& v);
/// {phi : phi(v) = 0 for all v in V}, with phi in dual-basis coordinates.
Subspace annihilator(const Subspace& v);
/// Image of V under the linear map m.
Subspace image(const Matrix& m, const Subspace& v);
Subspace kernel(const Matrix& m);
/// {x : m x in V}.
Subspace preimage(const Matrix& m, const Subspace& v);

}  // namespace mhs::lattice
