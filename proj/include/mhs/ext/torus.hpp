#pragma once

#include <complex>
#include <string>

#include "mhs/core/mixed_hodge.hpp"

namespace mhs {

enum class TorusKind {
  real_torus,       // A_R / A_Z
  j0hom,            // Hom_C(B,A) / (F^0 Hom + Hom_Z)
  complex_lattice,  // C / (Z w1 + Z w2)
  periods,          // R / (period lattice)
};

std::string to_string(TorusKind kind);

/// A point of a quotient V / Γ, presented in real coordinates: `point` is a
/// vector t in R^m and Γ is the Z-span of the columns of `lattice` (m x r,
/// injective). Exact backend decides equality by integer solving; float
/// backend rounds in the lattice basis and compares within `tolerance`.
class TorusElement {
 public:
  TorusElement(TorusKind kind, std::string ambient, Matrix representative, Matrix lattice, Matrix point,
               double tolerance = 1e-7);

  TorusKind kind() const { return kind_; }
  const std::string& ambient() const { return ambient_; }
  /// The value the element was built from (vector, hom matrix, complex number).
  const Matrix& representative() const { return representative_; }
  const Matrix& lattice() const { return lattice_; }
  const Matrix& point() const { return point_; }
  double tolerance() const { return tolerance_; }
  bool is_exact() const { return point_.is_exact(); }

  /// Least-squares lattice coordinates reduced into [0,1) and the component
  /// of the point orthogonal to the lattice span. Unique per class.
  struct Canonical {
    Matrix coordinates;
    Matrix transverse;
  };
  Canonical canonical() const;

  /// True when the lattice spans the real coordinate space.
  bool compact() const { return lattice_.cols() == point_.rows(); }

  bool is_zero() const;
  /// Distance from the point to the lattice point found by rounding the
  /// lattice coordinates (and checking the neighbouring cells).
  double distance_to_lattice() const;

  TorusElement operator+(const TorusElement& o) const;
  TorusElement operator-(const TorusElement& o) const;
  friend bool operator==(const TorusElement& a, const TorusElement& b);

 private:
  void require_same_ambient(const TorusElement& o) const;

  TorusKind kind_;
  std::string ambient_;
  Matrix representative_;
  Matrix lattice_;
  Matrix point_;
  double tolerance_;
};

/// Element of A_R / A_Z for a real column vector.
TorusElement real_torus_element(const Matrix& value);

/// Linear conditions (rows, canonical) whose common kernel in vec(Hom_C(B,A))
/// is F^0 Hom(B,A). Column-major vectorization of a x b matrices.
Matrix f0_hom_constraints(const MixedHodgeStructure& b, const MixedHodgeStructure& a);
bool in_f0_hom(const MixedHodgeStructure& b, const MixedHodgeStructure& a, const Matrix& hom);
Subspace f0_hom(const MixedHodgeStructure& b, const MixedHodgeStructure& a);

/// Class of hom (a x b) in J^0 Hom(B, A).
TorusElement j0hom_element(const MixedHodgeStructure& b, const MixedHodgeStructure& a, const Matrix& hom);

/// Class of z in C / (Z w1 + Z w2).
TorusElement complex_lattice_element(std::complex<double> z, std::complex<double> w1, std::complex<double> w2,
                                     double tolerance = 1e-7);

}  // namespace mhs
