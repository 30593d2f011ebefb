#pragma once

#include <array>
#include <complex>
#include <cstdint>
#include <utility>
#include <vector>

#include "mhs/core/mixed_hodge.hpp"
#include "mhs/ext/torus.hpp"

namespace mhs::curve {

using Complex = std::complex<double>;

/// zeta(z + w_k) = zeta(z) + eta_k.
struct QuasiPeriods {
  Complex eta1;
  Complex eta2;
};

/// C / (Z w1 + Z w2) with Im(w2 / w1) > 0. A Gauss-reduced basis of the same
/// lattice (reduced tau in the standard fundamental domain) is kept alongside
/// for series evaluation.
class ComplexTorus {
 public:
  ComplexTorus(Complex omega1, Complex omega2);

  Complex omega1() const { return omega_[0]; }
  Complex omega2() const { return omega_[1]; }
  Complex omega(int k) const { return omega_[k]; }
  Complex tau() const { return omega_[1] / omega_[0]; }

  Complex reduced1() const { return reduced_[0]; }
  Complex reduced2() const { return reduced_[1]; }
  /// omega_k = change()[k][0] * reduced1 + change()[k][1] * reduced2.
  const std::array<std::array<long, 2>, 2>& change() const { return change_; }

  /// Real x with z = x1 w1 + x2 w2.
  std::array<double, 2> coordinates(Complex z) const;
  /// Representative of z with both coordinates in [0, 1).
  Complex reduce(Complex z) const;
  /// Lattice point nearest to z (rounding plus neighbouring cells).
  std::pair<std::array<long, 2>, Complex> nearest_lattice_point(Complex z) const;
  double distance_to_lattice(Complex z) const;
  /// Integral of dz ^ dzbar over the torus: w1 conj(w2) - conj(w1) w2.
  Complex area_form() const;

  /// Quasi-periods of the reduced basis.
  const QuasiPeriods& reduced_quasi_periods() const { return reduced_eta_; }

 private:
  std::array<Complex, 2> omega_;
  std::array<Complex, 2> reduced_;
  std::array<std::array<long, 2>, 2> change_;
  QuasiPeriods reduced_eta_;
};

/// eta(w) = pi^2 / (3 w) * E2(w' / w) for each generator w with partner w'
/// (Im(w' / w) > 0); the two values are computed independently of each other.
QuasiPeriods quasi_periods(const ComplexTorus& t);
/// |eta1 w2 - eta2 w1 - 2 pi i|.
double legendre_residual(const ComplexTorus& t, const QuasiPeriods& q);

/// Weierstrass zeta. Throws invalid_input within `pole_radius` (relative to
/// the shortest period) of a lattice point.
Complex weierstrass_zeta(Complex z, const ComplexTorus& t, double pole_radius = 1e-12);

struct DivisorZero {
  std::vector<std::pair<Complex, Complex>> pairs;  // sum of p_i - q_i
};

/// Drops pairs whose two points agree modulo the lattice.
DivisorZero normalized(const DivisorZero& d, const ComplexTorus& t);
/// All remaining points pairwise distinct modulo the lattice.
ValidationReport validate_divisor(const DivisorZero& d, const ComplexTorus& t);

/// sum (p_i - q_i) in C / Lambda, reduced to the fundamental cell.
TorusElement aj_direct(const DivisorZero& d, const ComplexTorus& t);

struct PeriodOptions {
  double clearance = 0.05;  // lattice units between a cycle and every pole
  std::uint64_t seed = 0;
  int max_attempts = 1000;
  double rel_tol = 1e-10;
};

struct CyclePeriods {
  std::array<Complex, 2> periods;      // integral of xi along z0 -> z0 + w_k
  std::array<Complex, 2> base_points;  // the z0 used for each cycle
  std::array<double, 2> error_estimates;
};

/// Periods of xi = sum (zeta(z - p_i) - zeta(z - q_i)) dz along straight
/// translated cycles, by adaptive Gauss-Kronrod quadrature.
CyclePeriods third_kind_periods(const DivisorZero& d, const ComplexTorus& t, const PeriodOptions& opts = {});
/// eta_k * sum (q_i - p_i): the same periods modulo 2 pi i Z.
std::array<Complex, 2> closed_form_periods(const DivisorZero& d, const ComplexTorus& t);
/// Distance from a - b to 2 pi i Z.
double distance_mod_two_pi_i(Complex a, Complex b);

/// eta = a dz + b dzbar with the periods of xi / (2 pi i); b is defined
/// modulo the b-coefficients of integral classes.
struct EtaClass {
  Complex a;
  Complex b;
  TorusElement element;
};
EtaClass eta_class_from_periods(const std::array<Complex, 2>& periods, const ComplexTorus& t);
EtaClass eta_class(const DivisorZero& d, const ComplexTorus& t, const PeriodOptions& opts = {});

struct CurveIdentityReport {
  Complex lhs;  // sum (p_i - q_i)
  Complex rhs;  // b * (w1 conj(w2) - conj(w1) w2)
  std::array<long, 2> lattice_coefficients;
  Complex lattice_point;
  double residual;  // |lhs - rhs - lattice_point|
  CyclePeriods periods;
  EtaClass eta;
};
CurveIdentityReport verify_curve_identity(const DivisorZero& d, const ComplexTorus& t, const PeriodOptions& opts = {});

}  // namespace mhs::curve
