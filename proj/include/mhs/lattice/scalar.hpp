#pragma once

#include <complex>
#include <string>
#include <string_view>
#include <variant>

#include <gmpxx.h>

namespace mhs::lattice {

enum class BackendKind { exact, floating };

/// Scalar backend plus the rank threshold used by the floating backend.
///
/// Two backends compare equal when their kinds agree; the tolerance travels
/// with the values and the left operand's tolerance wins.
struct Backend {
  BackendKind kind = BackendKind::exact;
  double rank_tol = 1e-9;

  static Backend exact() { return {BackendKind::exact, 1e-9}; }
  static Backend floating(double rank_tol = 1e-9) { return {BackendKind::floating, rank_tol}; }
  bool is_exact() const { return kind == BackendKind::exact; }
  friend bool operator==(const Backend& a, const Backend& b) { return a.kind == b.kind; }
};

std::string to_string(BackendKind kind);

/// Gaussian rational re + im*i.
struct Gaussian {
  mpq_class re;
  mpq_class im;
};

/// A complex number, either an exact Gaussian rational or a double complex.
class Scalar {
 public:
  Scalar() : value_(Gaussian{}) {}

  static Scalar exact(const mpq_class& re, const mpq_class& im = 0);
  static Scalar floating(std::complex<double> z) { return Scalar(z); }
  static Scalar integer(long n, BackendKind kind);
  static Scalar zero(BackendKind kind) { return integer(0, kind); }
  static Scalar one(BackendKind kind) { return integer(1, kind); }

  BackendKind backend() const {
    return std::holds_alternative<Gaussian>(value_) ? BackendKind::exact : BackendKind::floating;
  }
  bool is_exact() const { return backend() == BackendKind::exact; }

  // Exact accessors; throw on the floating backend.
  const mpq_class& re_q() const;
  const mpq_class& im_q() const;

  std::complex<double> to_complex() const;
  double real_double() const { return to_complex().real(); }

  Scalar conj() const;
  Scalar real_part() const;
  Scalar imag_part() const;
  /// Modulus (approximate for exact values).
  double abs() const;

  bool is_zero() const;
  bool is_real() const;
  bool is_integer() const;  // exact backend only; floating is never integral

  Scalar operator-() const;
  Scalar& operator+=(const Scalar& o);
  Scalar& operator-=(const Scalar& o);
  Scalar& operator*=(const Scalar& o);
  Scalar& operator/=(const Scalar& o);

  friend Scalar operator+(Scalar a, const Scalar& b) { return a += b; }
  friend Scalar operator-(Scalar a, const Scalar& b) { return a -= b; }
  friend Scalar operator*(Scalar a, const Scalar& b) { return a *= b; }
  friend Scalar operator/(Scalar a, const Scalar& b) { return a /= b; }

  /// Exact equality (floating values compare bit-for-bit).
  friend bool operator==(const Scalar& a, const Scalar& b);

  /// Exact: "a/b" or "a/b+c/d*i" in lowest terms. Floating: "(re,im)".
  std::string to_string() const;
  /// Parses the exact form. Accepts integers, "a/b", "a/b+c/d*i", "c/d*i" and "i".
  static Scalar parse_exact(std::string_view text);

 private:
  explicit Scalar(Gaussian g) : value_(std::move(g)) {}
  explicit Scalar(std::complex<double> z) : value_(z) {}

  std::variant<Gaussian, std::complex<double>> value_;
};

}  // namespace mhs::lattice
