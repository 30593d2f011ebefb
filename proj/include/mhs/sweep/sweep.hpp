#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "mhs/curve/torus.hpp"
#include "mhs/lattice/scalar.hpp"

namespace mhs::sweep {

/// Serial is the reference; parallel distributes trials with OpenMP. Both
/// return results ordered by trial index.
enum class Execution { serial, parallel };

/// One random paired instance, checked for every pair of basis vectors with
/// independently drawn integral sections on the two sides.
struct IdentityTrial {
  std::uint64_t seed = 0;
  bool pairing_valid = false;
  std::size_t checks = 0;
  std::size_t zero_residuals = 0;
  std::string error;
  bool passed() const { return error.empty() && pairing_valid && checks > 0 && zero_residuals == checks; }
};

IdentityTrial identity_trial(std::uint64_t seed, Backend backend = Backend::exact());
/// Trials use seeds first_seed, first_seed + 1, ...
std::vector<IdentityTrial> identity_sweep(std::uint64_t first_seed, std::size_t trials, Execution exec,
                                          Backend backend = Backend::exact());

struct CurveTolerances {
  double residual = 1e-7;
  double period = 1e-8;
  double legendre = 1e-10;
};

struct CurveCase {
  curve::DivisorZero divisor;
  double residual = 0.0;
  double period_gap = 0.0;  // quadrature vs closed form, modulo 2 pi i
};

/// One random torus with several random divisors on it.
struct CurveTrial {
  std::uint64_t seed = 0;
  curve::Complex omega1;
  curve::Complex omega2;
  double legendre = 0.0;
  std::vector<CurveCase> cases;
  std::string error;
  double max_residual() const;
  double max_period_gap() const;
  bool passed(const CurveTolerances& tol = {}) const;
};

CurveTrial curve_trial(std::uint64_t seed, std::size_t divisors);
std::vector<CurveTrial> curve_sweep(std::uint64_t first_seed, std::size_t tori, std::size_t divisors_per_torus,
                                    Execution exec);

}  // namespace mhs::sweep
