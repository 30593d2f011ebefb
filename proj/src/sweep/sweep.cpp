#include "mhs/sweep/sweep.hpp"

#include <algorithm>
#include <exception>

#include "mhs/ext/extension.hpp"
#include "mhs/random/generators.hpp"

namespace mhs::sweep {

namespace {

template <class Trial, class Make>
std::vector<Trial> run(std::size_t n, Execution exec, Make make) {
  std::vector<Trial> out(n);
  if (exec == Execution::serial) {
    for (std::size_t i = 0; i < n; ++i) out[i] = make(i);
  } else {
#pragma omp parallel for schedule(dynamic)
    for (long i = 0; i < static_cast<long>(n); ++i) out[i] = make(static_cast<std::size_t>(i));
  }
  return out;
}

}  // namespace

IdentityTrial identity_trial(std::uint64_t seed, Backend backend) {
  IdentityTrial t;
  t.seed = seed;
  try {
    auto spec = random::sweep_spec(seed);
    spec.backend = backend;
    spec.scramble_partner = seed % 2 == 1;
    const SequencePairing p = random::random_paired_instance(spec);
    const auto report = validate_pairing(p);
    t.pairing_valid = report.ok();
    if (!t.pairing_valid) {
      t.error = report.failures.front();
      return t;
    }
    random::Rng rng(seed ^ 0x9e3779b97f4a7c15ULL);
    const Matrix base = integral_section(p.partner);
    const std::size_t a = p.partner.A.rank(), b = p.partner.B.rank();
    const Matrix lhs_section = base + p.partner.f * random::random_integer_matrix(rng, a, b, 5);
    const Matrix rhs_section = base + p.partner.f * random::random_integer_matrix(rng, a, b, 5);
    const Matrix omegas = Matrix::identity(p.S.B.rank());
    const Matrix alphas = Matrix::identity(b);
    for (std::size_t i = 0; i < omegas.cols(); ++i) {
      for (std::size_t j = 0; j < alphas.cols(); ++j) {
        ++t.checks;
        if (verify_main_identity(p, omegas.col(i), alphas.col(j), lhs_section, rhs_section).holds()) {
          ++t.zero_residuals;
        }
      }
    }
  } catch (const std::exception& e) {
    t.error = e.what();
  }
  return t;
}

std::vector<IdentityTrial> identity_sweep(std::uint64_t first_seed, std::size_t trials, Execution exec,
                                          Backend backend) {
  return run<IdentityTrial>(trials, exec, [&](std::size_t i) { return identity_trial(first_seed + i, backend); });
}

double CurveTrial::max_residual() const {
  double m = 0.0;
  for (const auto& c : cases) m = std::max(m, c.residual);
  return m;
}

double CurveTrial::max_period_gap() const {
  double m = 0.0;
  for (const auto& c : cases) m = std::max(m, c.period_gap);
  return m;
}

bool CurveTrial::passed(const CurveTolerances& tol) const {
  return error.empty() && !cases.empty() && legendre < tol.legendre && max_residual() < tol.residual &&
         max_period_gap() < tol.period;
}

CurveTrial curve_trial(std::uint64_t seed, std::size_t divisors) {
  CurveTrial t;
  t.seed = seed;
  try {
    random::Rng rng(seed);
    const curve::ComplexTorus torus = random::random_torus(rng);
    t.omega1 = torus.omega1();
    t.omega2 = torus.omega2();
    t.legendre = curve::legendre_residual(torus, curve::quasi_periods(torus));
    std::uniform_int_distribution<std::size_t> pair_count(1, 3);
    for (std::size_t i = 0; i < divisors; ++i) {
      CurveCase c;
      c.divisor = random::random_divisor(rng, torus, pair_count(rng));
      curve::PeriodOptions opts;
      opts.seed = seed * 1000 + i;
      const auto report = curve::verify_curve_identity(c.divisor, torus, opts);
      const auto closed = curve::closed_form_periods(c.divisor, torus);
      c.residual = report.residual;
      for (int k = 0; k < 2; ++k) {
        c.period_gap = std::max(c.period_gap, curve::distance_mod_two_pi_i(report.periods.periods[k], closed[k]));
      }
      t.cases.push_back(std::move(c));
    }
  } catch (const std::exception& e) {
    t.error = e.what();
  }
  return t;
}

std::vector<CurveTrial> curve_sweep(std::uint64_t first_seed, std::size_t tori, std::size_t divisors_per_torus,
                                    Execution exec) {
  return run<CurveTrial>(tori, exec, [&](std::size_t i) { return curve_trial(first_seed + i, divisors_per_torus); });
}

}  // namespace mhs::sweep
