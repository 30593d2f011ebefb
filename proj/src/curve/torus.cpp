#include "mhs/curve/torus.hpp"

#include <algorithm>
#include <boost/math/quadrature/gauss_kronrod.hpp>
#include <cmath>
#include <limits>
#include <numbers>
#include <random>
#include <sstream>

#include "mhs/error.hpp"

namespace mhs::curve {

namespace {

using std::numbers::pi;
constexpr Complex two_pi_i{0.0, 2.0 * pi};

std::array<double, 2> coordinates_in(Complex z, Complex w1, Complex w2) {
  const double det = w1.real() * w2.imag() - w2.real() * w1.imag();
  return {(z.real() * w2.imag() - w2.real() * z.imag()) / det, (w1.real() * z.imag() - z.real() * w1.imag()) / det};
}

// 1 - 24 sum n q^n / (1 - q^n), q = exp(2 pi i tau).
Complex eisenstein_e2(Complex tau) {
  const Complex q = std::exp(two_pi_i * tau);
  Complex sum = 0.0;
  Complex qn = 1.0;
  for (int n = 1; n < 100000; ++n) {
    qn *= q;
    const Complex term = static_cast<double>(n) * qn / (1.0 - qn);
    sum += term;
    if (std::abs(term) < 1e-18 * std::max(1.0, std::abs(sum))) break;
  }
  return 1.0 - 24.0 * sum;
}

Complex quasi_period_of(Complex w, Complex partner) { return pi * pi / (3.0 * w) * eisenstein_e2(partner / w); }

// zeta on the reduced basis for z0 in the centred cell.
Complex zeta_near_origin(Complex z0, Complex w1, Complex tau, Complex eta1) {
  const Complex u = pi * z0 / w1;
  const Complex q = std::exp(Complex(0.0, pi) * tau);
  const Complex q2 = q * q;
  Complex series = std::cos(u) / std::sin(u);
  Complex q2n = 1.0;
  for (int n = 1; n < 10000; ++n) {
    q2n *= q2;
    const Complex term = 4.0 * q2n / (1.0 - q2n) * std::sin(2.0 * n * u);
    series += term;
    if (std::abs(term) < 1e-18 * std::max(1.0, std::abs(series))) break;
  }
  return eta1 * z0 / w1 + pi / w1 * series;
}

std::vector<Complex> poles(const DivisorZero& d) {
  std::vector<Complex> out;
  for (const auto& [p, q] : d.pairs) {
    out.push_back(p);
    out.push_back(q);
  }
  return out;
}

DivisorZero checked(const DivisorZero& d, const ComplexTorus& t) {
  DivisorZero n = normalized(d, t);
  const auto report = validate_divisor(n, t);
  if (!report.ok()) throw Error(ErrorKind::invalid_input, "invalid divisor: " + report.failures.front());
  return n;
}

double frac(double x) { return x - std::floor(x); }

}  // namespace

ComplexTorus::ComplexTorus(Complex omega1, Complex omega2) : omega_{omega1, omega2} {
  if (!std::isfinite(omega1.real()) || !std::isfinite(omega1.imag()) || !std::isfinite(omega2.real()) ||
      !std::isfinite(omega2.imag()) || std::abs(omega1) == 0.0) {
    throw Error(ErrorKind::invalid_input, "torus generators must be finite and nonzero");
  }
  if ((omega2 / omega1).imag() <= 1e-12) {
    throw Error(ErrorKind::invalid_input, "torus generators need Im(omega2 / omega1) > 0");
  }
  // rows of m express the running basis in terms of (omega1, omega2)
  std::array<std::array<long, 2>, 2> m{{{1, 0}, {0, 1}}};
  Complex a = omega1, b = omega2;
  for (int iter = 0; iter < 10000; ++iter) {
    const long shift = std::lround((b / a).real());
    b -= static_cast<double>(shift) * a;
    m[1][0] -= shift * m[0][0];
    m[1][1] -= shift * m[0][1];
    if (std::abs(b) < std::abs(a) * (1.0 - 1e-14)) {
      std::swap(a, b);
      b = -b;
      std::swap(m[0], m[1]);
      m[1] = {-m[1][0], -m[1][1]};
      continue;
    }
    break;
  }
  reduced_ = {a, b};
  change_ = {{{m[1][1], -m[0][1]}, {-m[1][0], m[0][0]}}};
  reduced_eta_ = {quasi_period_of(a, b), quasi_period_of(b, -a)};
}

std::array<double, 2> ComplexTorus::coordinates(Complex z) const { return coordinates_in(z, omega_[0], omega_[1]); }

Complex ComplexTorus::reduce(Complex z) const {
  const auto x = coordinates(z);
  Complex r = z - std::floor(x[0]) * omega_[0] - std::floor(x[1]) * omega_[1];
  // rounding can leave a coordinate at exactly 1
  const auto y = coordinates(r);
  if (y[0] >= 1.0) r -= omega_[0];
  if (y[1] >= 1.0) r -= omega_[1];
  return r;
}

std::pair<std::array<long, 2>, Complex> ComplexTorus::nearest_lattice_point(Complex z) const {
  // search in the reduced basis, where rounding plus neighbours is exact
  const auto x = coordinates_in(z, reduced_[0], reduced_[1]);
  const long m0 = std::lround(x[0]), n0 = std::lround(x[1]);
  long bm = m0, bn = n0;
  double best = std::numeric_limits<double>::infinity();
  for (long m = m0 - 1; m <= m0 + 1; ++m) {
    for (long n = n0 - 1; n <= n0 + 1; ++n) {
      const double dist = std::abs(z - static_cast<double>(m) * reduced_[0] - static_cast<double>(n) * reduced_[1]);
      if (dist < best) {
        best = dist;
        bm = m;
        bn = n;
      }
    }
  }
  const std::array<long, 2> coeffs{bm * change_[1][1] - bn * change_[1][0], -bm * change_[0][1] + bn * change_[0][0]};
  return {coeffs, static_cast<double>(coeffs[0]) * omega_[0] + static_cast<double>(coeffs[1]) * omega_[1]};
}

double ComplexTorus::distance_to_lattice(Complex z) const { return std::abs(z - nearest_lattice_point(z).second); }

Complex ComplexTorus::area_form() const {
  return omega_[0] * std::conj(omega_[1]) - std::conj(omega_[0]) * omega_[1];
}

QuasiPeriods quasi_periods(const ComplexTorus& t) {
  const auto& r = t.reduced_quasi_periods();
  const auto& c = t.change();
  return {static_cast<double>(c[0][0]) * r.eta1 + static_cast<double>(c[0][1]) * r.eta2,
          static_cast<double>(c[1][0]) * r.eta1 + static_cast<double>(c[1][1]) * r.eta2};
}

double legendre_residual(const ComplexTorus& t, const QuasiPeriods& q) {
  return std::abs(q.eta1 * t.omega2() - q.eta2 * t.omega1() - two_pi_i);
}

Complex weierstrass_zeta(Complex z, const ComplexTorus& t, double pole_radius) {
  const Complex w1 = t.reduced1(), w2 = t.reduced2();
  const auto x = coordinates_in(z, w1, w2);
  const double m = std::round(x[0]), n = std::round(x[1]);
  const Complex z0 = z - m * w1 - n * w2;
  if (std::abs(z0) < pole_radius * std::abs(w1)) {
    std::ostringstream msg;
    msg << "weierstrass_zeta: z = " << z << " is within the pole radius of a lattice point";
    throw Error(ErrorKind::invalid_input, msg.str());
  }
  const auto& eta = t.reduced_quasi_periods();
  return zeta_near_origin(z0, w1, w2 / w1, eta.eta1) + m * eta.eta1 + n * eta.eta2;
}

DivisorZero normalized(const DivisorZero& d, const ComplexTorus& t) {
  const double tol = 1e-9 * std::abs(t.reduced1());
  DivisorZero out;
  for (const auto& pair : d.pairs) {
    if (t.distance_to_lattice(pair.first - pair.second) > tol) out.pairs.push_back(pair);
  }
  return out;
}

ValidationReport validate_divisor(const DivisorZero& d, const ComplexTorus& t) {
  ValidationReport report;
  const auto pts = poles(d);
  for (std::size_t i = 0; i < pts.size(); ++i) {
    if (!std::isfinite(pts[i].real()) || !std::isfinite(pts[i].imag())) {
      report.fail("point " + std::to_string(i) + " is not finite");
      return report;
    }
  }
  const double tol = 1e-9 * std::abs(t.reduced1());
  for (std::size_t i = 0; i < pts.size(); ++i) {
    for (std::size_t j = i + 1; j < pts.size(); ++j) {
      if (t.distance_to_lattice(pts[i] - pts[j]) <= tol) {
        report.fail("points " + std::to_string(i) + " and " + std::to_string(j) + " coincide modulo the lattice");
      }
    }
  }
  return report;
}

TorusElement aj_direct(const DivisorZero& d, const ComplexTorus& t) {
  Complex sum = 0.0;
  for (const auto& [p, q] : d.pairs) sum += p - q;
  return complex_lattice_element(t.reduce(sum), t.omega1(), t.omega2());
}

CyclePeriods third_kind_periods(const DivisorZero& d, const ComplexTorus& t, const PeriodOptions& opts) {
  const DivisorZero div = checked(d, t);
  CyclePeriods out{{0.0, 0.0}, {0.0, 0.0}, {0.0, 0.0}};
  if (div.pairs.empty()) return out;

  std::vector<std::array<double, 2>> pole_coords;
  for (const Complex c : poles(div)) pole_coords.push_back(t.coordinates(c));

  std::mt19937_64 rng(opts.seed);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  for (int k = 0; k < 2; ++k) {
    const int across = 1 - k;
    bool found = false;
    double along = 0.0, offset = 0.0;
    for (int attempt = 0; attempt < opts.max_attempts && !found; ++attempt) {
      along = unit(rng);
      offset = unit(rng);
      found = std::all_of(pole_coords.begin(), pole_coords.end(), [&](const std::array<double, 2>& c) {
        const double gap = frac(offset - c[across]);
        return std::min(gap, 1.0 - gap) >= opts.clearance;
      });
    }
    if (!found) {
      throw Error(ErrorKind::no_pole_free_cycle, "no cycle along omega" + std::to_string(k + 1) + " with clearance " +
                                                     std::to_string(opts.clearance) + " after " +
                                                     std::to_string(opts.max_attempts) + " attempts");
    }
    const Complex w = t.omega(k);
    const Complex z0 = along * w + offset * t.omega(across);
    auto integrand = [&](double s) {
      const Complex z = z0 + s * w;
      Complex v = 0.0;
      for (const auto& [p, q] : div.pairs) v += weierstrass_zeta(z - p, t) - weierstrass_zeta(z - q, t);
      return v * w;
    };
    double error = 0.0;
    out.periods[k] =
        boost::math::quadrature::gauss_kronrod<double, 15>::integrate(integrand, 0.0, 1.0, 20, opts.rel_tol, &error);
    out.base_points[k] = z0;
    out.error_estimates[k] = error;
  }
  return out;
}

std::array<Complex, 2> closed_form_periods(const DivisorZero& d, const ComplexTorus& t) {
  const QuasiPeriods eta = quasi_periods(t);
  Complex sum = 0.0;
  for (const auto& [p, q] : normalized(d, t).pairs) sum += q - p;
  return {eta.eta1 * sum, eta.eta2 * sum};
}

double distance_mod_two_pi_i(Complex a, Complex b) {
  const Complex diff = a - b;
  const double m = std::round(diff.imag() / (2.0 * pi));
  return std::abs(diff - m * two_pi_i);
}

EtaClass eta_class_from_periods(const std::array<Complex, 2>& periods, const ComplexTorus& t) {
  const Complex w1 = t.omega1(), w2 = t.omega2();
  const Complex det = t.area_form();
  if (std::abs(det) < std::numeric_limits<double>::epsilon() * std::norm(w1)) {
    throw Error(ErrorKind::singular, "eta_class: period system is singular");
  }
  const Complex p1 = periods[0] / two_pi_i, p2 = periods[1] / two_pi_i;
  const Complex a = (p1 * std::conj(w2) - std::conj(w1) * p2) / det;
  const Complex b = (w1 * p2 - w2 * p1) / det;
  // b-coefficients of the integral classes with periods (1, 0) and (0, 1)
  const Complex beta1 = -w2 / det, beta2 = w1 / det;
  return {a, b, complex_lattice_element(b, beta1, beta2)};
}

EtaClass eta_class(const DivisorZero& d, const ComplexTorus& t, const PeriodOptions& opts) {
  return eta_class_from_periods(third_kind_periods(d, t, opts).periods, t);
}

CurveIdentityReport verify_curve_identity(const DivisorZero& d, const ComplexTorus& t, const PeriodOptions& opts) {
  const CyclePeriods periods = third_kind_periods(d, t, opts);
  EtaClass eta = eta_class_from_periods(periods.periods, t);
  Complex lhs = 0.0;
  for (const auto& [p, q] : d.pairs) lhs += p - q;
  const Complex rhs = eta.b * t.area_form();
  const auto [coeffs, point] = t.nearest_lattice_point(lhs - rhs);
  return {lhs, rhs, coeffs, point, std::abs(lhs - rhs - point), periods, std::move(eta)};
}

}  // namespace mhs::curve
