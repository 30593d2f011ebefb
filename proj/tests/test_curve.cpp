#include <doctest.h>

#include <cmath>
#include <numbers>
#include <random>

#include "mhs/curve/torus.hpp"
#include "mhs/error.hpp"

using mhs::curve::Complex;
using mhs::curve::ComplexTorus;
using mhs::curve::DivisorZero;

namespace {

using std::numbers::pi;
const Complex I{0.0, 1.0};
const Complex two_pi_i{0.0, 2.0 * pi};

// sum n^k q^n / (1 - q^n)
Complex divisor_series(Complex tau, int k) {
  const Complex q = std::exp(two_pi_i * tau);
  Complex sum = 0.0, qn = 1.0;
  for (int n = 1; n < 2000; ++n) {
    qn *= q;
    sum += std::pow(static_cast<double>(n), k) * qn / (1.0 - qn);
  }
  return sum;
}

// Weierstrass zeta as the symmetric lattice sum over max(|m|,|n|) <= n_max.
// The summand expands as -(z^2/w^3 + z^3/w^4 + ...); odd powers of w cancel
// by symmetry and the missing z^3, z^5 tails are subtracted using G4, G6 from
// their q-expansions, leaving an error of order |z|^7 / n_max^6.
Complex lattice_sum_zeta(Complex z, Complex w1, Complex w2, int n_max = 60) {
  const Complex tau = w2 / w1;
  const Complex g4 = std::pow(pi, 4) / 45.0 * (1.0 + 240.0 * divisor_series(tau, 3)) / std::pow(w1, 4);
  const Complex g6 = 2.0 * std::pow(pi, 6) / 945.0 * (1.0 - 504.0 * divisor_series(tau, 5)) / std::pow(w1, 6);
  Complex sum = 1.0 / z, s4 = 0.0, s6 = 0.0;
  for (int m = -n_max; m <= n_max; ++m) {
    for (int n = -n_max; n <= n_max; ++n) {
      if (m == 0 && n == 0) continue;
      const Complex w = static_cast<double>(m) * w1 + static_cast<double>(n) * w2;
      sum += 1.0 / (z - w) + 1.0 / w + z / (w * w);
      s4 += 1.0 / std::pow(w, 4);
      s6 += 1.0 / std::pow(w, 6);
    }
  }
  return sum - std::pow(z, 3) * (g4 - s4) - std::pow(z, 5) * (g6 - s6);
}

std::vector<ComplexTorus> sample_tori() {
  return {
      ComplexTorus(1.0, I),
      ComplexTorus(1.0, std::exp(I * (pi / 3.0))),
      ComplexTorus(Complex(0.7, 0.2), Complex(-0.3, 1.1)),
      ComplexTorus(Complex(1.3, -0.4), Complex(4.1, 1.3)),  // far from reduced
      ComplexTorus(Complex(0.0, 2.0), Complex(-1.5, 0.5)),
  };
}

DivisorZero single(Complex p, Complex q) { return DivisorZero{{{p, q}}}; }

DivisorZero two_pairs() {
  return DivisorZero{{{Complex(0.3, 0.2), Complex(0.1, 0.4)}, {Complex(0.45, 0.7), Complex(0.65, 0.5)}}};
}

}  // namespace

TEST_SUITE("curve") {
  TEST_CASE("torus construction and reduction") {
    CHECK_THROWS_AS(ComplexTorus(1.0, 2.0), mhs::Error);
    CHECK_THROWS_AS(ComplexTorus(1.0, -I), mhs::Error);
    for (const auto& t : sample_tori()) {
      const Complex tau = t.reduced2() / t.reduced1();
      CHECK(std::abs(tau.real()) <= 0.5 + 1e-12);
      CHECK(std::abs(tau) >= 1.0 - 1e-12);
      const auto& c = t.change();
      CHECK(c[0][0] * c[1][1] - c[0][1] * c[1][0] == 1);
      for (int k = 0; k < 2; ++k) {
        const Complex back = static_cast<double>(c[k][0]) * t.reduced1() + static_cast<double>(c[k][1]) * t.reduced2();
        CHECK(std::abs(back - t.omega(k)) < 1e-12 * std::abs(t.omega(k)));
      }
      const Complex z(0.37, -2.9);
      const auto x = t.coordinates(t.reduce(z));
      CHECK(x[0] >= 0.0);
      CHECK(x[0] < 1.0);
      CHECK(x[1] >= 0.0);
      CHECK(x[1] < 1.0);
      CHECK(t.distance_to_lattice(z - t.reduce(z)) < 1e-12);
      const Complex lp = 3.0 * t.omega1() - 5.0 * t.omega2();
      const auto [coeffs, point] = t.nearest_lattice_point(lp + 0.01 * t.reduced1());
      CHECK(coeffs == std::array<long, 2>{3, -5});
      CHECK(std::abs(point - lp) < 1e-12);
    }
  }

  TEST_CASE("zeta agrees with the corrected lattice sum") {
    for (const auto& t : sample_tori()) {
      for (const Complex u : {Complex(0.21, 0.13), Complex(-0.35, 0.4), Complex(0.05, -0.02), Complex(0.5, 0.5)}) {
        const Complex z = u.real() * t.reduced1() + u.imag() * t.reduced2();
        const Complex expected = lattice_sum_zeta(z, t.reduced1(), t.reduced2());
        CHECK(std::abs(mhs::curve::weierstrass_zeta(z, t) - expected) < 1e-9 * std::max(1.0, std::abs(expected)));
      }
    }
  }

  TEST_CASE("zeta is odd and has residue 1 at the lattice") {
    std::mt19937_64 rng(3);
    std::uniform_real_distribution<double> u(-2.0, 2.0);
    for (const auto& t : sample_tori()) {
      for (int i = 0; i < 20; ++i) {
        const Complex z(u(rng), u(rng));
        CHECK(std::abs(mhs::curve::weierstrass_zeta(-z, t) + mhs::curve::weierstrass_zeta(z, t)) < 1e-9);
      }
      const Complex eps = 1e-6 * t.omega1();
      CHECK(std::abs(eps * mhs::curve::weierstrass_zeta(eps, t) - 1.0) < 1e-10);
      CHECK_THROWS_AS(mhs::curve::weierstrass_zeta(t.omega1() + t.omega2(), t), mhs::Error);
    }
  }

  TEST_CASE("quasi-periods: translation law, half periods, Legendre") {
    for (const auto& t : sample_tori()) {
      const auto eta = mhs::curve::quasi_periods(t);
      CHECK(mhs::curve::legendre_residual(t, eta) < 1e-10);
      const Complex z(0.123, 0.31);
      CHECK(std::abs(mhs::curve::weierstrass_zeta(z + t.omega1(), t) - mhs::curve::weierstrass_zeta(z, t) - eta.eta1) <
            1e-9);
      CHECK(std::abs(mhs::curve::weierstrass_zeta(z + t.omega2(), t) - mhs::curve::weierstrass_zeta(z, t) - eta.eta2) <
            1e-9);
      // zeta is odd, so eta_k = 2 zeta(w_k / 2)
      const Complex half1 = lattice_sum_zeta(t.omega1() / 2.0, t.reduced1(), t.reduced2());
      CHECK(std::abs(2.0 * half1 - eta.eta1) < 1e-8);
    }
    const ComplexTorus square(1.0, I);
    const auto e = mhs::curve::quasi_periods(square);
    CHECK(std::abs(e.eta1 - pi) < 1e-12);
    CHECK(std::abs(e.eta2 + I * pi) < 1e-12);
    const ComplexTorus hexagonal(1.0, std::exp(I * (pi / 3.0)));
    CHECK(std::abs(mhs::curve::quasi_periods(hexagonal).eta1 - 2.0 * pi / std::sqrt(3.0)) < 1e-12);
  }

  TEST_CASE("direct Abel-Jacobi map") {
    const ComplexTorus t(1.0, I);
    const auto a = mhs::curve::aj_direct(single(Complex(0.3, 0.2), 0.0), t);
    CHECK(std::abs(a.representative()(0, 0).to_complex() - Complex(0.3, 0.2)) < 1e-14);
    CHECK(mhs::curve::aj_direct(single(Complex(0.3, 0.2), Complex(2.3, -0.8)), t).is_zero());
    const DivisorZero d = two_pairs();
    const auto sum = mhs::curve::aj_direct(single(d.pairs[0].first, d.pairs[0].second), t) +
                     mhs::curve::aj_direct(single(d.pairs[1].first, d.pairs[1].second), t);
    CHECK(sum == mhs::curve::aj_direct(d, t));
    CHECK(mhs::curve::aj_direct(DivisorZero{}, t).is_zero());
  }

  TEST_CASE("divisor validation") {
    const ComplexTorus t(1.0, I);
    CHECK(mhs::curve::validate_divisor(two_pairs(), t).ok());
    const DivisorZero clash{{{Complex(0.3, 0.2), 0.0}, {Complex(1.3, 1.2), Complex(0.5, 0.5)}}};
    CHECK_FALSE(mhs::curve::validate_divisor(clash, t).ok());
    CHECK_THROWS_AS(mhs::curve::third_kind_periods(clash, t), mhs::Error);
    const DivisorZero cancelled{{{Complex(0.3, 0.2), Complex(1.3, 0.2)}}};
    CHECK(mhs::curve::normalized(cancelled, t).pairs.empty());
  }

  TEST_CASE("third-kind periods") {
    const ComplexTorus square(1.0, I);
    const auto empty = mhs::curve::third_kind_periods(single(Complex(0.3, 0.2), Complex(0.3, 0.2)), square);
    CHECK(empty.periods[0] == Complex(0.0));
    CHECK(empty.periods[1] == Complex(0.0));

    for (const auto& t : sample_tori()) {
      for (const auto& d : {single(Complex(0.3, 0.2) * t.omega1(), 0.25 * t.omega2()), two_pairs()}) {
        const auto numeric = mhs::curve::third_kind_periods(d, t);
        const auto closed = mhs::curve::closed_form_periods(d, t);
        for (int k = 0; k < 2; ++k) CHECK(mhs::curve::distance_mod_two_pi_i(numeric.periods[k], closed[k]) < 1e-8);

        DivisorZero swapped;
        for (const auto& [p, q] : d.pairs) swapped.pairs.push_back({q, p});
        const auto negated = mhs::curve::third_kind_periods(swapped, t);
        for (int k = 0; k < 2; ++k)
          CHECK(mhs::curve::distance_mod_two_pi_i(negated.periods[k], -numeric.periods[k]) < 1e-8);

        mhs::curve::PeriodOptions other;
        other.seed = 99;
        const auto moved = mhs::curve::third_kind_periods(d, t, other);
        for (int k = 0; k < 2; ++k) {
          CHECK(moved.base_points[k] != numeric.base_points[k]);
          CHECK(mhs::curve::distance_mod_two_pi_i(moved.periods[k], numeric.periods[k]) < 1e-8);
        }
      }
    }
  }

  TEST_CASE("no pole-free cycle within the budget") {
    const ComplexTorus t(1.0, I);
    DivisorZero crowded;
    for (int i = 0; i < 5; ++i) crowded.pairs.push_back({Complex(0.1 * i, 0.2 * i), Complex(0.1 * i + 0.05, 0.2 * i + 0.1)});
    mhs::curve::PeriodOptions opts;
    opts.clearance = 0.2;
    try {
      mhs::curve::third_kind_periods(crowded, t, opts);
      FAIL("expected no_pole_free_cycle");
    } catch (const mhs::Error& e) {
      CHECK(e.kind() == mhs::ErrorKind::no_pole_free_cycle);
    }
  }

  TEST_CASE("eta class") {
    const ComplexTorus t(Complex(0.7, 0.2), Complex(-0.3, 1.1));
    const auto zero = mhs::curve::eta_class(DivisorZero{}, t);
    CHECK(zero.b == Complex(0.0));
    CHECK(zero.element.is_zero());

    const auto d = single(Complex(0.3, 0.2), Complex(0.1, 0.5));
    const auto periods = mhs::curve::third_kind_periods(d, t).periods;
    const auto eta = mhs::curve::eta_class_from_periods(periods, t);
    for (int k = 0; k < 2; ++k) {
      const Complex integral = eta.a * t.omega(k) + eta.b * std::conj(t.omega(k));
      CHECK(std::abs(integral - periods[k] / two_pi_i) < 1e-12);
    }
    const auto shifted = mhs::curve::eta_class_from_periods({periods[0] + 3.0 * two_pi_i, periods[1] - two_pi_i}, t);
    CHECK(std::abs(shifted.b - eta.b) > 1e-3);
    CHECK(shifted.element == eta.element);
  }

  TEST_CASE("curve identity") {
    const ComplexTorus square(1.0, I);
    const auto empty = mhs::curve::verify_curve_identity(DivisorZero{}, square);
    CHECK(empty.residual == 0.0);

    const auto r = mhs::curve::verify_curve_identity(single(Complex(0.3, 0.2), 0.0), square);
    CHECK(r.residual < 1e-8);
    CHECK(std::abs(r.lhs - Complex(0.3, 0.2)) < 1e-15);
    CHECK_FALSE(r.eta.element.is_zero());

    // p1 - q1 + p2 - q2 = 0: the class splits
    const auto split = mhs::curve::verify_curve_identity(two_pairs(), square);
    CHECK(split.residual < 1e-8);
    CHECK(mhs::curve::aj_direct(two_pairs(), square).is_zero());
    CHECK(split.eta.element.is_zero());

    for (const auto& t : sample_tori()) {
      const auto report = mhs::curve::verify_curve_identity(two_pairs(), t);
      CHECK(report.residual < 1e-8);
      const auto one = mhs::curve::verify_curve_identity(single(0.4 * t.omega1() + 0.3 * t.omega2(), 0.1 * t.omega2()), t);
      CHECK(one.residual < 1e-8);
      CHECK(one.eta.element.is_zero() == mhs::curve::aj_direct(single(0.4 * t.omega1() + 0.3 * t.omega2(), 0.1 * t.omega2()), t).is_zero());
    }
  }
}
