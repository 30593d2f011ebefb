#include <doctest.h>

#include "mhs/error.hpp"
#include "mhs/ext/extension.hpp"
#include "mhs/lattice/smith.hpp"
#include "mhs/random/generators.hpp"
#include "support.hpp"

using namespace testing;
using mhs::ExtensionSequence;
using mhs::SequencePairing;

namespace {

Matrix ints(const std::vector<std::vector<long>>& rows) { return Matrix::from_ints(rows); }

ExtensionSequence worked(const char* phi1 = "1/2", const char* phi2 = "0") {
  Matrix phi(1, 2);
  phi(0, 0) = q(phi1);
  phi(0, 1) = q(phi2);
  return mhs::random::build_extension_from_hom(mhs::tate_structure(0), elliptic(), phi);
}

SequencePairing literal_dual(const ExtensionSequence& s) {
  return SequencePairing{s, mhs::dual_sequence(s), Matrix::identity(s.E.rank())};
}

Matrix unit(std::size_t n, std::size_t i) {
  Matrix v(n, 1);
  v(i, 0) = q("1");
  return v;
}

}  // namespace

TEST_SUITE("extension") {
  TEST_CASE("split sequence") {
    const auto s = worked("0", "0");
    CHECK(mhs::validate_sequence(s).ok());
    CHECK(mhs::integral_section(s) == ints({{0, 0}, {1, 0}, {0, 1}}));
    CHECK(mhs::hodge_section(s) == ints({{0, 0}, {1, 0}, {0, 1}}));
    CHECK(mhs::deligne_real_section(s) == ints({{0, 0}, {1, 0}, {0, 1}}));
    CHECK(mhs::carlson_class(s).is_zero());
    CHECK(mhs::topological_aj(s, ints({{3}, {-2}})).is_zero());
    const auto d = mhs::dual_rsplit_decomposition(s);
    CHECK(d.image_of_g_dual == span({col({"0", "1", "0"}), col({"0", "0", "1"})}));
    CHECK(d.kernel_of_section_dual == span({col({"1", "0", "0"})}));
    const auto check = mhs::verify_main_identity(literal_dual(s), unit(2, 0), unit(1, 0));
    CHECK(check.lhs.is_zero());
    CHECK(check.rhs.is_zero());
  }

  TEST_CASE("worked rank-3 instance with phi = (1/2, 0)") {
    const auto s = worked();
    REQUIRE(mhs::validate_sequence(s).ok());
    const Matrix sr = mhs::deligne_real_section(s);
    CHECK(sr.col(0) == col({"1/2", "1", "0"}));
    CHECK(sr.col(1) == col({"0", "0", "1"}));
    CHECK(mhs::topological_aj(s, ints({{1}, {0}})).point() == col({"1/2"}));
    CHECK(mhs::topological_aj(s, ints({{0}, {1}})).is_zero());
    CHECK_FALSE(mhs::topological_aj(s, ints({{1}, {0}})).is_zero());
    CHECK(mhs::topological_aj(s, ints({{2}, {0}})).is_zero());

    Matrix phi(1, 2);
    phi(0, 0) = q("1/2");
    CHECK(mhs::carlson_class(s) == mhs::j0hom_element(s.B, s.A, phi));
    CHECK_FALSE(mhs::carlson_class(s).is_zero());

    const auto d = mhs::dual_rsplit_decomposition(s);
    CHECK(d.kernel_of_section_dual == span({col({"1", "-1/2", "0"})}));

    const auto pairing = literal_dual(s);
    CHECK(mhs::validate_pairing(pairing).ok());
    for (std::size_t i = 0; i < 2; ++i) {
      const auto check = mhs::verify_main_identity(pairing, unit(2, i), unit(1, 0));
      CHECK(check.residual.point().is_zero());
      CHECK(check.lhs == check.rhs);
    }
    CHECK(mhs::verify_main_identity(pairing, unit(2, 0), unit(1, 0)).lhs == q("-1/2"));
  }

  TEST_CASE("the dual of the worked instance") {
    const auto d = mhs::dual_sequence(worked());
    CHECK(mhs::validate_sequence(d).ok());
    CHECK(d.A.weights() == std::vector<int>{-1});
    CHECK(d.B.weights() == std::vector<int>{0});
    const auto dd = mhs::dual_sequence(d);
    const auto s = worked();
    CHECK(dd.A == s.A);
    CHECK(dd.E == s.E);
    CHECK(dd.B == s.B);
    CHECK(dd.f == -s.f);
    CHECK(dd.g == -s.g);
  }

  TEST_CASE("validation catches non-exact sequences") {
    auto s = worked("0", "0");
    s.g = ints({{0, 2, 0}, {0, 0, 1}});
    const auto r = mhs::validate_sequence(s);
    CHECK_FALSE(r.ok());
    CHECK(r.failures.front().find("g not surjective") != std::string::npos);
    CHECK_THROWS_AS(mhs::integral_section(s), mhs::Error);

    auto zero_row = worked("0", "0");
    zero_row.g = ints({{0, 1, 0}, {0, 0, 0}});
    CHECK_FALSE(mhs::validate_sequence(zero_row).ok());
    CHECK_THROWS_AS(mhs::integral_section(zero_row), mhs::Error);

    auto unordered = worked("0", "0");
    std::swap(unordered.A, unordered.B);
    CHECK_FALSE(mhs::validate_sequence(unordered).ok());
  }

  TEST_CASE("sections on a non-trivial g") {
    auto s = worked("1/3", "1/5+i");
    const Matrix u = ints({{1, 0, 0}, {2, 1, 0}, {3, 0, 1}});
    s = mhs::transform_middle(s, u);
    REQUIRE(mhs::validate_sequence(s).ok());
    const Matrix sz = mhs::integral_section(s);
    CHECK(s.g * sz == Matrix::identity(2));
    const Matrix sf = mhs::hodge_section(s);
    CHECK(s.g * sf == Matrix::identity(2));
    for (int p = 0; p <= 1; ++p) CHECK(s.E.F(p).contains(mhs::lattice::image(sf, s.B.F(p))));
    const Matrix sr = mhs::deligne_real_section(s);
    CHECK(sr.is_real());
    CHECK(s.g * sr == Matrix::identity(2));
    const Matrix diff = mhs::integral_retraction_of_f(s) * (sr - sf);
    CHECK(mhs::in_f0_hom(s.B, s.A, diff));
  }

  TEST_CASE("integral phi gives the zero class; integral section choice does not matter") {
    const auto s = worked("3", "-2");
    CHECK(mhs::carlson_class(s).is_zero());
    const auto t = worked("1/7+2/3*i", "5/2");
    const Matrix sz = mhs::integral_section(t) + t.f * ints({{4, -9}});
    CHECK(mhs::carlson_class(t) == mhs::carlson_class(t, sz));
    CHECK(mhs::topological_aj(t, ints({{1}, {1}})) == mhs::topological_aj(t, ints({{1}, {1}}), sz));
    CHECK(mhs::topological_aj(t, ints({{1}, {2}})) ==
          mhs::topological_aj(t, ints({{1}, {0}})) + mhs::topological_aj(t, ints({{0}, {2}})));
  }

  TEST_CASE("random paired instances validate and satisfy the identity") {
    for (std::uint64_t seed = 0; seed < 18; ++seed) {
      auto spec = mhs::random::sweep_spec(seed);
      spec.scramble_partner = seed % 2 == 1;
      const SequencePairing p = mhs::random::random_paired_instance(spec);
      const auto report = mhs::validate_pairing(p);
      CHECK_MESSAGE(report.ok(), (report.ok() ? "" : report.failures.front()));
      mhs::random::Rng rng(seed);
      const Matrix h = mhs::random::random_integer_matrix(rng, p.partner.A.rank(), p.partner.B.rank(), 3);
      const Matrix other = mhs::integral_section(p.partner) + p.partner.f * h;
      for (std::size_t i = 0; i < p.S.B.rank(); ++i) {
        for (std::size_t j = 0; j < p.partner.B.rank(); ++j) {
          const auto exact = mhs::verify_main_identity(p, unit(p.S.B.rank(), i), unit(p.partner.B.rank(), j));
          CHECK(exact.residual.point().is_zero());
          CHECK(mhs::verify_main_identity(p, unit(p.S.B.rank(), i), unit(p.partner.B.rank(), j), std::nullopt, other)
                    .holds());
        }
      }
      CHECK_NOTHROW(mhs::dual_rsplit_decomposition(p.S));
    }
  }

  TEST_CASE("pairing checks reject incompatible matrices") {
    const auto s = worked();
    auto mixing = literal_dual(s);
    mixing.P = ints({{1, 1, 0}, {0, 1, 0}, {0, 0, 1}});
    CHECK_FALSE(mhs::validate_pairing(mixing).ok());
    auto scaled = literal_dual(s);
    scaled.P = ints({{2, 0, 0}, {0, 1, 0}, {0, 0, 1}});
    CHECK_FALSE(mhs::validate_pairing(scaled).ok());
    CHECK_THROWS_AS(mhs::verify_main_identity(scaled, unit(2, 0), unit(1, 0)), mhs::Error);
  }

  TEST_CASE("non-R-split middle term is refused by the real section") {
    // weights {0,2} is not consecutive; E has no R-splitting when Im c != 0
    const auto h = mhs::random::weight_zero_two_family(q("i"));
    Matrix f(2, 1), g(1, 2);
    f(0, 0) = q("1");
    g(0, 1) = q("1");
    const mhs::MixedHodgeStructure b(1, mhs::Backend::exact(), {{2, Subspace::full(1)}},
                                     {{1, Subspace::full(1)}});
    const ExtensionSequence s{mhs::tate_structure(0), h, b, f, g};
    CHECK(mhs::validate_sequence(s).ok());
    try {
      mhs::deligne_real_section(s);
      FAIL("expected not_r_split");
    } catch (const mhs::Error& e) {
      CHECK(e.kind() == mhs::ErrorKind::not_r_split);
    }
    CHECK_FALSE(mhs::carlson_class(s).is_zero());
  }

  TEST_CASE("float backend reproduces the exact sections") {
    const auto s = worked("1/3", "1/5+i");
    const ExtensionSequence fs{s.A.to_floating(), s.E.to_floating(), s.B.to_floating(), s.f, s.g};
    CHECK(mhs::validate_sequence(fs).ok());
    CHECK(mhs::deligne_real_section(fs).approx_equal(mhs::deligne_real_section(s).to_floating(), 1e-12));
    const auto exact = mhs::carlson_class(s);
    const auto approx = mhs::carlson_class(fs);
    CHECK(approx.point().approx_equal(exact.point().to_floating(), 1e-12));
  }
}
