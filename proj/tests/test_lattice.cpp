#include <doctest.h>

#include <numeric>
#include <random>

#include "mhs/error.hpp"
#include "mhs/lattice/smith.hpp"
#include "support.hpp"

using namespace testing;
using mhs::Backend;
using mhs::Error;
using mhs::ErrorKind;
using mhs::lattice::BackendKind;

namespace {

Matrix ints(const std::vector<std::vector<long>>& rows) { return Matrix::from_ints(rows); }

// Laplace expansion on machine integers; independent of the library's elimination.
long det_laplace(const std::vector<std::vector<long>>& m) {
  const std::size_t n = m.size();
  if (n == 0) return 1;
  if (n == 1) return m[0][0];
  long total = 0;
  for (std::size_t c = 0; c < n; ++c) {
    std::vector<std::vector<long>> minor;
    for (std::size_t r = 1; r < n; ++r) {
      std::vector<long> row;
      for (std::size_t k = 0; k < n; ++k)
        if (k != c) row.push_back(m[r][k]);
      minor.push_back(row);
    }
    total += (c % 2 == 0 ? 1 : -1) * m[0][c] * det_laplace(minor);
  }
  return total;
}

void subsets(std::size_t n, std::size_t k, std::size_t start, std::vector<std::size_t>& cur,
             std::vector<std::vector<std::size_t>>& out) {
  if (cur.size() == k) {
    out.push_back(cur);
    return;
  }
  for (std::size_t i = start; i < n; ++i) {
    cur.push_back(i);
    subsets(n, k, i + 1, cur, out);
    cur.pop_back();
  }
}

// gcd of all k x k minors: the k-th determinantal divisor.
long determinantal_divisor(const std::vector<std::vector<long>>& m, std::size_t k) {
  std::vector<std::vector<std::size_t>> rs, cs;
  std::vector<std::size_t> cur;
  subsets(m.size(), k, 0, cur, rs);
  subsets(m[0].size(), k, 0, cur, cs);
  long g = 0;
  for (const auto& r : rs) {
    for (const auto& c : cs) {
      std::vector<std::vector<long>> sub;
      for (auto i : r) {
        std::vector<long> row;
        for (auto j : c) row.push_back(m[i][j]);
        sub.push_back(row);
      }
      g = std::gcd(g, std::abs(det_laplace(sub)));
    }
  }
  return g;
}

long to_long(const Scalar& s) { return s.re_q().get_num().get_si(); }

Matrix random_exact(std::mt19937_64& rng, std::size_t rows, std::size_t cols, bool complex) {
  std::uniform_int_distribution<long> d(-3, 3);
  Matrix m(rows, cols);
  for (std::size_t i = 0; i < rows; ++i)
    for (std::size_t j = 0; j < cols; ++j) m(i, j) = Scalar::exact(d(rng), complex ? d(rng) : 0);
  return m;
}

}  // namespace

TEST_SUITE("lattice") {
  TEST_CASE("exact scalars serialize in lowest terms with an explicit sign") {
    CHECK(q("2/4").to_string() == "1/2");
    CHECK(q("3").to_string() == "3/1");
    CHECK(q("1/2-3/4*i").to_string() == "1/2-3/4*i");
    CHECK(q("-i").to_string() == "0/1-1/1*i");
    CHECK(q("i") * q("i") == q("-1"));
    CHECK((q("1+i") * q("1-i")) == q("2"));
    CHECK((q("1") / q("1+i")) == q("1/2-1/2*i"));
    for (const char* s : {"7/3", "-2/5+1/7*i", "0", "-1/9*i"}) CHECK(Scalar::parse_exact(q(s).to_string()) == q(s));
  }

  TEST_CASE("conjugation is an involution fixing exactly the reals") {
    for (const char* s : {"1/3", "2+5*i", "-i", "0"}) {
      CHECK(q(s).conj().conj() == q(s));
      CHECK((q(s).conj() == q(s)) == q(s).is_real());
    }
  }

  TEST_CASE("mixing backends and dividing by zero are errors") {
    const Scalar fl = Scalar::floating({1.0, 0.0});
    CHECK_THROWS_AS(q("1") + fl, Error);
    CHECK_THROWS_AS(q("1") / q("0"), Error);
    CHECK_THROWS_AS(Scalar::parse_exact("1/0"), Error);
    CHECK_THROWS_AS(Scalar::parse_exact("abc"), Error);
  }

  TEST_CASE("intersection of coordinate and conjugate subspaces") {
    const Subspace u = span({col({"1", "0", "0"}), col({"0", "1", "0"})});
    const Subspace v = span({col({"0", "1", "0"}), col({"0", "0", "1"})});
    CHECK(mhs::lattice::intersect(u, v) == span({col({"0", "1", "0"})}));
    CHECK(mhs::lattice::intersect(u, u) == u);
    const Subspace a = span({col({"1", "i"})});
    const Subspace b = span({col({"1", "-i"})});
    CHECK(mhs::lattice::intersect(a, b).is_zero());
    CHECK(mhs::lattice::conjugate_subspace(a) == b);
    CHECK_THROWS_AS(mhs::lattice::intersect(u, a), Error);
  }

  TEST_CASE("dim(U+V) + dim(U meet V) = dim U + dim V on random subspaces") {
    std::mt19937_64 rng(11);
    for (int trial = 0; trial < 60; ++trial) {
      const std::size_t n = 2 + trial % 5;
      std::uniform_int_distribution<std::size_t> k(0, n);
      const Subspace u = Subspace::span(random_exact(rng, n, k(rng), trial % 2 == 0));
      const Subspace v = Subspace::span(random_exact(rng, n, k(rng), trial % 3 == 0));
      const auto s = mhs::lattice::sum(u, v);
      const auto m = mhs::lattice::intersect(u, v);
      CHECK(s.dim() + m.dim() == u.dim() + v.dim());
      CHECK(u.contains(m));
      CHECK(v.contains(m));
      CHECK(s.contains(u));
      CHECK(mhs::lattice::conjugate_subspace(mhs::lattice::conjugate_subspace(u)) == u);
    }
  }

  TEST_CASE("canonical bases make equal spans syntactically equal") {
    const Subspace a = span({col({"1", "2", "3"}), col({"0", "1", "i"})});
    const Subspace b = span({col({"2", "5", "6+i"}), col({"1", "3", "3+i"}), col({"1", "2", "3"})});
    CHECK(a == b);
    CHECK(a.basis() == b.basis());
  }

  TEST_CASE("float rank follows the relative singular value threshold") {
    Matrix m = Matrix::from_ints({{1, 1}, {1, 1}}).to_floating();
    m(1, 1) = Scalar::floating({1.0 + 1e-12, 0.0});
    CHECK(mhs::lattice::rank(m) == 1);
    CHECK(mhs::lattice::rank(m.with_backend(Backend::floating(1e-14))) == 2);
  }

  TEST_CASE("float image of a subspace inside the kernel is zero") {
    // entries of g * v are rounding noise, not a direction
    const Matrix g = Matrix::from_ints({{3, -1, 7}}).to_floating();
    Matrix v(3, 1, Backend::floating());
    v(0, 0) = Scalar::floating({0.1, 0.0});
    v(1, 0) = Scalar::floating({1.0, 0.0});
    v(2, 0) = Scalar::floating({0.1, 0.0});
    CHECK(mhs::lattice::image(g, Subspace::span(v)).dim() == 0);
    CHECK(mhs::lattice::image(g, Subspace::full(3, Backend::floating())).dim() == 1);
  }

  TEST_CASE("kernel, inverse and determinant agree") {
    const Matrix m = ints({{1, 2, 3}, {2, 4, 6}, {1, 0, 1}});
    const Matrix k = mhs::lattice::kernel_basis(m);
    CHECK(k.cols() == 1);
    CHECK((m * k).is_zero());
    const Matrix a = ints({{2, 1}, {7, 4}});
    CHECK(mhs::lattice::determinant(a) == q("1"));
    CHECK(a * mhs::lattice::inverse(a) == Matrix::identity(2));
    CHECK_THROWS_AS(mhs::lattice::inverse(m), Error);
  }

  TEST_CASE("smith normal form on fixed inputs") {
    const auto id = mhs::lattice::smith_normal_form(Matrix::identity(3));
    CHECK(id.D == Matrix::identity(3));
    const auto d = mhs::lattice::smith_normal_form(ints({{2, 0}, {0, 3}}));
    CHECK(d.D == ints({{1, 0}, {0, 6}}));
    const auto z = mhs::lattice::smith_normal_form(ints({{0}}));
    CHECK(z.D == ints({{0}}));
    CHECK(z.rank() == 0);
    CHECK_THROWS_AS(mhs::lattice::smith_normal_form(Matrix::column({q("1/2")}, Backend::exact())), Error);
  }

  TEST_CASE("smith normal form against determinantal divisors") {
    std::mt19937_64 rng(5);
    std::uniform_int_distribution<long> entry(-6, 6);
    std::uniform_int_distribution<std::size_t> dim(1, 4);
    for (int trial = 0; trial < 80; ++trial) {
      const std::size_t r = dim(rng), c = dim(rng);
      std::vector<std::vector<long>> raw(r, std::vector<long>(c));
      for (auto& row : raw)
        for (auto& x : row) x = entry(rng) * (trial % 4 == 0 ? 2 : 1);
      const Matrix m = ints(raw);
      const auto snf = mhs::lattice::smith_normal_form(m);
      CHECK(snf.U * m * snf.V == snf.D);
      CHECK(mhs::lattice::is_unimodular(snf.U));
      CHECK(mhs::lattice::is_unimodular(snf.V));
      CHECK(mhs::lattice::inverse(snf.U) * snf.D * mhs::lattice::inverse(snf.V) == m);
      long product = 1;
      for (std::size_t k = 0; k < std::min(r, c); ++k) {
        const long dk = k < snf.rank() ? to_long(snf.D(k, k)) : 0;
        if (k > 0 && dk != 0) CHECK(dk % to_long(snf.D(k - 1, k - 1)) == 0);
        product *= dk;
        CHECK(product == determinantal_divisor(raw, k + 1));
      }
    }
  }

  TEST_CASE("integral sections and saturation") {
    const Matrix g = ints({{1, 0, 2}, {0, 1, 3}});
    const Matrix s = mhs::lattice::integer_right_inverse(g);
    CHECK(s.is_integral());
    CHECK(g * s == Matrix::identity(2));
    CHECK_THROWS_AS(mhs::lattice::integer_right_inverse(ints({{1, 0}, {0, 0}})), Error);
    try {
      mhs::lattice::integer_right_inverse(ints({{2, 0}, {0, 1}}));
      FAIL("expected not_surjective");
    } catch (const Error& e) {
      CHECK(e.kind() == ErrorKind::not_surjective);
    }
    const Matrix f = ints({{1}, {2}, {3}});
    CHECK(mhs::lattice::integer_left_inverse(f) * f == Matrix::identity(1));
    CHECK_THROWS_AS(mhs::lattice::integer_left_inverse(ints({{2}, {4}})), Error);

    const Matrix sat = mhs::lattice::saturated_basis(span({col({"2", "4"})}));
    CHECK(Subspace::span(sat) == span({col({"1", "2"})}));
    CHECK(mhs::lattice::content(sat) == 1);
  }

  TEST_CASE("integer solving") {
    const Matrix a = ints({{2, 0}, {0, 3}});
    CHECK(mhs::lattice::solve_integer(a, ints({{4}, {9}})).has_value());
    CHECK_FALSE(mhs::lattice::solve_integer(a, ints({{1}, {3}})).has_value());
    const Matrix half = Matrix::column({q("1/2")}, Backend::exact());
    CHECK(mhs::lattice::solve_integer(half, Matrix::column({q("3/2")}, Backend::exact())).value() == ints({{3}}));
  }

  TEST_CASE("vectorization is column-major") {
    const Matrix m = ints({{1, 2}, {3, 4}});
    CHECK(mhs::lattice::vectorize(m) == ints({{1}, {3}, {2}, {4}}));
    CHECK(mhs::lattice::unvectorize(mhs::lattice::vectorize(m), 2, 2) == m);
  }
}
