#pragma once

#include <optional>
#include <vector>

#include <gmpxx.h>

#include "mhs/lattice/matrix.hpp"
#include "mhs/lattice/subspace.hpp"

namespace mhs::lattice {

/// U * M * V = D with U, V unimodular and D diagonal with d_i | d_{i+1}.
struct SmithDecomposition {
  Matrix U;
  Matrix D;
  Matrix V;
  std::vector<mpz_class> invariant_factors;  // nonzero diagonal entries, all positive

  std::size_t rank() const { return invariant_factors.size(); }
};

/// Throws ErrorKind::not_integral for non-integer input.
SmithDecomposition smith_normal_form(const Matrix& m);

/// Integer basis (columns) of span(V) ∩ Z^n for a subspace defined over Q.
Matrix saturated_basis(const Subspace& v);

/// Integer solution x of A x = b for rational A, b (real entries), if any.
std::optional<Matrix> solve_integer(const Matrix& a, const Matrix& b);

/// Integer S with G S = I. Throws ErrorKind::not_surjective when G is not onto Z^rows.
Matrix integer_right_inverse(const Matrix& g);
/// Integer R with R F = I. Throws unless F is injective with saturated image.
Matrix integer_left_inverse(const Matrix& f);

bool is_unimodular(const Matrix& m);
/// gcd of the entries of an integer matrix (0 for the zero matrix).
mpz_class content(const Matrix& m);

}  // namespace mhs::lattice
