#pragma once

#include <string>
#include <vector>

#include "mhs/core/mixed_hodge.hpp"

namespace testing {

using mhs::Matrix;
using mhs::Scalar;
using mhs::Subspace;

inline Scalar q(const std::string& text) { return Scalar::parse_exact(text); }

/// Column vector from exact literals.
inline Matrix col(std::initializer_list<const char*> entries) {
  std::vector<Scalar> v;
  for (const char* e : entries) v.push_back(q(e));
  return Matrix::column(v, mhs::Backend::exact());
}

inline Matrix cols(std::initializer_list<Matrix> columns) {
  Matrix out(columns.begin()->rows(), 0);
  for (const auto& c : columns) out = Matrix::hcat(out, c);
  return out;
}

inline Subspace span(std::initializer_list<Matrix> columns) { return Subspace::span(cols(columns)); }

/// Pure weight-1 rank-2 structure with F^1 = span{(1, tau)}.
inline mhs::MixedHodgeStructure elliptic(const char* tau = "i") {
  return mhs::MixedHodgeStructure(2, mhs::Backend::exact(), {{1, Subspace::full(2)}},
                                  {{1, span({col({"1", tau})})}, {0, Subspace::full(2)}});
}

}  // namespace testing
