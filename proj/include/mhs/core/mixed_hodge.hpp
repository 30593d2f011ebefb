#pragma once

#include <cstddef>
#include <map>
#include <string>
#include <utility>
#include <vector>

#include "mhs/lattice/matrix.hpp"
#include "mhs/lattice/subspace.hpp"

namespace mhs {

using lattice::Backend;
using lattice::Matrix;
using lattice::Scalar;
using lattice::Subspace;

/// W_k for all k in [k, next stored k).
struct WeightStep {
  int k = 0;
  Subspace space;
};

/// F^p for all p in (next stored p, p].
struct HodgeStep {
  int p = 0;
  Subspace space;
};

using Bidegree = std::pair<int, int>;

struct ValidationReport {
  std::vector<std::string> failures;
  bool ok() const { return failures.empty(); }
  void fail(std::string what) { failures.push_back(std::move(what)); }
  void merge(const ValidationReport& other, const std::string& prefix);
};

/// Integral lattice Z^n with an increasing weight filtration (saturated,
/// defined over Q) and a decreasing Hodge filtration on C^n. Both
/// filtrations are stored sparsely as the indices where they jump.
class MixedHodgeStructure {
 public:
  MixedHodgeStructure() = default;
  /// Weight steps ascending in k, Hodge steps descending in p. Subspaces are
  /// canonicalized; weight spaces on the exact backend are kept as their Q-span,
  /// which determines the saturated sublattice.
  MixedHodgeStructure(std::size_t rank, Backend backend, std::vector<WeightStep> weights,
                      std::vector<HodgeStep> hodge);

  std::size_t rank() const { return rank_; }
  const Backend& backend() const { return backend_; }
  const std::vector<WeightStep>& weight_steps() const { return weights_; }
  const std::vector<HodgeStep>& hodge_steps() const { return hodge_; }

  /// Complexified W_k.
  Subspace W(int k) const;
  Subspace F(int p) const;
  /// Saturated integral basis of W_k (exact backend).
  Matrix weight_lattice(int k) const;

  /// Indices bounding the stored steps; empty filtrations give (0, 0).
  int first_weight_index() const;
  int last_weight_index() const;
  int lowest_hodge_index() const;
  int highest_hodge_index() const;

  /// Weights k with Gr^W_k nonzero, ascending.
  std::vector<int> weights() const;
  int lowest_weight() const;
  int highest_weight() const;
  bool is_pure() const { return weights().size() == 1; }

  /// Same filtrations with redundant steps dropped.
  MixedHodgeStructure normalized() const;
  MixedHodgeStructure to_floating(double rank_tol = 1e-9) const;

  /// Equal lattices rank and backend, equal W_k and F^p for every index.
  friend bool operator==(const MixedHodgeStructure& a, const MixedHodgeStructure& b);

 private:
  std::size_t rank_ = 0;
  Backend backend_ = Backend::exact();
  std::vector<WeightStep> weights_;
  std::vector<HodgeStep> hodge_;
};

/// Deligne's bigrading I^{p,q}; only nonzero pieces are stored.
using DeligneSplitting = std::map<Bidegree, Subspace>;
using HodgeNumbers = std::map<Bidegree, std::size_t>;

ValidationReport validate(const MixedHodgeStructure& h);
void require_valid(const MixedHodgeStructure& h, const char* op);

DeligneSplitting deligne_splitting(const MixedHodgeStructure& h);
/// Checks the three direct-sum identities and conj(I^{p,q}) = I^{q,p} modulo
/// the sum of I^{k,l} over k < q, l < p.
ValidationReport check_splitting(const MixedHodgeStructure& h, const DeligneSplitting& split);

struct RSplitResult {
  bool r_split = true;
  Bidegree witness{0, 0};  // first (p,q) with conj(I^{p,q}) != I^{q,p}
};
RSplitResult r_split_test(const MixedHodgeStructure& h);
bool is_r_split(const MixedHodgeStructure& h);

MixedHodgeStructure dual(const MixedHodgeStructure& h);
/// Twist by Z(m): W_k(H(m)) = W_{k+2m}(H), F^p(H(m)) = F^{p+m}(H).
MixedHodgeStructure tate_twist(const MixedHodgeStructure& h, int m);
HodgeNumbers hodge_numbers(const MixedHodgeStructure& h);

/// Z(m) on a rank-one lattice.
MixedHodgeStructure tate_structure(int m, Backend backend = Backend::exact());
/// Basis change x -> U x by an invertible integer matrix.
MixedHodgeStructure transform(const MixedHodgeStructure& h, const Matrix& u);
/// Direct sum with the first summand on the leading coordinates.
MixedHodgeStructure direct_sum(const MixedHodgeStructure& a, const MixedHodgeStructure& b);

}  // namespace mhs
