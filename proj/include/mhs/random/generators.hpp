#pragma once

#include <cstdint>
#include <random>

#include "mhs/core/mixed_hodge.hpp"
#include "mhs/curve/torus.hpp"
#include "mhs/ext/extension.hpp"

namespace mhs::random {

using Rng = std::mt19937_64;

struct GeneratorSpec {
  std::uint64_t seed = 0;
  HodgeNumbers hodge_a{{{0, 0}, 1}};
  HodgeNumbers hodge_b{{{1, 0}, 1}, {{0, 1}, 1}};
  int height = 10;
  Backend backend = Backend::exact();
  /// Random unimodular basis change on E before dualizing.
  bool scramble = true;
  /// Present the partner in a second random basis (P becomes the inverse change).
  bool scramble_partner = false;
};

/// Conjugate symmetry, purity of each side, consecutive weights, height >= 1.
ValidationReport validate_spec(const GeneratorSpec& spec);
/// Weight of a pure Hodge number table; throws on mixed weights or empty tables.
int weight_of(const HodgeNumbers& h);

/// Numerator in [-height, height], denominator in [1, height].
mpq_class random_rational(Rng& rng, int height);
Scalar random_gaussian(Rng& rng, int height);
Matrix random_integer_matrix(Rng& rng, std::size_t rows, std::size_t cols, long bound);
/// Product of random elementary operations; determinant +-1.
Matrix random_unimodular(Rng& rng, std::size_t n);

MixedHodgeStructure random_pure_hs(int weight, const HodgeNumbers& h, const GeneratorSpec& spec);
MixedHodgeStructure random_pure_hs(int weight, const HodgeNumbers& h, int height, Rng& rng);

/// E = A + B with F^p E = F^p A + {(phi b, b) : b in F^p B} and W_{w-1} E = A.
ExtensionSequence build_extension_from_hom(const MixedHodgeStructure& a, const MixedHodgeStructure& b,
                                           const Matrix& phi);

/// a x b matrix whose entries are, at random, real, imaginary, integral or general.
Matrix random_hom(Rng& rng, std::size_t a, std::size_t b, int height);
/// Element of F^0 Hom(B, A) + Hom_Z(B, A); its class in J^0 Hom is zero.
Matrix random_trivial_hom(Rng& rng, const MixedHodgeStructure& b, const MixedHodgeStructure& a, int height);

SequencePairing random_paired_instance(const GeneratorSpec& spec);

/// A mixed Hodge structure together with the bigrading it was built from.
struct SplitMhs {
  MixedHodgeStructure mhs;
  DeligneSplitting splitting;
};
/// Random MHS of rank <= max_rank with up to three weights: an R-split
/// bigrading is tilted by random lower-order terms, so the resulting Deligne
/// splitting is known in advance.
SplitMhs random_mhs(std::uint64_t seed, std::size_t max_rank = 8, int height = 10);

/// Weights {0, 2} on Z^2 with F^1 = span{e2 + c e1}; R-split iff c is real.
MixedHodgeStructure weight_zero_two_family(const Scalar& c);

/// Deterministic catalogue of two-consecutive-weight shapes for sweeps.
GeneratorSpec sweep_spec(std::uint64_t seed);

/// Torus with |w1| in [0.5, 2], reduced tau in a box of the fundamental
/// domain, presented in a randomly sheared (non-reduced) basis.
curve::ComplexTorus random_torus(Rng& rng);
/// `pairs` point pairs, all pairwise at least `separation` lattice units apart.
curve::DivisorZero random_divisor(Rng& rng, const curve::ComplexTorus& t, std::size_t pairs,
                                  double separation = 0.08);

}  // namespace mhs::random
