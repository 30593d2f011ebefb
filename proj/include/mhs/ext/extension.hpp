#pragma once

#include <optional>

#include "mhs/core/mixed_hodge.hpp"
#include "mhs/ext/torus.hpp"

namespace mhs {

/// 0 -> A --f--> E --g--> B -> 0 with f (e x a) and g (b x e) integer matrices.
struct ExtensionSequence {
  MixedHodgeStructure A;
  MixedHodgeStructure E;
  MixedHodgeStructure B;
  Matrix f;
  Matrix g;
};

/// Exactness over Z, morphism property of f and g, B > A, and R-splitness of E
/// when A and B are pure of consecutive weights.
ValidationReport validate_sequence(const ExtensionSequence& s);
void require_valid(const ExtensionSequence& s, const char* op);

/// Integer s with g s = id_B.
Matrix integral_section(const ExtensionSequence& s);
/// Left inverse of f over Z, used to read kernel elements of g back in A.
Matrix integral_retraction_of_f(const ExtensionSequence& s);
/// r = f^+ (id_E - s_Z g): E -> A, the retraction attached to s_Z.
Matrix retraction(const ExtensionSequence& s, const Matrix& s_z);

/// Section with s(F^p B) in F^p E for every p.
Matrix hodge_section(const ExtensionSequence& s);
/// Real section through the Deligne bigrading of E: the sum of I^{p,q}(E) over
/// the weights of B maps isomorphically onto B. Requires A, E, B R-split.
Matrix deligne_real_section(const ExtensionSequence& s);

/// Class of r o s_F in J^0 Hom(B, A); s_z defaults to integral_section(s).
TorusElement carlson_class(const ExtensionSequence& s, const std::optional<Matrix>& s_z = std::nullopt);

/// f^+ (s_R - s_Z) as an a x b real matrix.
Matrix topological_aj_map(const ExtensionSequence& s, const std::optional<Matrix>& s_z = std::nullopt);
/// Class of f^+ (s_R - s_Z)(b) in A_R / A_Z for an integral vector b.
TorusElement topological_aj(const ExtensionSequence& s, const Matrix& b,
                            const std::optional<Matrix>& s_z = std::nullopt);

/// 0 -> B^v --g^T--> E^v --(-f^T)--> A^v -> 0.
ExtensionSequence dual_sequence(const ExtensionSequence& s);
/// Same sequence after the basis change x -> U x on E.
ExtensionSequence transform_middle(const ExtensionSequence& s, const Matrix& u);

/// E^v = im(g^T) + ker(s_R^T); the summands are the bigraded pieces of E^v of
/// total degree -w and -w+1 (w the weight of B), and -f^T carries the Hodge
/// filtration of the kernel summand onto that of A^v.
struct DualDecomposition {
  Subspace image_of_g_dual;
  Subspace kernel_of_section_dual;
};
DualDecomposition dual_rsplit_decomposition(const ExtensionSequence& s);

/// A sequence S, a partner S' and a unimodular integer pairing P on E x E'
/// under which S' is dual to S.
struct SequencePairing {
  ExtensionSequence S;
  ExtensionSequence partner;
  Matrix P;
};

ValidationReport validate_pairing(const SequencePairing& sp);
/// Q_W = s_Z^T P f': the pairing B(S) x A(S') -> Z.
Matrix induced_pairing_w(const SequencePairing& sp);
/// Q_V = f^T P s'_Z: the pairing A(S) x B(S') -> Z.
Matrix induced_pairing_v(const SequencePairing& sp);

struct IdentityCheck {
  Scalar lhs;
  Scalar rhs;
  TorusElement residual;  // (lhs - rhs) in R / {<omega, lambda> : lambda integral}
  bool holds() const { return residual.is_zero(); }
};

/// <s_R(omega), s'_Z(alpha)> against <omega, s'_Z(alpha) - s'_R(alpha)>_W.
/// The two integral sections of the partner may be chosen independently.
IdentityCheck verify_main_identity(const SequencePairing& sp, const Matrix& omega, const Matrix& alpha,
                                   const std::optional<Matrix>& partner_section_lhs = std::nullopt,
                                   const std::optional<Matrix>& partner_section_rhs = std::nullopt);

}  // namespace mhs
