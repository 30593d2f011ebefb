#include "mhs/ext/extension.hpp"

#include <algorithm>
#include <string>

#include "mhs/error.hpp"
#include "mhs/lattice/smith.hpp"

namespace mhs {

using lattice::image;
using lattice::intersect;
using lattice::kernel;
using lattice::sum;

namespace {

Matrix on(const Matrix& m, const MixedHodgeStructure& h) { return m.with_backend(h.backend()); }

std::string idx(int k) { return std::to_string(k); }

bool unit_factors(const lattice::SmithDecomposition& snf) {
  return std::all_of(snf.invariant_factors.begin(), snf.invariant_factors.end(), [](auto& d) { return d == 1; });
}

// Shape and integrality problems make the remaining checks meaningless.
bool check_shapes(const ExtensionSequence& s, ValidationReport& r) {
  const std::size_t a = s.A.rank(), e = s.E.rank(), b = s.B.rank();
  if (s.f.rows() != e || s.f.cols() != a) r.fail("f has shape " + idx(s.f.rows()) + "x" + idx(s.f.cols()) +
                                                 ", expected " + idx(e) + "x" + idx(a));
  if (s.g.rows() != b || s.g.cols() != e) r.fail("g has shape " + idx(s.g.rows()) + "x" + idx(s.g.cols()) +
                                                 ", expected " + idx(b) + "x" + idx(e));
  if (!s.f.is_exact() || !s.f.is_integral()) r.fail("f is not an integer matrix");
  if (!s.g.is_exact() || !s.g.is_integral()) r.fail("g is not an integer matrix");
  if (!(s.A.backend() == s.E.backend()) || !(s.B.backend() == s.E.backend())) r.fail("A, E, B backends differ");
  return r.ok();
}

void check_exactness(const ExtensionSequence& s, ValidationReport& r) {
  const std::size_t a = s.A.rank(), e = s.E.rank(), b = s.B.rank();
  if (a > 0) {
    const auto snf = lattice::smith_normal_form(s.f);
    if (snf.rank() != a) {
      r.fail("f not injective");
    } else if (!unit_factors(snf)) {
      r.fail("f image not saturated");
    }
  }
  if (b > 0) {
    const auto snf = lattice::smith_normal_form(s.g);
    if (snf.rank() != b) {
      r.fail("g not surjective (rank " + idx(snf.rank()) + " < " + idx(b) + ")");
    } else if (!unit_factors(snf)) {
      mpz_class index = 1;
      for (const auto& d : snf.invariant_factors) index *= d;
      r.fail("g not surjective over Z (image index " + index.get_str() + ")");
    }
  }
  if (a > 0 && b > 0 && !(s.g * s.f).is_zero()) r.fail("g o f != 0");
  if (a + b != e) r.fail("ker g != im f (ranks " + idx(a) + " + " + idx(b) + " != " + idx(e) + ")");
}

void check_morphisms(const ExtensionSequence& s, ValidationReport& r) {
  const Matrix f = on(s.f, s.E);
  const Matrix g = on(s.g, s.E);
  const int k_lo = std::min({s.A.first_weight_index(), s.E.first_weight_index(), s.B.first_weight_index()});
  const int k_hi = std::max({s.A.last_weight_index(), s.E.last_weight_index(), s.B.last_weight_index()});
  for (int k = k_lo; k <= k_hi; ++k) {
    if (!s.E.W(k).contains(image(f, s.A.W(k)))) r.fail("f does not preserve W_" + idx(k));
    if (!s.B.W(k).contains(image(g, s.E.W(k)))) r.fail("g does not preserve W_" + idx(k));
  }
  const int p_lo = std::min({s.A.lowest_hodge_index(), s.E.lowest_hodge_index(), s.B.lowest_hodge_index()});
  const int p_hi = std::max({s.A.highest_hodge_index(), s.E.highest_hodge_index(), s.B.highest_hodge_index()});
  for (int p = p_lo; p <= p_hi; ++p) {
    if (!s.E.F(p).contains(image(f, s.A.F(p)))) r.fail("f does not preserve F^" + idx(p));
    if (!s.B.F(p).contains(image(g, s.E.F(p)))) r.fail("g does not preserve F^" + idx(p));
  }
}

bool consecutive_pure(const ExtensionSequence& s) {
  return s.A.rank() > 0 && s.B.rank() > 0 && s.A.is_pure() && s.B.is_pure() &&
         s.B.lowest_weight() == s.A.lowest_weight() + 1;
}

void require_r_split(const MixedHodgeStructure& h, const char* what) {
  const RSplitResult res = r_split_test(h);
  if (!res.r_split) {
    throw Error(ErrorKind::not_r_split, std::string(what) + " not R-split: conj(I^{" + idx(res.witness.first) + "," +
                                            idx(res.witness.second) + "}) differs from its mirror");
  }
}

Matrix checked_section(const ExtensionSequence& s, const std::optional<Matrix>& s_z) {
  if (!s_z) return integral_section(s);
  if (s_z->rows() != s.E.rank() || s_z->cols() != s.B.rank()) {
    throw Error(ErrorKind::dimension_mismatch, "integral section has the wrong shape");
  }
  if (!s_z->is_exact() || !s_z->is_integral()) throw Error(ErrorKind::not_integral, "integral section is not integral");
  if (!(s.g * *s_z == Matrix::identity(s.B.rank()))) {
    throw Error(ErrorKind::invalid_input, "supplied integral section does not satisfy g s = id");
  }
  return *s_z;
}

Matrix real_or_throw(const Matrix& m, const char* what) {
  if (m.is_real()) return m;
  if (!m.is_exact() && m.imag_part().max_abs() <= 1e3 * m.backend().rank_tol * std::max(1.0, m.max_abs())) {
    return m.real_part();
  }
  throw Error(ErrorKind::internal_consistency, std::string(what) + " has a nonzero imaginary part");
}

}  // namespace

ValidationReport validate_sequence(const ExtensionSequence& s) {
  ValidationReport r;
  r.merge(validate(s.A), "A: ");
  r.merge(validate(s.E), "E: ");
  r.merge(validate(s.B), "B: ");
  if (!check_shapes(s, r)) return r;
  check_exactness(s, r);
  check_morphisms(s, r);
  if (!r.ok()) return r;
  if (s.A.rank() > 0 && s.B.rank() > 0 && s.A.highest_weight() >= s.B.lowest_weight()) {
    r.fail("B > A fails: A has weight " + idx(s.A.highest_weight()) + ", B has weight " + idx(s.B.lowest_weight()));
  }
  if (consecutive_pure(s) && !is_r_split(s.E)) r.fail("E not R-split");
  return r;
}

void require_valid(const ExtensionSequence& s, const char* op) {
  const ValidationReport r = validate_sequence(s);
  if (!r.ok()) throw Error(ErrorKind::invalid_input, std::string(op) + ": invalid sequence: " + r.failures.front());
}

Matrix integral_section(const ExtensionSequence& s) {
  if (s.g.rows() != s.B.rank() || s.g.cols() != s.E.rank()) {
    throw Error(ErrorKind::dimension_mismatch, "integral_section: g has the wrong shape");
  }
  if (s.B.rank() == 0) return Matrix(s.E.rank(), 0);
  return lattice::integer_right_inverse(s.g);
}

Matrix integral_retraction_of_f(const ExtensionSequence& s) {
  if (s.A.rank() == 0) return Matrix(0, s.E.rank());
  return lattice::integer_left_inverse(s.f);
}

Matrix retraction(const ExtensionSequence& s, const Matrix& s_z) {
  const Matrix proj = Matrix::identity(s.E.rank()) - s_z * s.g;
  return integral_retraction_of_f(s) * proj;
}

Matrix hodge_section(const ExtensionSequence& s) {
  const std::size_t nb = s.B.rank();
  const Matrix g = on(s.g, s.E);
  Matrix chosen(nb, 0, s.E.backend());
  Matrix lifts(s.E.rank(), 0, s.E.backend());
  for (int p = s.B.highest_hodge_index(); p >= s.B.lowest_hodge_index() && chosen.cols() < nb; --p) {
    const Matrix fb = s.B.F(p).basis();
    const Matrix fe = s.E.F(p).basis();
    const Matrix gfe = g * fe;
    for (std::size_t c = 0; c < fb.cols(); ++c) {
      const Matrix v = fb.col(c);
      const Matrix trial = Matrix::hcat(chosen, v);
      if (lattice::rank(trial) == chosen.cols()) continue;
      const auto x = lattice::solve(gfe, v);
      if (!x) {
        throw Error(ErrorKind::internal_consistency,
                    "hodge_section: F^" + idx(p) + "B is not the image of F^" + idx(p) + "E");
      }
      chosen = trial;
      lifts = Matrix::hcat(lifts, fe * *x);
    }
  }
  if (chosen.cols() != nb) throw Error(ErrorKind::internal_consistency, "hodge_section: F does not exhaust B");
  if (nb == 0) return Matrix(s.E.rank(), 0, s.E.backend());
  return lifts * lattice::inverse(chosen);
}

Matrix deligne_real_section(const ExtensionSequence& s) {
  require_r_split(s.A, "A");
  require_r_split(s.B, "B");
  require_r_split(s.E, "E");
  const std::size_t nb = s.B.rank();
  if (nb == 0) return Matrix(s.E.rank(), 0, s.E.backend());
  const int cut = s.A.rank() == 0 ? s.B.lowest_weight() - 1 : s.A.highest_weight();

  Matrix x(s.E.rank(), 0, s.E.backend());
  for (const auto& [pq, piece] : deligne_splitting(s.E))
    if (pq.first + pq.second > cut) x = Matrix::hcat(x, piece.basis());
  const Matrix gx = on(s.g, s.E) * x;
  if (gx.rows() != gx.cols() || lattice::rank(gx) != nb) {
    throw Error(ErrorKind::internal_consistency, "deligne_real_section: g is not an isomorphism on the upper pieces");
  }
  return real_or_throw(x * lattice::inverse(gx), "deligne_real_section");
}

TorusElement carlson_class(const ExtensionSequence& s, const std::optional<Matrix>& s_z) {
  const Matrix sz = checked_section(s, s_z);
  const Matrix r = on(retraction(s, sz), s.E);
  // r o s_Z = 0, so r o s_F represents the class of s_F - s_Z
  return j0hom_element(s.B, s.A, r * hodge_section(s));
}

Matrix topological_aj_map(const ExtensionSequence& s, const std::optional<Matrix>& s_z) {
  const Matrix sz = checked_section(s, s_z);
  const Matrix sr = deligne_real_section(s);
  return on(integral_retraction_of_f(s), s.E) * (sr - on(sz, s.E));
}

TorusElement topological_aj(const ExtensionSequence& s, const Matrix& b, const std::optional<Matrix>& s_z) {
  if (b.rows() != s.B.rank() || b.cols() != 1) throw Error(ErrorKind::dimension_mismatch, "topological_aj: b shape");
  if (!b.is_exact() || !b.is_integral()) throw Error(ErrorKind::not_integral, "topological_aj: b must be integral");
  return real_torus_element(topological_aj_map(s, s_z) * on(b, s.E));
}

ExtensionSequence dual_sequence(const ExtensionSequence& s) {
  require_valid(s, "dual_sequence");
  return ExtensionSequence{dual(s.B), dual(s.E), dual(s.A), s.g.transpose(), -s.f.transpose()};
}

ExtensionSequence transform_middle(const ExtensionSequence& s, const Matrix& u) {
  if (!lattice::is_unimodular(u) || u.rows() != s.E.rank()) {
    throw Error(ErrorKind::invalid_input, "transform_middle: basis change must be unimodular of rank e");
  }
  return ExtensionSequence{s.A, transform(s.E, u), s.B, u * s.f, s.g * lattice::inverse(u)};
}

DualDecomposition dual_rsplit_decomposition(const ExtensionSequence& s) {
  if (!consecutive_pure(s)) {
    throw Error(ErrorKind::assumption_failure, "dual_rsplit_decomposition: A, B must be pure of consecutive weights");
  }
  const ExtensionSequence d = dual_sequence(s);
  const Matrix sr = deligne_real_section(s);
  const Subspace img = Subspace::span(on(s.g.transpose(), s.E));
  const Subspace ker = kernel(sr.transpose());
  const std::size_t e = s.E.rank();
  if (img.dim() + ker.dim() != e || !sum(img, ker).is_full()) {
    throw Error(ErrorKind::assumption_failure, "im g* and ker s_R* are not complementary");
  }

  const int w = s.B.lowest_weight();
  Matrix top(e, 0, s.E.backend());
  Matrix upper(e, 0, s.E.backend());
  for (const auto& [pq, piece] : deligne_splitting(d.E)) {
    const int k = pq.first + pq.second;
    if (k == -w) {
      top = Matrix::hcat(top, piece.basis());
    } else if (k == -w + 1) {
      upper = Matrix::hcat(upper, piece.basis());
    } else {
      throw Error(ErrorKind::assumption_failure, "E^v has a piece outside weights -w, -w+1");
    }
  }
  if (!(Subspace::span(top) == img)) {
    throw Error(ErrorKind::assumption_failure, "im g* differs from the weight -w part of the splitting of E^v");
  }
  if (!(Subspace::span(upper) == ker)) {
    throw Error(ErrorKind::assumption_failure, "ker s_R* differs from the weight -w+1 part of the splitting of E^v");
  }

  const Matrix minus_ft = on(d.g, s.E);
  for (int p = d.E.lowest_hodge_index() - 1; p <= d.E.highest_hodge_index() + 1; ++p) {
    const Subspace mapped = image(minus_ft, intersect(d.E.F(p), ker));
    const Subspace target = d.B.F(p);
    if (!(mapped == target)) {
      throw Error(ErrorKind::assumption_failure, "-f* does not carry F^" + idx(p) + " of ker s_R* onto F^" + idx(p) +
                                                     " of A^v");
    }
  }
  return {img, ker};
}

// ---------------------------------------------------------------------------

namespace {

Subspace pairing_annihilator(const Matrix& p, const Subspace& u, const MixedHodgeStructure& partner_e) {
  if (u.dim() == 0) return Subspace::full(partner_e.rank(), partner_e.backend());
  return kernel(u.basis().transpose() * on(p, partner_e));
}

}  // namespace

Matrix induced_pairing_w(const SequencePairing& sp) {
  return integral_section(sp.S).transpose() * sp.P * sp.partner.f;
}

Matrix induced_pairing_v(const SequencePairing& sp) {
  return -(sp.S.f.transpose() * sp.P * integral_section(sp.partner));
}

ValidationReport validate_pairing(const SequencePairing& sp) {
  ValidationReport r;
  r.merge(validate_sequence(sp.S), "S: ");
  r.merge(validate_sequence(sp.partner), "partner: ");
  if (!r.ok()) return r;
  const ExtensionSequence& s = sp.S;
  const ExtensionSequence& t = sp.partner;
  if (sp.P.rows() != s.E.rank() || sp.P.cols() != t.E.rank()) {
    r.fail("P has shape " + idx(sp.P.rows()) + "x" + idx(sp.P.cols()) + ", expected " + idx(s.E.rank()) + "x" +
           idx(t.E.rank()));
    return r;
  }
  if (!lattice::is_unimodular(sp.P)) {
    r.fail("pairing not unimodular");
    return r;
  }
  if (!(s.f.transpose() * sp.P * t.f).is_zero()) r.fail("P does not vanish on f(A) x f'(A')");

  const Matrix qw = induced_pairing_w(sp);
  const Matrix qv = induced_pairing_v(sp);
  if (!lattice::is_unimodular(qw)) r.fail("induced pairing B x A' not unimodular");
  if (!lattice::is_unimodular(qv)) r.fail("induced pairing A x B' not unimodular");

  const int k_lo = std::min(t.E.first_weight_index(), -s.E.last_weight_index() - 1) - 1;
  const int k_hi = std::max(t.E.last_weight_index(), -s.E.first_weight_index() + 1) + 1;
  for (int k = k_lo; k <= k_hi; ++k) {
    if (!(t.E.W(k) == pairing_annihilator(sp.P, s.E.W(-k - 1), t.E))) {
      r.fail("P not compatible with weights: W_" + idx(k) + "E' != annihilator of W_" + idx(-k - 1) + "E");
    }
  }
  const int p_lo = std::min(t.E.lowest_hodge_index(), 1 - s.E.highest_hodge_index()) - 1;
  const int p_hi = std::max(t.E.highest_hodge_index(), 1 - s.E.lowest_hodge_index()) + 1;
  for (int p = p_lo; p <= p_hi; ++p) {
    if (!(t.E.F(p) == pairing_annihilator(sp.P, s.E.F(1 - p), t.E))) {
      r.fail("P not compatible with Hodge filtrations: F^" + idx(p) + "E' != annihilator of F^" + idx(1 - p) + "E");
    }
  }
  return r;
}

IdentityCheck verify_main_identity(const SequencePairing& sp, const Matrix& omega, const Matrix& alpha,
                                   const std::optional<Matrix>& partner_section_lhs,
                                   const std::optional<Matrix>& partner_section_rhs) {
  const ExtensionSequence& s = sp.S;
  const ExtensionSequence& t = sp.partner;
  if (sp.P.rows() != s.E.rank() || sp.P.cols() != t.E.rank()) {
    throw Error(ErrorKind::dimension_mismatch, "verify_main_identity: P does not match E x E'");
  }
  if (!lattice::is_unimodular(sp.P)) throw Error(ErrorKind::invalid_input, "pairing not unimodular");
  if (omega.rows() != s.B.rank() || omega.cols() != 1 || alpha.rows() != t.B.rank() || alpha.cols() != 1) {
    throw Error(ErrorKind::dimension_mismatch, "verify_main_identity: omega or alpha has the wrong shape");
  }
  if (!omega.is_integral() || !alpha.is_integral()) {
    throw Error(ErrorKind::not_integral, "verify_main_identity: omega and alpha must be integral");
  }

  const Matrix p = on(sp.P, s.E);
  const Matrix w = on(omega, s.E);
  const Matrix a = on(alpha, s.E);
  const Matrix t_lhs = on(checked_section(t, partner_section_lhs), s.E);
  const Matrix t_rhs = on(checked_section(t, partner_section_rhs), s.E);
  const Matrix sr = deligne_real_section(s);
  const Matrix tr = deligne_real_section(t).with_backend(s.E.backend());
  const Matrix qw = induced_pairing_w(sp);

  const Matrix lhs = (sr * w).transpose() * p * (t_lhs * a);
  const Matrix lambda = on(integral_retraction_of_f(t), s.E) * (t_rhs * a - tr * a);
  const Matrix rhs = w.transpose() * on(qw, s.E) * lambda;

  const Matrix periods = omega.transpose() * qw;
  const mpz_class gcd = lattice::content(periods);
  Matrix gen(1, gcd == 0 ? 0 : 1);
  if (gcd != 0) gen(0, 0) = Scalar::exact(mpq_class(gcd));
  const Matrix diff = lhs - rhs;
  TorusElement residual(TorusKind::periods, "R/(" + gcd.get_str() + " Z)", diff, gen.with_backend(s.E.backend()),
                        real_or_throw(diff, "identity residual"));
  return IdentityCheck{lhs(0, 0), rhs(0, 0), residual};
}

}  // namespace mhs
