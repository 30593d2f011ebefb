#include "mhs/random/generators.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <set>

#include "mhs/error.hpp"
#include "mhs/lattice/smith.hpp"

namespace mhs::random {

using lattice::BackendKind;

namespace {

const Backend kExact = Backend::exact();

long uniform(Rng& rng, long lo, long hi) { return std::uniform_int_distribution<long>(lo, hi)(rng); }

Matrix random_vector(Rng& rng, std::size_t n, int height, bool real) {
  Matrix v(n, 1);
  for (std::size_t i = 0; i < n; ++i) {
    v(i, 0) = real ? Scalar::exact(random_rational(rng, height)) : random_gaussian(rng, height);
  }
  return v;
}

void check_symmetric(const HodgeNumbers& h, ValidationReport& r, const std::string& side) {
  for (const auto& [pq, n] : h) {
    auto it = h.find({pq.second, pq.first});
    if (it == h.end() || it->second != n) {
      r.fail(side + ": h^{" + std::to_string(pq.first) + "," + std::to_string(pq.second) + "} has no conjugate partner");
    }
  }
}

// Vectors per bidegree: a random vector for p > q, its conjugate for (q, p),
// a real vector for p = q. Retries until the vectors form a basis.
std::map<Bidegree, Matrix> conjugate_pieces(const HodgeNumbers& h, std::size_t n, int height, Rng& rng) {
  for (int attempt = 0; attempt < 100; ++attempt) {
    std::map<Bidegree, Matrix> pieces;
    Matrix all(n, 0);
    for (const auto& [pq, count] : h) {
      const auto [p, q] = pq;
      if (p < q) continue;
      Matrix mine(n, 0);
      Matrix mirror(n, 0);
      for (std::size_t c = 0; c < count; ++c) {
        const Matrix v = random_vector(rng, n, height, p == q);
        mine = Matrix::hcat(mine, v);
        mirror = Matrix::hcat(mirror, v.conj());
      }
      pieces[pq] = mine;
      all = Matrix::hcat(all, mine);
      if (p != q) {
        pieces[{q, p}] = mirror;
        all = Matrix::hcat(all, mirror);
      }
    }
    if (lattice::rank(all) == n) return pieces;
  }
  throw Error(ErrorKind::internal_consistency, "could not draw independent Hodge vectors");
}

std::vector<HodgeStep> hodge_steps_from(const std::map<Bidegree, Matrix>& pieces, std::size_t n) {
  std::set<int, std::greater<>> ps;
  for (const auto& [pq, m] : pieces) ps.insert(pq.first);
  std::vector<HodgeStep> steps;
  for (int p : ps) {
    Matrix span(n, 0);
    for (const auto& [pq, m] : pieces)
      if (pq.first >= p) span = Matrix::hcat(span, m);
    steps.push_back({p, Subspace::span(span)});
  }
  return steps;
}

MixedHodgeStructure on_backend(const MixedHodgeStructure& h, const Backend& b) {
  return b.is_exact() ? h : h.to_floating(b.rank_tol);
}

ExtensionSequence sequence_on_backend(const ExtensionSequence& s, const Backend& b) {
  return {on_backend(s.A, b), on_backend(s.E, b), on_backend(s.B, b), s.f, s.g};
}

}  // namespace

int weight_of(const HodgeNumbers& h) {
  if (h.empty()) throw Error(ErrorKind::invalid_input, "empty Hodge number table");
  const int w = h.begin()->first.first + h.begin()->first.second;
  for (const auto& [pq, n] : h) {
    if (pq.first + pq.second != w) throw Error(ErrorKind::invalid_input, "Hodge numbers mix several weights");
  }
  return w;
}

ValidationReport validate_spec(const GeneratorSpec& spec) {
  ValidationReport r;
  if (spec.height < 1) r.fail("height bound must be >= 1");
  check_symmetric(spec.hodge_a, r, "A");
  check_symmetric(spec.hodge_b, r, "B");
  try {
    const int wa = weight_of(spec.hodge_a);
    const int wb = weight_of(spec.hodge_b);
    if (wb != wa + 1) r.fail("B must have weight one more than A");
  } catch (const Error& e) {
    r.fail(e.what());
  }
  for (const auto* h : {&spec.hodge_a, &spec.hodge_b})
    for (const auto& [pq, n] : *h)
      if (n == 0) r.fail("zero Hodge number listed");
  return r;
}

mpq_class random_rational(Rng& rng, int height) {
  mpq_class q(uniform(rng, -height, height), uniform(rng, 1, height));
  q.canonicalize();
  return q;
}

Scalar random_gaussian(Rng& rng, int height) {
  const mpq_class re = random_rational(rng, height);
  return Scalar::exact(re, random_rational(rng, height));
}

Matrix random_integer_matrix(Rng& rng, std::size_t rows, std::size_t cols, long bound) {
  Matrix m(rows, cols);
  for (std::size_t i = 0; i < rows; ++i)
    for (std::size_t j = 0; j < cols; ++j) m(i, j) = Scalar::exact(mpq_class(uniform(rng, -bound, bound)));
  return m;
}

Matrix random_unimodular(Rng& rng, std::size_t n) {
  Matrix u = Matrix::identity(n);
  if (n < 2) {
    if (n == 1 && uniform(rng, 0, 1) == 1) u(0, 0) = Scalar::integer(-1, BackendKind::exact);
    return u;
  }
  for (std::size_t step = 0; step < 2 * n; ++step) {
    const auto i = static_cast<std::size_t>(uniform(rng, 0, static_cast<long>(n) - 1));
    auto j = static_cast<std::size_t>(uniform(rng, 0, static_cast<long>(n) - 2));
    if (j >= i) ++j;
    long k = uniform(rng, 1, 2) * (uniform(rng, 0, 1) == 0 ? 1 : -1);
    const Scalar ks = Scalar::integer(k, BackendKind::exact);
    for (std::size_t c = 0; c < n; ++c) u(i, c) += ks * u(j, c);
  }
  const auto a = static_cast<std::size_t>(uniform(rng, 0, static_cast<long>(n) - 1));
  const auto b = static_cast<std::size_t>(uniform(rng, 0, static_cast<long>(n) - 1));
  for (std::size_t c = 0; c < n; ++c) std::swap(u(a, c), u(b, c));
  return u;
}

MixedHodgeStructure random_pure_hs(int weight, const HodgeNumbers& h, const GeneratorSpec& spec) {
  Rng rng(spec.seed);
  return on_backend(random_pure_hs(weight, h, spec.height, rng), spec.backend);
}

MixedHodgeStructure random_pure_hs(int weight, const HodgeNumbers& h, int height, Rng& rng) {
  std::size_t n = 0;
  for (const auto& [pq, count] : h) {
    if (pq.first + pq.second != weight) {
      throw Error(ErrorKind::invalid_input, "infeasible Hodge numbers: bidegree (" + std::to_string(pq.first) + "," +
                                                std::to_string(pq.second) + ") not of weight " + std::to_string(weight));
    }
    auto it = h.find({pq.second, pq.first});
    if (it == h.end() || it->second != count) {
      throw Error(ErrorKind::invalid_input, "infeasible Hodge numbers: not conjugate-symmetric");
    }
    n += count;
  }
  if (height < 1) throw Error(ErrorKind::invalid_input, "height bound must be >= 1");
  if (n == 0) return MixedHodgeStructure(0, kExact, {}, {});
  const auto pieces = conjugate_pieces(h, n, height, rng);
  return MixedHodgeStructure(n, kExact, {{weight, Subspace::full(n)}}, hodge_steps_from(pieces, n));
}

ExtensionSequence build_extension_from_hom(const MixedHodgeStructure& a, const MixedHodgeStructure& b,
                                           const Matrix& phi) {
  const std::size_t na = a.rank(), nb = b.rank(), n = na + nb;
  if (phi.rows() != na || phi.cols() != nb) throw Error(ErrorKind::dimension_mismatch, "phi must be rank(A) x rank(B)");
  if (!(a.backend() == b.backend())) throw Error(ErrorKind::backend_mismatch, "A and B backends differ");
  if (na == 0 || nb == 0 || !a.is_pure() || !b.is_pure() || b.lowest_weight() != a.lowest_weight() + 1) {
    throw Error(ErrorKind::invalid_input, "weight mismatch: need A, B pure with weight(B) = weight(A) + 1");
  }
  const Backend backend = a.backend();
  const Matrix ph = phi.with_backend(backend);

  Matrix f(n, na), g(nb, n);
  for (std::size_t i = 0; i < na; ++i) f(i, i) = Scalar::one(BackendKind::exact);
  for (std::size_t i = 0; i < nb; ++i) g(i, na + i) = Scalar::one(BackendKind::exact);

  const int wa = a.lowest_weight();
  std::vector<WeightStep> w{{wa, Subspace::span(f.with_backend(backend))}, {wa + 1, Subspace::full(n, backend)}};

  std::set<int, std::greater<>> ps;
  for (const auto& s : a.hodge_steps()) ps.insert(s.p);
  for (const auto& s : b.hodge_steps()) ps.insert(s.p);
  std::vector<HodgeStep> hodge;
  for (int p : ps) {
    const Matrix fa = a.F(p).basis();
    const Matrix fb = b.F(p).basis();
    const Matrix left = Matrix::vcat(fa, Matrix(nb, fa.cols(), backend));
    const Matrix graph = Matrix::vcat(ph * fb, fb);
    hodge.push_back({p, Subspace::span(Matrix::hcat(left, graph))});
  }
  MixedHodgeStructure e(n, backend, std::move(w), std::move(hodge));
  return ExtensionSequence{a, e, b, f, g};
}

Matrix random_hom(Rng& rng, std::size_t a, std::size_t b, int height) {
  Matrix m(a, b);
  for (std::size_t i = 0; i < a; ++i) {
    for (std::size_t j = 0; j < b; ++j) {
      switch (uniform(rng, 0, 3)) {
        case 0:
          m(i, j) = Scalar::exact(random_rational(rng, height));
          break;
        case 1:
          m(i, j) = Scalar::exact(0, random_rational(rng, height));
          break;
        case 2:
          m(i, j) = Scalar::exact(mpq_class(uniform(rng, -height, height)));
          break;
        default:
          m(i, j) = random_gaussian(rng, height);
      }
    }
  }
  return m;
}

Matrix random_trivial_hom(Rng& rng, const MixedHodgeStructure& b, const MixedHodgeStructure& a, int height) {
  const Subspace f0 = f0_hom(b, a);
  Matrix v = Matrix(a.rank() * b.rank(), 1, a.backend());
  for (std::size_t c = 0; c < f0.dim(); ++c) {
    Scalar coeff = random_gaussian(rng, height);
    if (!a.backend().is_exact()) coeff = Scalar::floating(coeff.to_complex());
    v += coeff * f0.basis().col(c);
  }
  const Matrix integral = random_integer_matrix(rng, a.rank(), b.rank(), height).with_backend(a.backend());
  return lattice::unvectorize(v, a.rank(), b.rank()) + integral;
}

SequencePairing random_paired_instance(const GeneratorSpec& spec) {
  const ValidationReport r = validate_spec(spec);
  if (!r.ok()) throw Error(ErrorKind::invalid_input, "generator spec: " + r.failures.front());
  Rng rng(spec.seed);
  const MixedHodgeStructure a = random_pure_hs(weight_of(spec.hodge_a), spec.hodge_a, spec.height, rng);
  const MixedHodgeStructure b = random_pure_hs(weight_of(spec.hodge_b), spec.hodge_b, spec.height, rng);
  const Matrix phi = random_hom(rng, a.rank(), b.rank(), spec.height);
  ExtensionSequence s = build_extension_from_hom(a, b, phi);
  if (spec.scramble) s = transform_middle(s, random_unimodular(rng, s.E.rank()));
  ExtensionSequence t = dual_sequence(s);
  Matrix p = Matrix::identity(s.E.rank());
  if (spec.scramble_partner) {
    const Matrix v = random_unimodular(rng, t.E.rank());
    t = transform_middle(t, v);
    p = lattice::inverse(v);
  }
  return SequencePairing{sequence_on_backend(s, spec.backend), sequence_on_backend(t, spec.backend), p};
}

SplitMhs random_mhs(std::uint64_t seed, std::size_t max_rank, int height) {
  Rng rng(seed);
  const int base = static_cast<int>(uniform(rng, -1, 1));
  std::vector<int> offsets{0, 1, 2, 3};
  std::shuffle(offsets.begin(), offsets.end(), rng);
  offsets.resize(static_cast<std::size_t>(uniform(rng, 1, 3)));
  std::sort(offsets.begin(), offsets.end());

  HodgeNumbers h;
  std::size_t used = 0;
  for (int off : offsets) {
    const int k = base + off;
    for (int attempt = 0; attempt < 20; ++attempt) {
      HodgeNumbers mine;
      std::size_t dim = 0;
      if (k % 2 == 0) {
        const auto c = static_cast<std::size_t>(uniform(rng, 0, 2));
        if (c > 0) mine[{k / 2, k / 2}] = c;
        dim += c;
      }
      const int p0 = k % 2 == 0 ? k / 2 + 1 : (k + 1) / 2;
      for (int p = p0; p <= p0 + 1; ++p) {
        if (uniform(rng, 0, 1) == 0) continue;
        mine[{p, k - p}] = 1;
        mine[{k - p, p}] = 1;
        dim += 2;
      }
      if (dim == 0 || used + dim > max_rank) continue;
      h.insert(mine.begin(), mine.end());
      used += dim;
      break;
    }
  }
  if (used == 0) {
    h[{0, 0}] = 1;
    used = 1;
  }
  const std::size_t n = used;

  const auto base_pieces = conjugate_pieces(h, n, height, rng);
  std::map<Bidegree, Matrix> tilted;
  for (const auto& [pq, m] : base_pieces) {
    Matrix out = m;
    for (std::size_t c = 0; c < m.cols(); ++c) {
      Matrix v = m.col(c);
      for (const auto& [kl, lower] : base_pieces) {
        if (kl.first >= pq.first || kl.second >= pq.second) continue;
        for (std::size_t d = 0; d < lower.cols(); ++d)
          if (uniform(rng, 0, 1) == 1) v += random_gaussian(rng, height) * lower.col(d);
      }
      for (std::size_t i = 0; i < n; ++i) out(i, c) = v(i, 0);
    }
    tilted[pq] = out;
  }

  std::set<int> ks;
  for (const auto& [pq, c] : h) ks.insert(pq.first + pq.second);
  std::vector<WeightStep> w;
  for (int k : ks) {
    Matrix span(n, 0);
    for (const auto& [pq, m] : base_pieces)
      if (pq.first + pq.second <= k) span = Matrix::hcat(span, m);
    w.push_back({k, Subspace::span(span)});
  }
  SplitMhs out{MixedHodgeStructure(n, kExact, std::move(w), hodge_steps_from(tilted, n)), {}};
  for (const auto& [pq, m] : tilted) out.splitting.emplace(pq, Subspace::span(m));
  return out;
}

MixedHodgeStructure weight_zero_two_family(const Scalar& c) {
  const Backend b{c.backend(), 1e-9};
  Matrix e1(2, 1, b), f1(2, 1, b);
  e1(0, 0) = Scalar::one(c.backend());
  f1(0, 0) = c;
  f1(1, 0) = Scalar::one(c.backend());
  return MixedHodgeStructure(2, b, {{0, Subspace::span(e1)}, {2, Subspace::full(2, b)}},
                             {{1, Subspace::span(f1)}, {0, Subspace::full(2, b)}});
}

GeneratorSpec sweep_spec(std::uint64_t seed) {
  static const std::vector<std::pair<HodgeNumbers, HodgeNumbers>> shapes{
      {{{{0, 0}, 1}}, {{{1, 0}, 1}, {{0, 1}, 1}}},
      {{{{0, 0}, 2}}, {{{1, 0}, 1}, {{0, 1}, 1}}},
      {{{{1, 0}, 1}, {{0, 1}, 1}}, {{{1, 1}, 1}}},
      {{{{1, 0}, 1}, {{0, 1}, 1}}, {{{2, 0}, 1}, {{1, 1}, 1}, {{0, 2}, 1}}},
      {{{{1, 1}, 2}}, {{{2, 1}, 1}, {{1, 2}, 1}}},
      {{{{1, 0}, 2}, {{0, 1}, 2}}, {{{1, 1}, 2}}},
      {{{{2, 0}, 1}, {{1, 1}, 1}, {{0, 2}, 1}}, {{{3, 0}, 1}, {{2, 1}, 1}, {{1, 2}, 1}, {{0, 3}, 1}}},
      {{{{0, 0}, 1}}, {{{1, 0}, 2}, {{0, 1}, 2}}},
      {{{{-1, -1}, 1}}, {{{-1, 0}, 1}, {{0, -1}, 1}}},
  };
  GeneratorSpec spec;
  spec.seed = seed;
  const auto& shape = shapes[seed % shapes.size()];
  spec.hodge_a = shape.first;
  spec.hodge_b = shape.second;
  return spec;
}

curve::ComplexTorus random_torus(Rng& rng) {
  using curve::Complex;
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  const double radius = 0.5 + 1.5 * unit(rng);
  const double angle = 2.0 * std::numbers::pi * unit(rng);
  Complex w1 = std::polar(radius, angle);
  const Complex tau(unit(rng) - 0.5, 0.9 + 0.9 * unit(rng));
  Complex w2 = tau * w1;
  std::uniform_int_distribution<int> ops(1, 3), shift(-2, 2), coin(0, 1);
  for (int i = ops(rng); i > 0; --i) {
    if (coin(rng) == 0) {
      w2 += static_cast<double>(shift(rng)) * w1;
    } else {
      const Complex old = w1;
      w1 = w2;
      w2 = -old;
    }
  }
  return curve::ComplexTorus(w1, w2);
}

curve::DivisorZero random_divisor(Rng& rng, const curve::ComplexTorus& t, std::size_t pairs, double separation) {
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  auto gap = [](double a, double b) {
    const double d = std::abs(a - b);
    return std::min(d, 1.0 - d);
  };
  for (int attempt = 0; attempt < 10000; ++attempt) {
    std::vector<std::array<double, 2>> pts(2 * pairs);
    for (auto& p : pts) p = {unit(rng), unit(rng)};
    bool spread = true;
    for (std::size_t i = 0; i < pts.size() && spread; ++i) {
      for (std::size_t j = i + 1; j < pts.size() && spread; ++j) {
        spread = std::hypot(gap(pts[i][0], pts[j][0]), gap(pts[i][1], pts[j][1])) >= separation;
      }
    }
    if (!spread) continue;
    curve::DivisorZero d;
    for (std::size_t i = 0; i < pairs; ++i) {
      const auto at = [&](const std::array<double, 2>& x) { return x[0] * t.omega1() + x[1] * t.omega2(); };
      d.pairs.push_back({at(pts[2 * i]), at(pts[2 * i + 1])});
    }
    return d;
  }
  throw Error(ErrorKind::invalid_input, "random_divisor: cannot place " + std::to_string(2 * pairs) +
                                            " points with separation " + std::to_string(separation));
}

}  // namespace mhs::random
