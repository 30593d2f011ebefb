#include "mhs/core/mixed_hodge.hpp"

#include <algorithm>
#include <sstream>

#include "mhs/error.hpp"
#include "mhs/lattice/smith.hpp"

namespace mhs {

using lattice::annihilator;
using lattice::conjugate_subspace;
using lattice::intersect;
using lattice::sum;

void ValidationReport::merge(const ValidationReport& other, const std::string& prefix) {
  for (const auto& f : other.failures) failures.push_back(prefix + f);
}

MixedHodgeStructure::MixedHodgeStructure(std::size_t rank, Backend backend, std::vector<WeightStep> weights,
                                         std::vector<HodgeStep> hodge)
    : rank_(rank), backend_(backend), weights_(std::move(weights)), hodge_(std::move(hodge)) {
  auto canonical = [&](Subspace& s, const std::string& what) {
    if (s.ambient() != rank_) {
      throw Error(ErrorKind::dimension_mismatch,
                  what + " has ambient dimension " + std::to_string(s.ambient()) + ", expected " + std::to_string(rank_));
    }
    s = Subspace::span(s.basis().with_backend(backend_));
  };
  for (auto& w : weights_) canonical(w.space, "W_" + std::to_string(w.k));
  for (auto& f : hodge_) canonical(f.space, "F^" + std::to_string(f.p));
}

Subspace MixedHodgeStructure::W(int k) const {
  const WeightStep* best = nullptr;
  for (const auto& w : weights_) {
    if (w.k <= k && (best == nullptr || w.k > best->k)) best = &w;
  }
  return best ? best->space : Subspace::zero(rank_, backend_);
}

Subspace MixedHodgeStructure::F(int p) const {
  const HodgeStep* best = nullptr;
  for (const auto& f : hodge_) {
    if (f.p >= p && (best == nullptr || f.p < best->p)) best = &f;
  }
  return best ? best->space : Subspace::zero(rank_, backend_);
}

Matrix MixedHodgeStructure::weight_lattice(int k) const { return lattice::saturated_basis(W(k)); }

int MixedHodgeStructure::first_weight_index() const {
  if (weights_.empty()) return 0;
  return std::min_element(weights_.begin(), weights_.end(), [](auto& a, auto& b) { return a.k < b.k; })->k;
}

int MixedHodgeStructure::last_weight_index() const {
  if (weights_.empty()) return 0;
  return std::max_element(weights_.begin(), weights_.end(), [](auto& a, auto& b) { return a.k < b.k; })->k;
}

int MixedHodgeStructure::lowest_hodge_index() const {
  if (hodge_.empty()) return 0;
  return std::min_element(hodge_.begin(), hodge_.end(), [](auto& a, auto& b) { return a.p < b.p; })->p;
}

int MixedHodgeStructure::highest_hodge_index() const {
  if (hodge_.empty()) return 0;
  return std::max_element(hodge_.begin(), hodge_.end(), [](auto& a, auto& b) { return a.p < b.p; })->p;
}

std::vector<int> MixedHodgeStructure::weights() const {
  std::vector<int> out;
  std::size_t prev = 0;
  for (int k = first_weight_index(); k <= last_weight_index() && !weights_.empty(); ++k) {
    const std::size_t d = W(k).dim();
    if (d > prev) out.push_back(k);
    prev = d;
  }
  return out;
}

int MixedHodgeStructure::lowest_weight() const {
  const auto w = weights();
  if (w.empty()) throw Error(ErrorKind::invalid_input, "structure has no nonzero graded piece");
  return w.front();
}

int MixedHodgeStructure::highest_weight() const {
  const auto w = weights();
  if (w.empty()) throw Error(ErrorKind::invalid_input, "structure has no nonzero graded piece");
  return w.back();
}

MixedHodgeStructure MixedHodgeStructure::normalized() const {
  std::vector<WeightStep> w;
  if (!weights_.empty()) {
    std::size_t prev = 0;
    for (int k = first_weight_index(); k <= last_weight_index(); ++k) {
      Subspace s = W(k);
      if (s.dim() != prev) w.push_back({k, s});
      prev = s.dim();
    }
  }
  std::vector<HodgeStep> f;
  if (!hodge_.empty()) {
    std::size_t prev = 0;
    for (int p = highest_hodge_index(); p >= lowest_hodge_index(); --p) {
      Subspace s = F(p);
      if (s.dim() != prev) f.push_back({p, s});
      prev = s.dim();
    }
  }
  return MixedHodgeStructure(rank_, backend_, std::move(w), std::move(f));
}

MixedHodgeStructure MixedHodgeStructure::to_floating(double rank_tol) const {
  auto b = Backend::floating(rank_tol);
  std::vector<WeightStep> w;
  for (const auto& s : weights_) w.push_back({s.k, Subspace::span(s.space.basis().with_backend(b))});
  std::vector<HodgeStep> f;
  for (const auto& s : hodge_) f.push_back({s.p, Subspace::span(s.space.basis().with_backend(b))});
  return MixedHodgeStructure(rank_, b, std::move(w), std::move(f));
}

bool operator==(const MixedHodgeStructure& a, const MixedHodgeStructure& b) {
  if (a.rank_ != b.rank_ || !(a.backend_ == b.backend_)) return false;
  const int k_lo = std::min(a.first_weight_index(), b.first_weight_index()) - 1;
  const int k_hi = std::max(a.last_weight_index(), b.last_weight_index());
  for (int k = k_lo; k <= k_hi; ++k)
    if (!(a.W(k) == b.W(k))) return false;
  const int p_lo = std::min(a.lowest_hodge_index(), b.lowest_hodge_index());
  const int p_hi = std::max(a.highest_hodge_index(), b.highest_hodge_index()) + 1;
  for (int p = p_lo; p <= p_hi; ++p)
    if (!(a.F(p) == b.F(p))) return false;
  return true;
}

// ---------------------------------------------------------------------------

ValidationReport validate(const MixedHodgeStructure& h) {
  ValidationReport report;
  const std::size_t n = h.rank();
  const auto& ws = h.weight_steps();
  const auto& fs = h.hodge_steps();

  bool ordered = true;
  for (std::size_t i = 1; i < ws.size(); ++i) {
    if (ws[i].k <= ws[i - 1].k) {
      report.fail("W steps not ascending");
      ordered = false;
      break;
    }
  }
  for (std::size_t i = 1; i < ws.size() && ordered; ++i) {
    if (!ws[i].space.contains(ws[i - 1].space)) {
      report.fail("W not increasing at k=" + std::to_string(ws[i].k));
      ordered = false;
    }
  }
  if (n > 0 && (ws.empty() || !h.W(h.last_weight_index()).is_full())) report.fail("W not exhaustive");
  for (const auto& w : ws) {
    const Matrix& b = w.space.basis();
    const bool rational = b.is_exact() ? b.is_real() : b.imag_part().max_abs() <= b.backend().rank_tol;
    if (!rational) report.fail("W_" + std::to_string(w.k) + " not defined over Q");
  }

  for (std::size_t i = 1; i < fs.size(); ++i) {
    if (fs[i].p >= fs[i - 1].p) {
      report.fail("F steps not descending in p");
      ordered = false;
      break;
    }
  }
  for (std::size_t i = 1; i < fs.size() && ordered; ++i) {
    if (!fs[i].space.contains(fs[i - 1].space)) {
      report.fail("F not decreasing at p=" + std::to_string(fs[i].p));
      ordered = false;
    }
  }
  if (n > 0 && (fs.empty() || !h.F(h.lowest_hodge_index()).is_full())) report.fail("F not exhaustive");

  if (!report.ok()) return report;

  // purity: images of F^p and conj(F^{k-p+1}) in Gr^W_k are complementary
  const int p_lo = h.lowest_hodge_index();
  const int p_hi = h.highest_hodge_index();
  for (int k : h.weights()) {
    const Subspace wk = h.W(k);
    const Subspace wk1 = h.W(k - 1);
    for (int p = std::min(p_lo, k - p_hi) - 1; p <= std::max(p_hi, k - p_lo) + 1; ++p) {
      const Subspace x = sum(intersect(h.F(p), wk), wk1);
      const Subspace y = sum(intersect(conjugate_subspace(h.F(k - p + 1)), wk), wk1);
      if (!(sum(x, y) == wk) || !(intersect(x, y) == wk1)) {
        report.fail("Gr^W_" + std::to_string(k) + " not pure of weight " + std::to_string(k) + " (F^" +
                    std::to_string(p) + " and conj F^" + std::to_string(k - p + 1) + " not complementary)");
        break;
      }
    }
  }
  return report;
}

void require_valid(const MixedHodgeStructure& h, const char* op) {
  const auto report = validate(h);
  if (!report.ok()) {
    throw Error(ErrorKind::invalid_input, std::string(op) + ": invalid mixed Hodge structure: " + report.failures.front());
  }
}

DeligneSplitting deligne_splitting(const MixedHodgeStructure& h) {
  require_valid(h, "deligne_splitting");
  DeligneSplitting out;
  if (h.rank() == 0) return out;

  const int p_lo = h.lowest_hodge_index();
  const int p_hi = h.highest_hodge_index();
  const int k_lo = h.first_weight_index();

  std::map<int, Subspace> conj_f;
  for (int p = p_lo - 1; p <= p_hi + 1; ++p) conj_f[p] = conjugate_subspace(h.F(p));
  auto conj_F = [&](int p) -> Subspace {
    if (p < p_lo) return conj_f.at(p_lo - 1);
    if (p > p_hi) return conj_f.at(p_hi + 1);
    return conj_f.at(p);
  };

  for (int p = p_lo; p <= p_hi; ++p) {
    for (int q = p_lo; q <= p_hi; ++q) {
      const int k = p + q;
      if (k < k_lo) continue;
      const Subspace wk = h.W(k);
      const Subspace left = intersect(h.F(p), wk);
      if (left.is_zero()) continue;
      Subspace right = intersect(conj_F(q), wk);
      for (int j = 2; k - j >= k_lo; ++j) right = sum(right, intersect(conj_F(q - j + 1), h.W(k - j)));
      Subspace piece = intersect(left, right);
      if (!piece.is_zero()) out.emplace(Bidegree{p, q}, std::move(piece));
    }
  }
  return out;
}

namespace {

Subspace span_of(const DeligneSplitting& split, std::size_t n, const Backend& backend, auto&& keep) {
  Matrix basis(n, 0, backend);
  for (const auto& [pq, s] : split)
    if (keep(pq.first, pq.second)) basis = Matrix::hcat(basis, s.basis());
  return Subspace::span(basis);
}

std::string bideg(int p, int q) { return "(" + std::to_string(p) + "," + std::to_string(q) + ")"; }

}  // namespace

ValidationReport check_splitting(const MixedHodgeStructure& h, const DeligneSplitting& split) {
  ValidationReport report;
  const std::size_t n = h.rank();
  const Backend& b = h.backend();

  std::size_t total = 0;
  for (const auto& [pq, s] : split) total += s.dim();
  const Subspace all = span_of(split, n, b, [](int, int) { return true; });
  if (total != n || !all.is_full()) report.fail("pieces do not form a direct sum decomposition of C^n");

  for (int p = h.lowest_hodge_index() - 1; p <= h.highest_hodge_index() + 1; ++p) {
    const Subspace fp = span_of(split, n, b, [p](int a, int) { return a >= p; });
    if (!(fp == h.F(p))) report.fail("F^" + std::to_string(p) + " != sum of I^{k,q} with k >= p");
  }
  for (int k = h.first_weight_index() - 1; k <= h.last_weight_index(); ++k) {
    const Subspace wk = span_of(split, n, b, [k](int p, int q) { return p + q <= k; });
    if (!(wk == h.W(k))) report.fail("W_" + std::to_string(k) + " != sum of I^{p,q} with p+q <= k");
  }
  for (const auto& [pq, s] : split) {
    const auto [p, q] = pq;
    const Subspace lower = span_of(split, n, b, [p, q](int k, int l) { return k < q && l < p; });
    auto it = split.find({q, p});
    const Subspace mirror = it == split.end() ? Subspace::zero(n, b) : it->second;
    if (mirror.dim() != s.dim() || !sum(mirror, lower).contains(conjugate_subspace(s))) {
      report.fail("conj(I^" + bideg(p, q) + ") not congruent to I^" + bideg(q, p));
    }
  }
  return report;
}

RSplitResult r_split_test(const MixedHodgeStructure& h) {
  const DeligneSplitting split = deligne_splitting(h);
  for (const auto& [pq, s] : split) {
    auto it = split.find({pq.second, pq.first});
    if (it == split.end() || !(conjugate_subspace(s) == it->second)) return {false, pq};
  }
  return {true, {0, 0}};
}

bool is_r_split(const MixedHodgeStructure& h) { return r_split_test(h).r_split; }

MixedHodgeStructure dual(const MixedHodgeStructure& h) {
  require_valid(h, "dual");
  const std::size_t n = h.rank();
  std::vector<WeightStep> w;
  std::size_t prev = 0;
  for (int k = -h.last_weight_index(); k <= -h.first_weight_index(); ++k) {
    Subspace s = annihilator(h.W(-k - 1));
    if (s.dim() != prev) w.push_back({k, s});
    prev = s.dim();
  }
  std::vector<HodgeStep> f;
  prev = 0;
  for (int p = -h.lowest_hodge_index(); p >= -h.highest_hodge_index(); --p) {
    Subspace s = annihilator(h.F(1 - p));
    if (s.dim() != prev) f.push_back({p, s});
    prev = s.dim();
  }
  if (n == 0) {
    w.clear();
    f.clear();
  }
  return MixedHodgeStructure(n, h.backend(), std::move(w), std::move(f));
}

MixedHodgeStructure tate_twist(const MixedHodgeStructure& h, int m) {
  std::vector<WeightStep> w;
  for (const auto& s : h.weight_steps()) w.push_back({s.k - 2 * m, s.space});
  std::vector<HodgeStep> f;
  for (const auto& s : h.hodge_steps()) f.push_back({s.p - m, s.space});
  return MixedHodgeStructure(h.rank(), h.backend(), std::move(w), std::move(f));
}

HodgeNumbers hodge_numbers(const MixedHodgeStructure& h) {
  HodgeNumbers out;
  for (const auto& [pq, s] : deligne_splitting(h)) out[pq] = s.dim();
  return out;
}

MixedHodgeStructure tate_structure(int m, Backend backend) {
  const Subspace full = Subspace::full(1, backend);
  return MixedHodgeStructure(1, backend, {{-2 * m, full}}, {{-m, full}});
}

MixedHodgeStructure transform(const MixedHodgeStructure& h, const Matrix& u) {
  if (u.rows() != h.rank() || u.cols() != h.rank()) throw Error(ErrorKind::dimension_mismatch, "transform: shape");
  const Matrix um = u.with_backend(h.backend());
  std::vector<WeightStep> w;
  for (const auto& s : h.weight_steps()) w.push_back({s.k, lattice::image(um, s.space)});
  std::vector<HodgeStep> f;
  for (const auto& s : h.hodge_steps()) f.push_back({s.p, lattice::image(um, s.space)});
  return MixedHodgeStructure(h.rank(), h.backend(), std::move(w), std::move(f));
}

namespace {

Matrix block_diag(const Matrix& a, const Matrix& b) {
  Matrix out(a.rows() + b.rows(), a.cols() + b.cols(), a.backend());
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j) out(i, j) = a(i, j);
  for (std::size_t i = 0; i < b.rows(); ++i)
    for (std::size_t j = 0; j < b.cols(); ++j) out(a.rows() + i, a.cols() + j) = b(i, j);
  return out;
}

}  // namespace

MixedHodgeStructure direct_sum(const MixedHodgeStructure& a, const MixedHodgeStructure& b) {
  if (!(a.backend() == b.backend())) throw Error(ErrorKind::backend_mismatch, "direct_sum: backend mismatch");
  std::vector<int> ks;
  for (const auto& s : a.weight_steps()) ks.push_back(s.k);
  for (const auto& s : b.weight_steps()) ks.push_back(s.k);
  std::sort(ks.begin(), ks.end());
  ks.erase(std::unique(ks.begin(), ks.end()), ks.end());
  std::vector<WeightStep> w;
  for (int k : ks) w.push_back({k, Subspace::span(block_diag(a.W(k).basis(), b.W(k).basis()))});

  std::vector<int> ps;
  for (const auto& s : a.hodge_steps()) ps.push_back(s.p);
  for (const auto& s : b.hodge_steps()) ps.push_back(s.p);
  std::sort(ps.begin(), ps.end(), std::greater<>());
  ps.erase(std::unique(ps.begin(), ps.end()), ps.end());
  std::vector<HodgeStep> f;
  for (int p : ps) f.push_back({p, Subspace::span(block_diag(a.F(p).basis(), b.F(p).basis()))});
  return MixedHodgeStructure(a.rank() + b.rank(), a.backend(), std::move(w), std::move(f));
}

}  // namespace mhs
