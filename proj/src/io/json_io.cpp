#include "mhs/io/json_io.hpp"

#include <cmath>
#include <optional>

#include "mhs/error.hpp"

namespace mhs::io {

namespace {

[[noreturn]] void schema_error(const std::string& path, const std::string& what) {
  throw Error(ErrorKind::schema, (path.empty() ? std::string("document") : path) + ": " + what);
}

std::string join(const std::string& path, const std::string& key) { return path.empty() ? key : path + "." + key; }
std::string index(const std::string& path, std::size_t i) { return path + "[" + std::to_string(i) + "]"; }

const Json& field(const Json& j, const std::string& path, const std::string& key) {
  if (!j.is_object()) schema_error(path, "expected object");
  const auto it = j.find(key);
  if (it == j.end()) schema_error(join(path, key), "missing field");
  return *it;
}

const Json& array(const Json& j, const std::string& path) {
  if (!j.is_array()) schema_error(path, "expected array");
  return j;
}

long integer(const Json& j, const std::string& path) {
  if (!j.is_number_integer()) schema_error(path, "expected integer");
  return j.get<long>();
}

double number(const Json& j, const std::string& path) {
  if (!j.is_number()) schema_error(path, "expected number");
  return j.get<double>();
}

bool boolean(const Json& j, const std::string& path) {
  if (!j.is_boolean()) schema_error(path, "expected boolean");
  return j.get<bool>();
}

Backend backend_from_json(const Json& j, const std::string& path) {
  if (!j.is_string()) schema_error(path, "expected \"exact\" or \"float\"");
  const auto s = j.get<std::string>();
  if (s == "exact") return Backend::exact();
  if (s == "float") return Backend::floating();
  schema_error(path, "unknown backend '" + s + "'");
}

std::string backend_name(const Backend& b) { return b.is_exact() ? "exact" : "float"; }

Json to_json(const Subspace& s) { return basis_to_json(s.basis()); }

}  // namespace

Json to_json(const Scalar& s) {
  if (s.is_exact()) return s.to_string();
  const auto z = s.to_complex();
  return Json::array({z.real(), z.imag()});
}

Scalar scalar_from_json(const Json& j, Backend backend, const std::string& path) {
  if (backend.is_exact()) {
    if (j.is_number_integer()) return Scalar::exact(mpq_class(j.get<long>()));
    if (!j.is_string()) schema_error(path, "expected exact scalar string");
    try {
      return Scalar::parse_exact(j.get<std::string>());
    } catch (const Error& e) {
      schema_error(path, e.what());
    }
  }
  if (j.is_number()) return Scalar::floating({j.get<double>(), 0.0});
  if (!j.is_array() || j.size() != 2) schema_error(path, "expected [re, im]");
  return Scalar::floating({number(j[0], index(path, 0)), number(j[1], index(path, 1))});
}

Json int_matrix_to_json(const Matrix& m) {
  Json rows = Json::array();
  for (std::size_t i = 0; i < m.rows(); ++i) {
    Json row = Json::array();
    for (std::size_t k = 0; k < m.cols(); ++k) row.push_back(m(i, k).re_q().get_num().get_si());
    rows.push_back(std::move(row));
  }
  return rows;
}

Matrix int_matrix_from_json(const Json& j, const std::string& path) {
  array(j, path);
  std::vector<std::vector<long>> rows;
  for (std::size_t i = 0; i < j.size(); ++i) {
    const Json& row = array(j[i], index(path, i));
    if (i > 0 && row.size() != rows.front().size()) schema_error(index(path, i), "ragged matrix row");
    std::vector<long> r;
    for (std::size_t k = 0; k < row.size(); ++k) r.push_back(integer(row[k], index(index(path, i), k)));
    rows.push_back(std::move(r));
  }
  if (rows.empty()) schema_error(path, "empty matrix");
  return Matrix::from_ints(rows);
}

Json matrix_to_json(const Matrix& m) {
  Json rows = Json::array();
  for (std::size_t i = 0; i < m.rows(); ++i) {
    Json row = Json::array();
    for (std::size_t k = 0; k < m.cols(); ++k) row.push_back(to_json(m(i, k)));
    rows.push_back(std::move(row));
  }
  return rows;
}

Matrix matrix_from_json(const Json& j, Backend backend, const std::string& path) {
  array(j, path);
  std::vector<std::vector<Scalar>> rows;
  for (std::size_t i = 0; i < j.size(); ++i) {
    const Json& row = array(j[i], index(path, i));
    if (i > 0 && row.size() != rows.front().size()) schema_error(index(path, i), "ragged matrix row");
    std::vector<Scalar> r;
    for (std::size_t k = 0; k < row.size(); ++k) r.push_back(scalar_from_json(row[k], backend, index(index(path, i), k)));
    rows.push_back(std::move(r));
  }
  if (rows.empty()) schema_error(path, "empty matrix");
  return Matrix::from_rows(rows, backend);
}

Json basis_to_json(const Matrix& basis) {
  Json cols = Json::array();
  for (std::size_t k = 0; k < basis.cols(); ++k) {
    Json c = Json::array();
    for (std::size_t i = 0; i < basis.rows(); ++i) c.push_back(to_json(basis(i, k)));
    cols.push_back(std::move(c));
  }
  return cols;
}

Subspace basis_from_json(const Json& j, std::size_t ambient, Backend backend, const std::string& path) {
  array(j, path);
  Matrix m(ambient, j.size(), backend);
  for (std::size_t k = 0; k < j.size(); ++k) {
    const Json& c = array(j[k], index(path, k));
    if (c.size() != ambient) {
      schema_error(index(path, k), "column has " + std::to_string(c.size()) + " entries, rank is " +
                                       std::to_string(ambient));
    }
    for (std::size_t i = 0; i < ambient; ++i) m(i, k) = scalar_from_json(c[i], backend, index(index(path, k), i));
  }
  return Subspace::span(m);
}

Json to_json(const MixedHodgeStructure& h) {
  Json w = Json::array();
  for (const auto& s : h.weight_steps()) w.push_back({{"k", s.k}, {"basis", to_json(s.space)}});
  Json f = Json::array();
  for (const auto& s : h.hodge_steps()) f.push_back({{"p", s.p}, {"basis", to_json(s.space)}});
  return {{"rank", h.rank()}, {"backend", backend_name(h.backend())}, {"weights", w}, {"hodge", f}};
}

MixedHodgeStructure mhs_from_json(const Json& j, const std::string& path) {
  const long rank = integer(field(j, path, "rank"), join(path, "rank"));
  if (rank < 0) schema_error(join(path, "rank"), "negative rank");
  const auto n = static_cast<std::size_t>(rank);
  const Backend backend =
      j.contains("backend") ? backend_from_json(j["backend"], join(path, "backend")) : Backend::exact();

  const std::string wpath = join(path, "weights");
  const Json& wj = array(field(j, path, "weights"), wpath);
  std::vector<WeightStep> weights;
  for (std::size_t i = 0; i < wj.size(); ++i) {
    const std::string p = index(wpath, i);
    const int k = static_cast<int>(integer(field(wj[i], p, "k"), join(p, "k")));
    if (!weights.empty() && k <= weights.back().k) schema_error(join(p, "k"), "weights must be strictly ascending");
    weights.push_back({k, basis_from_json(field(wj[i], p, "basis"), n, backend, join(p, "basis"))});
  }

  const std::string fpath = join(path, "hodge");
  const Json& fj = array(field(j, path, "hodge"), fpath);
  std::vector<HodgeStep> hodge;
  for (std::size_t i = 0; i < fj.size(); ++i) {
    const std::string p = index(fpath, i);
    const int idx = static_cast<int>(integer(field(fj[i], p, "p"), join(p, "p")));
    if (!hodge.empty() && idx >= hodge.back().p) schema_error(join(p, "p"), "hodge steps must be strictly descending");
    hodge.push_back({idx, basis_from_json(field(fj[i], p, "basis"), n, backend, join(p, "basis"))});
  }
  return MixedHodgeStructure(n, backend, std::move(weights), std::move(hodge));
}

Json to_json(const ExtensionSequence& s) {
  return {{"A", to_json(s.A)},
          {"E", to_json(s.E)},
          {"B", to_json(s.B)},
          {"f", int_matrix_to_json(s.f)},
          {"g", int_matrix_to_json(s.g)}};
}

ExtensionSequence sequence_from_json(const Json& j, const std::string& path) {
  ExtensionSequence s{mhs_from_json(field(j, path, "A"), join(path, "A")),
                      mhs_from_json(field(j, path, "E"), join(path, "E")),
                      mhs_from_json(field(j, path, "B"), join(path, "B")),
                      int_matrix_from_json(field(j, path, "f"), join(path, "f")),
                      int_matrix_from_json(field(j, path, "g"), join(path, "g"))};
  if (s.f.rows() != s.E.rank() || s.f.cols() != s.A.rank()) {
    schema_error(join(path, "f"), "expected " + std::to_string(s.E.rank()) + " x " + std::to_string(s.A.rank()));
  }
  if (s.g.rows() != s.B.rank() || s.g.cols() != s.E.rank()) {
    schema_error(join(path, "g"), "expected " + std::to_string(s.B.rank()) + " x " + std::to_string(s.E.rank()));
  }
  return s;
}

Json to_json(const SequencePairing& p) {
  Json j = to_json(p.S);
  j["P"] = int_matrix_to_json(p.P);
  j["partner"] = to_json(p.partner);
  return j;
}

SequencePairing pairing_from_json(const Json& j, const std::string& path) {
  SequencePairing p{sequence_from_json(j, path), sequence_from_json(field(j, path, "partner"), join(path, "partner")),
                    int_matrix_from_json(field(j, path, "P"), join(path, "P"))};
  if (p.P.rows() != p.S.E.rank() || p.P.cols() != p.partner.E.rank()) {
    schema_error(join(path, "P"),
                 "expected " + std::to_string(p.S.E.rank()) + " x " + std::to_string(p.partner.E.rank()));
  }
  return p;
}

Json to_json(const HodgeNumbers& h) {
  Json out = Json::array();
  for (const auto& [pq, n] : h) out.push_back({{"p", pq.first}, {"q", pq.second}, {"n", n}});
  return out;
}

HodgeNumbers hodge_numbers_from_json(const Json& j, const std::string& path) {
  array(j, path);
  HodgeNumbers h;
  for (std::size_t i = 0; i < j.size(); ++i) {
    const std::string p = index(path, i);
    const int hp = static_cast<int>(integer(field(j[i], p, "p"), join(p, "p")));
    const int hq = static_cast<int>(integer(field(j[i], p, "q"), join(p, "q")));
    const long n = integer(field(j[i], p, "n"), join(p, "n"));
    if (n < 0) schema_error(join(p, "n"), "negative Hodge number");
    if (n > 0) h[{hp, hq}] = static_cast<std::size_t>(n);
  }
  return h;
}

Json to_json(const DeligneSplitting& split) {
  Json out = Json::array();
  for (const auto& [pq, piece] : split) {
    out.push_back({{"p", pq.first}, {"q", pq.second}, {"dim", piece.dim()}, {"basis", to_json(piece)}});
  }
  return out;
}

Json to_json(const TorusElement& t) {
  const auto c = t.canonical();
  return {{"kind", to_string(t.kind())},
          {"ambient", t.ambient()},
          {"representative", matrix_to_json(t.representative())},
          {"point", matrix_to_json(t.point())},
          {"lattice", matrix_to_json(t.lattice())},
          {"canonical", {{"coordinates", matrix_to_json(c.coordinates)}, {"transverse", matrix_to_json(c.transverse)}}},
          {"is_zero", t.is_zero()}};
}

Json to_json(const random::GeneratorSpec& spec) {
  return {{"seed", spec.seed},
          {"hodge_a", to_json(spec.hodge_a)},
          {"hodge_b", to_json(spec.hodge_b)},
          {"height", spec.height},
          {"backend", backend_name(spec.backend)},
          {"scramble", spec.scramble},
          {"scramble_partner", spec.scramble_partner}};
}

random::GeneratorSpec spec_from_json(const Json& j, const std::string& path) {
  if (!j.is_object()) schema_error(path, "expected object");
  random::GeneratorSpec spec;
  if (j.contains("seed")) {
    const Json& s = j["seed"];
    if (!s.is_number_unsigned() && !(s.is_number_integer() && s.get<long>() >= 0)) {
      schema_error(join(path, "seed"), "expected non-negative integer");
    }
    spec.seed = s.get<std::uint64_t>();
  }
  if (j.contains("hodge_a")) spec.hodge_a = hodge_numbers_from_json(j["hodge_a"], join(path, "hodge_a"));
  if (j.contains("hodge_b")) spec.hodge_b = hodge_numbers_from_json(j["hodge_b"], join(path, "hodge_b"));
  if (j.contains("height")) spec.height = static_cast<int>(integer(j["height"], join(path, "height")));
  if (j.contains("backend")) spec.backend = backend_from_json(j["backend"], join(path, "backend"));
  if (j.contains("scramble")) spec.scramble = boolean(j["scramble"], join(path, "scramble"));
  if (j.contains("scramble_partner")) {
    spec.scramble_partner = boolean(j["scramble_partner"], join(path, "scramble_partner"));
  }
  const auto report = random::validate_spec(spec);
  if (!report.ok()) schema_error(path, report.failures.front());
  return spec;
}

Json to_json(curve::Complex z) { return Json::array({z.real(), z.imag()}); }

curve::Complex complex_from_json(const Json& j, const std::string& path) {
  if (!j.is_array() || j.size() != 2) schema_error(path, "expected [re, im]");
  return {number(j[0], index(path, 0)), number(j[1], index(path, 1))};
}

Json to_json(const curve::ComplexTorus& t, const curve::DivisorZero& d) {
  Json pairs = Json::array();
  for (const auto& [p, q] : d.pairs) pairs.push_back(Json::array({to_json(p), to_json(q)}));
  return {{"omega1", to_json(t.omega1())}, {"omega2", to_json(t.omega2())}, {"pairs", pairs}};
}

CurveInput curve_from_json(const Json& j, const std::string& path) {
  const curve::Complex w1 = complex_from_json(field(j, path, "omega1"), join(path, "omega1"));
  const curve::Complex w2 = complex_from_json(field(j, path, "omega2"), join(path, "omega2"));
  std::optional<curve::ComplexTorus> torus;
  try {
    torus.emplace(w1, w2);
  } catch (const Error& e) {
    schema_error(join(path, "omega2"), e.what());
  }
  const std::string ppath = join(path, "pairs");
  const Json& pj = array(field(j, path, "pairs"), ppath);
  curve::DivisorZero d;
  for (std::size_t i = 0; i < pj.size(); ++i) {
    const std::string p = index(ppath, i);
    if (!pj[i].is_array() || pj[i].size() != 2) schema_error(p, "expected [p, q]");
    d.pairs.push_back({complex_from_json(pj[i][0], index(p, 0)), complex_from_json(pj[i][1], index(p, 1))});
  }
  return {*torus, d};
}

MixedHodgeStructure with_backend(const MixedHodgeStructure& h, Backend backend) {
  if (backend.is_exact()) {
    if (!h.backend().is_exact()) throw Error(ErrorKind::invalid_input, "cannot convert a float structure to exact");
    return h;
  }
  return h.to_floating(backend.rank_tol);
}

ExtensionSequence with_backend(const ExtensionSequence& s, Backend backend) {
  return {with_backend(s.A, backend), with_backend(s.E, backend), with_backend(s.B, backend), s.f, s.g};
}

SequencePairing with_backend(const SequencePairing& p, Backend backend) {
  return {with_backend(p.S, backend), with_backend(p.partner, backend), p.P};
}

}  // namespace mhs::io
