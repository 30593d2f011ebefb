#include "mhs/cli/run.hpp"

#include <CLI11.hpp>
#include <fstream>
#include <iostream>
#include <sstream>

#include "mhs/error.hpp"
#include "mhs/ext/extension.hpp"
#include "mhs/sweep/sweep.hpp"

namespace mhs::cli {

namespace {

using io::Json;

struct InputError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

enum class DocKind { mhs, sequence, pairing, curve };

DocKind detect(const Json& doc) {
  if (!doc.is_object()) throw Error(ErrorKind::schema, "document: expected object");
  if (doc.contains("partner")) return DocKind::pairing;
  if (doc.contains("E")) return DocKind::sequence;
  if (doc.contains("omega1")) return DocKind::curve;
  return DocKind::mhs;
}

const char* name(DocKind k) {
  switch (k) {
    case DocKind::mhs: return "mhs";
    case DocKind::sequence: return "sequence";
    case DocKind::pairing: return "pairing";
    case DocKind::curve: return "curve";
  }
  return "";
}

Json read_input(const RunConfig& c) {
  if (c.input.empty()) throw InputError(c.subcommand + " needs --input");
  std::ifstream in(c.input);
  if (!in) throw InputError("cannot read input '" + c.input + "'");
  try {
    return Json::parse(in);
  } catch (const Json::parse_error& e) {
    throw InputError("input '" + c.input + "' is not valid JSON: " + e.what());
  }
}

Backend backend_of(const RunConfig& c) {
  return c.backend == "exact" ? Backend::exact() : Backend::floating(c.tol_rank.value_or(1e-9));
}

double torus_tolerance(const RunConfig& c) { return c.tol_torus.value_or(1e-7); }

TorusElement retolerance(const TorusElement& t, const RunConfig& c) {
  return TorusElement(t.kind(), t.ambient(), t.representative(), t.lattice(), t.point(), torus_tolerance(c));
}

MixedHodgeStructure load_mhs(const RunConfig& c, const Json& doc) {
  return io::with_backend(io::mhs_from_json(doc), backend_of(c));
}
ExtensionSequence load_sequence(const RunConfig& c, const Json& doc) {
  return io::with_backend(io::sequence_from_json(doc), backend_of(c));
}
SequencePairing load_pairing(const RunConfig& c, const Json& doc) {
  return io::with_backend(io::pairing_from_json(doc), backend_of(c));
}

Json report_json(const ValidationReport& r) { return {{"valid", r.ok()}, {"failures", r.failures}}; }

Json bidegree(const Bidegree& pq) { return {{"p", pq.first}, {"q", pq.second}}; }

void require_seed(const RunConfig& c) {
  if (!c.seed) throw InputError(c.subcommand + " needs --seed");
}

Matrix unit(std::size_t n, std::size_t i) { return Matrix::identity(n).col(i); }

RunResult cmd_validate(const RunConfig& c) {
  const Json doc = read_input(c);
  const DocKind kind = detect(doc);
  ValidationReport r;
  switch (kind) {
    case DocKind::mhs: r = validate(load_mhs(c, doc)); break;
    case DocKind::sequence: r = validate_sequence(load_sequence(c, doc)); break;
    case DocKind::pairing: r = validate_pairing(load_pairing(c, doc)); break;
    case DocKind::curve: {
      const auto in = io::curve_from_json(doc);
      r = curve::validate_divisor(curve::normalized(in.divisor, in.torus), in.torus);
      break;
    }
  }
  Json result = report_json(r);
  result["document"] = name(kind);
  return {r.ok() ? ExitCode::ok : ExitCode::verification_failed, result,
          std::string(name(kind)) + (r.ok() ? " valid" : " invalid: " + r.failures.front())};
}

RunResult cmd_split(const RunConfig& c) {
  const auto h = load_mhs(c, read_input(c));
  const auto split = deligne_splitting(h);
  const auto check = check_splitting(h, split);
  Json result{{"splitting", io::to_json(split)}, {"hodge_numbers", io::to_json(hodge_numbers(h))},
              {"identities", report_json(check)}};
  std::ostringstream s;
  s << split.size() << " nonzero pieces" << (check.ok() ? "" : ", identity check FAILED");
  return {check.ok() ? ExitCode::ok : ExitCode::verification_failed, result, s.str()};
}

RunResult cmd_rsplit(const RunConfig& c) {
  const Json doc = read_input(c);
  const DocKind kind = detect(doc);
  MixedHodgeStructure h;
  if (kind == DocKind::mhs) {
    h = load_mhs(c, doc);
  } else if (kind == DocKind::sequence) {
    h = load_sequence(c, doc).E;
  } else {
    throw InputError("rsplit expects an MHS or a sequence document");
  }
  const auto r = r_split_test(h);
  Json result{{"r_split", r.r_split}, {"witness", r.r_split ? Json(nullptr) : bidegree(r.witness)}};
  std::string summary = r.r_split ? "R-split" : "not R-split";
  if (!r.r_split) summary += " (witness I^{" + std::to_string(r.witness.first) + "," + std::to_string(r.witness.second) + "})";
  return {ExitCode::ok, result, summary};
}

RunResult cmd_dual(const RunConfig& c) {
  const Json doc = read_input(c);
  const DocKind kind = detect(doc);
  if (kind == DocKind::mhs) return {ExitCode::ok, {{"dual", io::to_json(dual(load_mhs(c, doc)))}}, "dual structure"};
  if (kind == DocKind::sequence) {
    return {ExitCode::ok, {{"dual", io::to_json(dual_sequence(load_sequence(c, doc)))}}, "dual sequence"};
  }
  throw InputError("dual expects an MHS or a sequence document");
}

RunResult cmd_twist(const RunConfig& c) {
  const auto h = load_mhs(c, read_input(c));
  return {ExitCode::ok, {{"m", c.twist}, {"twisted", io::to_json(tate_twist(h, c.twist))}},
          "Tate twist by " + std::to_string(c.twist)};
}

RunResult cmd_ext_class(const RunConfig& c) {
  const auto s = load_sequence(c, read_input(c));
  const Matrix sz = integral_section(s);
  const Matrix sf = hodge_section(s);
  const TorusElement cls = retolerance(carlson_class(s, sz), c);
  Json result{{"class", io::to_json(cls)},
              {"integral_section", io::matrix_to_json(sz)},
              {"hodge_section", io::matrix_to_json(sf)},
              {"representative", io::matrix_to_json(integral_retraction_of_f(s) * (sf - sz))}};
  return {ExitCode::ok, result, cls.is_zero() ? "extension class is zero" : "extension class is nonzero"};
}

RunResult cmd_taj(const RunConfig& c) {
  const auto s = load_sequence(c, read_input(c));
  if (c.integral_class.size() != s.B.rank()) {
    throw InputError("--class needs " + std::to_string(s.B.rank()) + " integers, got " +
                     std::to_string(c.integral_class.size()));
  }
  Matrix b(s.B.rank(), 1);
  for (std::size_t i = 0; i < b.rows(); ++i) b(i, 0) = Scalar::exact(mpq_class(c.integral_class[i]));
  const TorusElement value = retolerance(topological_aj(s, b), c);
  Json result{{"class", c.integral_class},
              {"value", io::to_json(value)},
              {"map", io::matrix_to_json(topological_aj_map(s))},
              {"real_section", io::matrix_to_json(deligne_real_section(s))}};
  return {ExitCode::ok, result, value.is_zero() ? "topological AJ value is zero" : "topological AJ value is nonzero"};
}

RunResult cmd_verify_identity(const RunConfig& c) {
  if (!c.input.empty()) {
    const auto p = load_pairing(c, read_input(c));
    Json checks = Json::array();
    std::size_t zero = 0, total = 0;
    for (std::size_t i = 0; i < p.S.B.rank(); ++i) {
      for (std::size_t j = 0; j < p.partner.B.rank(); ++j) {
        const auto check = verify_main_identity(p, unit(p.S.B.rank(), i), unit(p.partner.B.rank(), j));
        const TorusElement residual = retolerance(check.residual, c);
        const bool holds = residual.is_zero();
        zero += holds;
        ++total;
        checks.push_back({{"omega", i},
                          {"alpha", j},
                          {"lhs", io::to_json(check.lhs)},
                          {"rhs", io::to_json(check.rhs)},
                          {"residual", io::to_json(residual)},
                          {"zero", holds}});
      }
    }
    const bool pass = zero == total;
    return {pass ? ExitCode::ok : ExitCode::verification_failed,
            {{"checks", checks}, {"total", total}, {"zero_residuals", zero}},
            std::to_string(zero) + "/" + std::to_string(total) + " residual zero"};
  }
  require_seed(c);
  const auto trials = sweep::identity_sweep(*c.seed, c.trials, sweep::Execution::parallel, backend_of(c));
  Json rows = Json::array();
  std::size_t passed = 0;
  for (const auto& t : trials) {
    passed += t.passed();
    rows.push_back({{"seed", t.seed},
                    {"pairing_valid", t.pairing_valid},
                    {"checks", t.checks},
                    {"zero_residuals", t.zero_residuals},
                    {"error", t.error},
                    {"passed", t.passed()}});
  }
  const bool pass = passed == trials.size();
  return {pass ? ExitCode::ok : ExitCode::verification_failed,
          {{"trials", rows}, {"total", trials.size()}, {"passed", passed}},
          std::to_string(passed) + "/" + std::to_string(trials.size()) + " residual zero"};
}

RunResult cmd_generate(const RunConfig& c) {
  require_seed(c);
  random::GeneratorSpec spec;
  if (!c.input.empty()) spec = io::spec_from_json(read_input(c));
  spec.seed = *c.seed;
  spec.backend = backend_of(c);
  Json result{{"kind", c.kind}};
  if (c.kind == "pairing" || c.kind == "sequence") {
    const auto p = random::random_paired_instance(spec);
    result["spec"] = io::to_json(spec);
    result["instance"] = c.kind == "pairing" ? io::to_json(p) : io::to_json(p.S);
  } else if (c.kind == "mhs") {
    const auto built = random::random_mhs(*c.seed);
    result["instance"] = io::to_json(io::with_backend(built.mhs, backend_of(c)));
    result["splitting"] = io::to_json(built.splitting);
  } else if (c.kind == "curve") {
    random::Rng rng(*c.seed);
    const auto t = random::random_torus(rng);
    std::uniform_int_distribution<std::size_t> pairs(1, 3);
    result["instance"] = io::to_json(t, random::random_divisor(rng, t, pairs(rng)));
  } else {
    throw InputError("unknown --kind '" + c.kind + "' (pairing, sequence, mhs, curve)");
  }
  return {ExitCode::ok, result, "generated " + c.kind + " for seed " + std::to_string(*c.seed)};
}

RunResult cmd_curve_verify(const RunConfig& c) {
  sweep::CurveTolerances tol;
  tol.residual = torus_tolerance(c);
  if (!c.input.empty()) {
    const auto in = io::curve_from_json(read_input(c));
    curve::PeriodOptions opts;
    opts.seed = c.seed.value_or(0);
    const auto r = curve::verify_curve_identity(in.divisor, in.torus, opts);
    const auto closed = curve::closed_form_periods(in.divisor, in.torus);
    const auto eta = curve::quasi_periods(in.torus);
    const double legendre = curve::legendre_residual(in.torus, eta);
    double gap = 0.0;
    for (int k = 0; k < 2; ++k) gap = std::max(gap, curve::distance_mod_two_pi_i(r.periods.periods[k], closed[k]));
    const bool pass = r.residual < tol.residual && gap < tol.period && legendre < tol.legendre;
    Json result{{"lhs", io::to_json(r.lhs)},
                {"rhs", io::to_json(r.rhs)},
                {"lattice_point", io::to_json(r.lattice_point)},
                {"lattice_coefficients", r.lattice_coefficients},
                {"residual", r.residual},
                {"periods", {io::to_json(r.periods.periods[0]), io::to_json(r.periods.periods[1])}},
                {"cycle_base_points", {io::to_json(r.periods.base_points[0]), io::to_json(r.periods.base_points[1])}},
                {"closed_form_periods", {io::to_json(closed[0]), io::to_json(closed[1])}},
                {"period_gap", gap},
                {"quasi_periods", {io::to_json(eta.eta1), io::to_json(eta.eta2)}},
                {"legendre_residual", legendre},
                {"eta", {{"a", io::to_json(r.eta.a)}, {"b", io::to_json(r.eta.b)}}},
                {"aj_direct", io::to_json(curve::aj_direct(in.divisor, in.torus))},
                {"passed", pass}};
    std::ostringstream s;
    s << "curve identity residual " << r.residual << (pass ? " (pass)" : " (FAIL)");
    return {pass ? ExitCode::ok : ExitCode::verification_failed, result, s.str()};
  }
  require_seed(c);
  const auto trials = sweep::curve_sweep(*c.seed, c.trials, c.divisors, sweep::Execution::parallel);
  Json rows = Json::array();
  std::size_t passed = 0;
  double worst = 0.0;
  for (const auto& t : trials) {
    passed += t.passed(tol);
    worst = std::max(worst, t.max_residual());
    rows.push_back({{"seed", t.seed},
                    {"omega1", io::to_json(t.omega1)},
                    {"omega2", io::to_json(t.omega2)},
                    {"divisors", t.cases.size()},
                    {"legendre_residual", t.legendre},
                    {"max_residual", t.max_residual()},
                    {"max_period_gap", t.max_period_gap()},
                    {"error", t.error},
                    {"passed", t.passed(tol)}});
  }
  const bool pass = passed == trials.size();
  std::ostringstream s;
  s << passed << "/" << trials.size() << " tori pass, worst residual " << worst;
  return {pass ? ExitCode::ok : ExitCode::verification_failed,
          {{"tori", rows}, {"total", trials.size()}, {"passed", passed}}, s.str()};
}

void check_config(const RunConfig& c) {
  if (c.backend != "exact" && c.backend != "float") throw InputError("--backend must be exact or float");
  if (c.backend == "exact" && c.tol_rank) throw InputError("--tol-rank applies to the float backend only");
  if (c.backend == "exact" && c.tol_torus && c.subcommand != "curve-verify") {
    throw InputError("--tol-torus applies to the float backend only");
  }
  if (c.tol_rank && !(*c.tol_rank > 0.0)) throw InputError("--tol-rank must be positive");
  if (c.tol_torus && !(*c.tol_torus > 0.0)) throw InputError("--tol-torus must be positive");
  if (c.trials == 0) throw InputError("--trials must be at least 1");
}

}  // namespace

io::Json config_to_json(const RunConfig& c) {
  Json j{{"subcommand", c.subcommand},
         {"input", c.input.empty() ? Json(nullptr) : Json(c.input)},
         {"backend", c.backend},
         {"tol_rank", c.tol_rank ? Json(*c.tol_rank) : Json(nullptr)},
         {"tol_torus", c.tol_torus ? Json(*c.tol_torus) : Json(nullptr)},
         {"seed", c.seed ? Json(*c.seed) : Json(nullptr)},
         {"trials", c.trials},
         {"out", c.out.empty() ? Json("-") : Json(c.out)}};
  if (c.subcommand == "twist") j["m"] = c.twist;
  if (c.subcommand == "taj") j["class"] = c.integral_class;
  if (c.subcommand == "generate") j["kind"] = c.kind;
  if (c.subcommand == "curve-verify") j["divisors"] = c.divisors;
  return j;
}

RunResult run(const RunConfig& c) {
  RunResult r;
  try {
    check_config(c);
    const std::string& s = c.subcommand;
    if (s == "validate") r = cmd_validate(c);
    else if (s == "split") r = cmd_split(c);
    else if (s == "rsplit") r = cmd_rsplit(c);
    else if (s == "dual") r = cmd_dual(c);
    else if (s == "twist") r = cmd_twist(c);
    else if (s == "ext-class") r = cmd_ext_class(c);
    else if (s == "taj") r = cmd_taj(c);
    else if (s == "verify-identity") r = cmd_verify_identity(c);
    else if (s == "generate") r = cmd_generate(c);
    else if (s == "curve-verify") r = cmd_curve_verify(c);
    else throw InputError("unknown subcommand '" + s + "'");
    r.report = {{"result", r.report}, {"status", r.exit_code == ExitCode::ok ? "pass" : "fail"}};
  } catch (const InputError& e) {
    r = {ExitCode::input_error, {{"status", "error"}, {"error", e.what()}}, std::string("error: ") + e.what()};
  } catch (const Error& e) {
    const bool internal = e.kind() == ErrorKind::internal_consistency;
    r = {internal ? ExitCode::verification_failed : ExitCode::input_error,
         {{"status", internal ? "fail" : "error"}, {"error", e.what()}},
         std::string(internal ? "failure: " : "error: ") + e.what()};
  } catch (const std::exception& e) {
    r = {ExitCode::input_error, {{"status", "error"}, {"error", e.what()}}, std::string("error: ") + e.what()};
  }
  r.report["config"] = config_to_json(c);
  return r;
}

int main_entry(int argc, char** argv) {
  CLI::App app{"Mixed Hodge structures, extension classes and Abel-Jacobi checks"};
  app.require_subcommand(1);
  app.fallthrough();
  RunConfig c;
  app.add_option("--input", c.input, "Input JSON document")->envname("MHS_INPUT");
  app.add_option("--backend", c.backend, "exact or float")->envname("MHS_BACKEND");
  app.add_option("--tol-rank", c.tol_rank, "Rank threshold (float backend)")->envname("MHS_TOL_RANK");
  app.add_option("--tol-torus", c.tol_torus, "Torus equality / residual tolerance")->envname("MHS_TOL_TORUS");
  app.add_option("--seed", c.seed, "Seed for generated instances")->envname("MHS_SEED");
  app.add_option("--trials", c.trials, "Number of generated trials")->envname("MHS_TRIALS");
  app.add_option("--out", c.out, "Report path (default: standard output)")->envname("MHS_OUT");

  app.add_subcommand("validate", "Validate an MHS, sequence, pairing or divisor document");
  app.add_subcommand("split", "Deligne splitting and Hodge numbers");
  app.add_subcommand("rsplit", "R-split test with a witness bidegree");
  app.add_subcommand("dual", "Dual structure or dual sequence");
  app.add_subcommand("twist", "Tate twist")->add_option("--m", c.twist, "Twist by Z(m)")->required();
  app.add_subcommand("ext-class", "Carlson extension class");
  app.add_subcommand("taj", "Topological Abel-Jacobi value of an integral class")
      ->add_option("--class", c.integral_class, "Integral class in B, comma separated")
      ->delimiter(',')
      ->required();
  app.add_subcommand("verify-identity", "Pairing identity on a document or on generated instances");
  app.add_subcommand("generate", "Generate a random instance")->add_option("--kind", c.kind, "pairing, sequence, mhs or curve");
  app.add_subcommand("curve-verify", "Curve identity on a divisor document or on random tori")
      ->add_option("--divisors", c.divisors, "Divisors per random torus");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e) == 0 ? ExitCode::ok : ExitCode::input_error;
  }
  c.subcommand = app.get_subcommands().front()->get_name();

  const RunResult r = run(c);
  const std::string text = r.report.dump(2) + "\n";
  if (c.out.empty() || c.out == "-") {
    std::cout << text;
  } else {
    std::ofstream out(c.out);
    if (!out || !(out << text)) {
      std::cerr << "error: cannot write report to '" << c.out << "'\n";
      return ExitCode::input_error;
    }
  }
  std::cerr << c.subcommand << ": " << r.summary << "\n";
  return r.exit_code;
}

}  // namespace mhs::cli
