#include <doctest.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>

#include "mhs/cli/run.hpp"
#include "mhs/random/generators.hpp"
#include "support.hpp"

using mhs::cli::RunConfig;
using mhs::io::Json;

namespace {

std::string data(const std::string& name) { return std::string(MHS_TEST_DATA_DIR) + "/" + name; }

std::string scratch(const std::string& name) {
  const auto dir = std::filesystem::temp_directory_path() / "mhs_cli_tests";
  std::filesystem::create_directories(dir);
  return (dir / name).string();
}

std::string write_doc(const std::string& name, const Json& doc) {
  const std::string path = scratch(name);
  std::ofstream(path) << doc.dump();
  return path;
}

RunConfig config(const std::string& sub, const std::string& input = "") {
  RunConfig c;
  c.subcommand = sub;
  c.input = input;
  return c;
}

}  // namespace

TEST_SUITE("cli") {
  TEST_CASE("split lists the two Hodge pieces of the elliptic shape") {
    const auto r = mhs::cli::run(config("split", data("elliptic.json")));
    CHECK(r.exit_code == 0);
    const Json& pieces = r.report["result"]["splitting"];
    REQUIRE(pieces.size() == 2);
    CHECK(pieces[0]["p"] == 0);
    CHECK(pieces[0]["q"] == 1);
    CHECK(pieces[1]["p"] == 1);
    CHECK(pieces[1]["q"] == 0);
    CHECK(r.report["config"]["subcommand"] == "split");
    CHECK(r.report["status"] == "pass");
  }

  TEST_CASE("input errors exit with status 2 and name the field") {
    const auto bad = mhs::cli::run(config("validate", data("bad_scalar.json")));
    CHECK(bad.exit_code == 2);
    CHECK(bad.report["error"].get<std::string>().find("hodge[0].basis[0][1]") != std::string::npos);

    CHECK(mhs::cli::run(config("split", data("no_such_file.json"))).exit_code == 2);
    CHECK(mhs::cli::run(config("split")).exit_code == 2);

    Json missing = Json::parse(std::ifstream(data("worked_sequence.json")));
    missing.erase("g");
    const auto r = mhs::cli::run(config("ext-class", write_doc("missing_g.json", missing)));
    CHECK(r.exit_code == 2);
    CHECK(r.report["error"] == "g: missing field");

    auto tol = config("split", data("elliptic.json"));
    tol.tol_rank = 1e-6;
    CHECK(mhs::cli::run(tol).exit_code == 2);
    tol.backend = "float";
    CHECK(mhs::cli::run(tol).exit_code == 0);
  }

  TEST_CASE("validate reports failures with exit status 1") {
    CHECK(mhs::cli::run(config("validate", data("worked_sequence.json"))).exit_code == 0);
    Json broken = Json::parse(std::ifstream(data("worked_sequence.json")));
    broken["g"] = Json::array({Json::array({0, 2, 0}), Json::array({0, 0, 1})});
    const auto r = mhs::cli::run(config("validate", write_doc("broken.json", broken)));
    CHECK(r.exit_code == 1);
    CHECK(r.report["result"]["valid"] == false);
    CHECK(r.report["result"]["document"] == "sequence");
  }

  TEST_CASE("rsplit, dual and twist") {
    const auto family = mhs::random::weight_zero_two_family(testing::q("i"));
    const auto r = mhs::cli::run(config("rsplit", write_doc("family.json", mhs::io::to_json(family))));
    CHECK(r.exit_code == 0);
    CHECK(r.report["result"]["r_split"] == false);
    CHECK(r.report["result"]["witness"].is_object());
    CHECK(mhs::cli::run(config("rsplit", data("elliptic.json"))).report["result"]["r_split"] == true);

    const auto d = mhs::cli::run(config("dual", data("elliptic.json")));
    CHECK(mhs::io::mhs_from_json(d.report["result"]["dual"]) == mhs::dual(testing::elliptic()));
    const auto ds = mhs::cli::run(config("dual", data("worked_sequence.json")));
    CHECK(mhs::io::sequence_from_json(ds.report["result"]["dual"]).A.rank() == 2);

    auto t = config("twist", write_doc("z0.json", mhs::io::to_json(mhs::tate_structure(0))));
    t.twist = -1;
    const auto tw = mhs::cli::run(t);
    CHECK(mhs::io::mhs_from_json(tw.report["result"]["twisted"]) == mhs::tate_structure(-1));
    CHECK(tw.report["config"]["m"] == -1);
  }

  TEST_CASE("extension class and topological AJ of the worked sequence") {
    const auto e = mhs::cli::run(config("ext-class", data("worked_sequence.json")));
    CHECK(e.exit_code == 0);
    CHECK(e.report["result"]["class"]["is_zero"] == false);
    CHECK(e.report["result"]["class"]["canonical"]["coordinates"] == Json::parse(R"([["1/2"], ["0/1"]])"));

    auto t = config("taj", data("worked_sequence.json"));
    t.integral_class = {1, 0};
    const auto r = mhs::cli::run(t);
    CHECK(r.exit_code == 0);
    CHECK(r.report["result"]["value"]["point"] == Json::parse(R"([["1/2"]])"));
    t.integral_class = {2, 0};
    CHECK(mhs::cli::run(t).report["result"]["value"]["is_zero"] == true);
    t.integral_class = {1};
    CHECK(mhs::cli::run(t).exit_code == 2);
  }

  TEST_CASE("verify-identity on a document and as a sweep") {
    auto g = config("generate");
    g.seed = 4;
    const auto gen = mhs::cli::run(g);
    REQUIRE(gen.exit_code == 0);
    const std::string path = write_doc("pairing.json", gen.report["result"]["instance"]);
    const auto doc = mhs::cli::run(config("verify-identity", path));
    CHECK(doc.exit_code == 0);
    CHECK(doc.report["result"]["zero_residuals"] == doc.report["result"]["total"]);

    auto s = config("verify-identity");
    s.seed = 7;
    s.trials = 12;
    const auto sweep = mhs::cli::run(s);
    CHECK(sweep.exit_code == 0);
    CHECK(sweep.report["result"]["passed"] == 12);
    CHECK(sweep.report["result"]["trials"][3]["seed"] == 10);
    CHECK(mhs::cli::run(config("verify-identity")).exit_code == 2);
  }

  TEST_CASE("generate needs a seed and is reproducible") {
    CHECK(mhs::cli::run(config("generate")).exit_code == 2);
    for (const char* kind : {"pairing", "sequence", "mhs", "curve"}) {
      auto g = config("generate");
      g.seed = 11;
      g.kind = kind;
      const auto a = mhs::cli::run(g);
      CHECK(a.exit_code == 0);
      CHECK(a.report.dump() == mhs::cli::run(g).report.dump());
    }
    auto bad = config("generate");
    bad.seed = 1;
    bad.kind = "torus";
    CHECK(mhs::cli::run(bad).exit_code == 2);
  }

  TEST_CASE("curve-verify on the divisor files and as a sweep") {
    const auto r = mhs::cli::run(config("curve-verify", data("curve_divisor.json")));
    CHECK(r.exit_code == 0);
    CHECK(r.report["result"]["residual"].get<double>() < 1e-8);
    CHECK(r.report["result"]["lhs"] == Json::parse("[0.3, 0.2]"));
    CHECK(r.report["result"].contains("lattice_point"));
    const auto principal = mhs::cli::run(config("curve-verify", data("curve_principal.json")));
    CHECK(principal.exit_code == 0);
    CHECK(principal.report["result"]["aj_direct"]["is_zero"] == true);

    auto s = config("curve-verify");
    s.seed = 2;
    s.trials = 2;
    s.divisors = 3;
    const auto sweep = mhs::cli::run(s);
    CHECK(sweep.exit_code == 0);
    CHECK(sweep.report["result"]["tori"].size() == 2);
  }

  TEST_CASE("flags override environment variables") {
    const std::string out = scratch("env_report.json");
    setenv("MHS_SEED", "99", 1);
    setenv("MHS_TRIALS", "2", 1);
    std::vector<std::string> args{"mhstool", "verify-identity", "--seed", "5", "--out", out};
    std::vector<char*> argv;
    for (auto& a : args) argv.push_back(a.data());
    CHECK(mhs::cli::main_entry(static_cast<int>(argv.size()), argv.data()) == 0);
    unsetenv("MHS_SEED");
    unsetenv("MHS_TRIALS");
    const Json report = Json::parse(std::ifstream(out));
    CHECK(report["config"]["seed"] == 5);
    CHECK(report["config"]["trials"] == 2);
  }
}
