#include "doctest.h"

#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "finkquad/cli.hpp"
#include "json.hpp"

using finkquad::Error;
using finkquad::KernelVariant;
using finkquad::NodePreset;
using finkquad::Rational;
using finkquad::RuleVariant;
using nlohmann::json;
namespace cli = finkquad::cli;

namespace {

struct RunOutcome {
  int code = 0;
  std::string out;
};

RunOutcome run_cli(const std::vector<std::string>& args) {
  cli::RunConfig cfg = cli::parse_args(args);
  std::ostringstream ss;
  RunOutcome r;
  r.code = cli::run(cfg, ss);
  r.out = ss.str();
  return r;
}

json run_json(const std::vector<std::string>& args, int expect_code) {
  RunOutcome r = run_cli(args);
  REQUIRE(r.code == expect_code);
  return json::parse(r.out);
}

}  // namespace

TEST_CASE("argument parsing: defaults and full flag set") {
  cli::RunConfig d = cli::parse_args({"verify"});
  CHECK(d.command == "verify");
  CHECK(d.n == 1);
  CHECK(d.a == Rational(0));
  CHECK(d.b == Rational(1));
  CHECK(!d.x.has_value());
  CHECK(!d.node.has_value());
  CHECK(d.variant == RuleVariant::G);
  CHECK(d.kernel == KernelVariant::Canonical);
  CHECK(std::isinf(d.p));
  CHECK(!d.q.has_value());
  CHECK(d.panels.empty());

  cli::RunConfig c = cli::parse_args({"quad", "--fn", "exp:1", "--n", "3", "--x=-1/4",
                                      "--a=-1", "--b", "2", "--variant", "TF", "--kernel",
                                      "printed", "--p", "2", "--q", "2", "--panels",
                                      "4,8,16", "--tol", "1e-8", "--seq", "power:0"});
  CHECK(c.n == 3);
  CHECK(c.a == Rational(-1));
  CHECK(c.b == Rational(2));
  REQUIRE(c.x.has_value());
  CHECK(*c.x == Rational(-1, 4));
  CHECK(c.variant == RuleVariant::TF);
  CHECK(c.kernel == KernelVariant::Printed);
  CHECK(c.p == 2.0);
  CHECK(c.panels == std::vector<long>({4, 8, 16}));
  CHECK(c.tol == 1e-8);
  CHECK(c.seq_spec == "power:0");

  CHECK(cli::parse_args({"verify", "--node", "quarter"}).node == NodePreset::Quarter);
  CHECK(cli::parse_args({"verify", "--x", "0.25"}).x == Rational(1, 4));

  CHECK_THROWS_AS(cli::parse_args({"frobnicate"}), Error);
  CHECK_THROWS_AS(cli::parse_args({"verify", "--variant", "H"}), Error);
  CHECK_THROWS_AS(cli::parse_args({"verify", "--kernel", "classic"}), Error);
  CHECK_THROWS_AS(cli::parse_args({"verify", "--node", "center"}), Error);
  CHECK_THROWS_AS(cli::parse_args({"verify", "--x", "one"}), Error);
  CHECK_THROWS_AS(cli::parse_args({"verify", "--panels", "4,0"}), Error);
  CHECK_THROWS_AS(cli::parse_args({"verify", "--tol", "-1"}), Error);
  CHECK_THROWS_AS(cli::parse_args({}), Error);
}

TEST_CASE("verify: exact zero residual on the catalog example") {
  json j = run_json({"verify", "--fn", "poly:0,0,1", "--n", "2", "--x", "0"}, 0);
  CHECK(j["schema"] == "finkquad-report/1");
  CHECK(j["command"] == "verify");
  CHECK(j["config"]["fn"] == "poly:0,0,1");
  REQUIRE(j["cases"].size() == 1);
  const json& c = j["cases"][0];
  CHECK(c["x"] == "0/1");
  CHECK(c["exact"] == true);
  CHECK(c["residual"] == "0/1");
  CHECK(c["residual_numeric"].is_null());
  CHECK(c["pass"] == true);
  CHECK(j["all_pass"] == true);
}

TEST_CASE("verify: printed kernel reports the frozen residue and fails") {
  json j = run_json(
      {"verify", "--fn", "poly:0,0,1", "--n", "2", "--x", "0", "--kernel", "printed"}, 1);
  CHECK(j["cases"][0]["residual"] == "-1/8");
  CHECK(j["cases"][0]["pass"] == false);
  CHECK(j["all_pass"] == false);
}

TEST_CASE("verify: all three presets run when no node is given") {
  json j = run_json({"verify", "--fn", "poly:0,0,1", "--n", "2"}, 0);
  REQUIRE(j["cases"].size() == 3);
  CHECK(j["cases"][0]["node"] == "left");
  CHECK(j["cases"][1]["node"] == "quarter");
  CHECK(j["cases"][2]["node"] == "midpoint");
  for (const json& c : j["cases"]) CHECK(c["pass"] == true);

  json tf = run_json({"verify", "--fn", "poly:1,0,2,1/2", "--n", "3", "--variant", "TF"}, 0);
  for (const json& c : tf["cases"]) {
    CHECK(!c["seq"].is_null());
    CHECK(c["pass"] == true);
  }
}

TEST_CASE("verify: numeric path for the transcendental catalog") {
  json j = run_json({"verify", "--fn", "exp:1", "--n", "2", "--x", "1/4"}, 0);
  const json& c = j["cases"][0];
  CHECK(c["exact"] == false);
  CHECK(c["residual"].is_null());
  CHECK(std::fabs(c["residual_numeric"].get<double>()) <= 1e-10);
}

TEST_CASE("quad: frozen result plus composite refinement") {
  json j = run_json({"quad", "--fn", "poly:0,0,1", "--n", "2", "--x", "0"}, 0);
  CHECK(j["result"]["value"].get<double>() == doctest::Approx(0.375));
  CHECK(j["result"]["value_exact"] == "3/8");
  CHECK(j["result"]["remainder_exact"] == "-1/24");
  CHECK(j["reference_integral_exact"] == "1/3");
  CHECK(j["composite"].is_null());

  json p = run_json({"quad", "--fn", "poly:0,1", "--n", "2", "--x", "0", "--panels",
                     "4,8,16"}, 0);
  REQUIRE(p["composite"]["table"].size() == 3);
  CHECK(p["composite"]["order"]["exact"] == true);  // degree below n: zero remainder

  json s = run_json({"quad", "--fn", "poly:0,0,1", "--n", "2", "--x", "0", "--panels",
                     "4,8,16"}, 0);
  CHECK(s["composite"]["order"]["slope"].get<double>() == doctest::Approx(2.0).epsilon(1e-6));

  json e = run_json({"quad", "--fn", "exp:1", "--n", "1", "--node", "midpoint",
                     "--panels", "4,8,16,32"}, 0);
  CHECK(e["reference_integral"].get<double>() ==
        doctest::Approx(std::exp(1.0) - 1.0).epsilon(1e-12));
  double slope = e["composite"]["order"]["slope"].get<double>();
  CHECK(slope >= 1.8);  // symmetric node pair: second order
}

TEST_CASE("bounds: assert rows hold for a smooth function") {
  json j = run_json({"bounds", "--fn", "exp:1", "--n", "2", "--x", "1/4"}, 0);
  CHECK(j["fn_norm_p"].get<double>() == doctest::Approx(std::exp(1.0)).epsilon(1e-9));
  REQUIRE(j["reports"].size() == 4);
  for (const json& row : j["reports"]) {
    CHECK(row["mode"] == "ASSERT");
    CHECK(row["holds"] == true);
  }
  CHECK(j["asserts_ok"] == true);

  json q = run_json({"bounds", "--fn", "exp:1", "--n", "2", "--x", "1/4", "--q", "3"}, 0);
  REQUIRE(q["reports"].size() == 5);
  CHECK(q["reports"][4]["bound_name"] == "harmonic_lp_relaxed_custom_q");
  CHECK(q["reports"][4]["mode"] == "AUDIT");
}

TEST_CASE("audit: full report with frozen functional diffs") {
  json j = run_json({"audit", "--fn", "poly:0,0,-3/2,1", "--n", "2", "--x", "0"}, 0);
  CHECK(j["conventions"]["p_functional_kernel"] == "printed");
  CHECK(j["stats"]["endpoint_match"] == true);
  CHECK(j["functionals"]["p"]["mean_diff"].get<double>() ==
        doctest::Approx(0.125).epsilon(1e-8));
  CHECK(j["functionals"]["q"]["mean_diff"].get<double>() ==
        doctest::Approx(-0.25).epsilon(1e-8));
  CHECK(std::fabs(j["functionals"]["l"]["mean_diff"].get<double>()) <= 1e-8);
  CHECK(j["l2_weights"]["A"] == "1/3");
  CHECK(j["l2_weights"]["B"] == "22/3");
  CHECK(j["seq_kernel"]["M2"].get<double>() == doctest::Approx(0.5).epsilon(1e-8));

  REQUIRE(j["reports"].size() == 29);  // 9 assert + 5 p + 5 l + 5 node_left + 5 harmonic
  bool saw_node_left = false, saw_alt = false;
  for (const json& row : j["reports"]) {
    CHECK(!row["holds"].is_null());  // hypothesis met: every row has a verdict
    std::string name = row["bound_name"].get<std::string>();
    if (name.rfind("node_left_case_", 0) == 0) saw_node_left = true;
    if (name == "l_functional_case_2") {
      saw_alt = true;
      CHECK(row["bound_value_alt"].get<double>() ==
            doctest::Approx(27.0 / 128.0).epsilon(1e-8));
    }
    if (name.rfind("two_point_lp_", 0) == 0 || name.rfind("harmonic_lp", 0) == 0)
      CHECK(row["mode"] == "ASSERT");
  }
  CHECK(saw_node_left);
  CHECK(saw_alt);
  CHECK(j["asserts_ok"] == true);
}

TEST_CASE("audit: unmet endpoint hypothesis nulls the rule-level rows") {
  json j = run_json({"audit", "--fn", "exp:1", "--n", "2", "--node", "midpoint"}, 0);
  int unmet = 0;
  for (const json& row : j["reports"]) {
    std::string name = row["bound_name"].get<std::string>();
    if (name.rfind("node_midpoint_", 0) == 0 || name.rfind("harmonic_node_", 0) == 0) {
      CHECK(row["bound_value"].is_null());
      CHECK(row["holds"].is_null());
      CHECK(row["note"] == "HYPOTHESIS_UNMET");
      ++unmet;
    }
  }
  CHECK(unmet == 10);
  CHECK(j["asserts_ok"] == true);  // assert rows are unaffected

  CHECK_THROWS_AS(run_cli({"audit", "--fn", "exp:1", "--n", "1", "--x", "0"}), Error);
  CHECK_THROWS_AS(run_cli({"audit", "--fn", "exp:1", "--n", "2"}), Error);
}

TEST_CASE("kernels: csv table with frozen canonical value") {
  RunOutcome r = run_cli({"kernels", "--n", "2", "--x", "0"});
  CHECK(r.code == 0);
  std::istringstream lines(r.out);
  std::string line;
  REQUIRE(std::getline(lines, line));
  CHECK(line == "t,S,p,K_canonical,K_printed");
  int rows = 0;
  bool found = false;
  while (std::getline(lines, line)) {
    ++rows;
    if (line.rfind("0.75,", 0) == 0) {
      found = true;
      std::istringstream cols(line);
      std::string cell;
      std::vector<double> vals;
      while (std::getline(cols, cell, ',')) vals.push_back(std::stod(cell));
      REQUIRE(vals.size() == 5);
      CHECK(vals[3] == doctest::Approx(0.0625).epsilon(1e-15));
      CHECK(vals[4] == doctest::Approx(-0.1875).epsilon(1e-15));
    }
  }
  CHECK(rows == 257);
  CHECK(found);
}

TEST_CASE("reports are byte deterministic") {
  std::vector<std::string> args = {"audit", "--fn", "poly:0,0,-3/2,1", "--n", "2",
                                   "--x", "0"};
  CHECK(run_cli(args).out == run_cli(args).out);
  std::vector<std::string> qargs = {"quad", "--fn", "exp:1", "--n", "2", "--x", "1/4",
                                    "--panels", "2,4,8"};
  CHECK(run_cli(qargs).out == run_cli(qargs).out);
}

TEST_CASE("config errors surface before any output") {
  CHECK_THROWS_AS(run_cli({"verify"}), Error);          // missing --fn
  CHECK_THROWS_AS(run_cli({"quad", "--fn", "exp:1"}), Error);  // missing node
  CHECK_THROWS_AS(run_cli({"verify", "--fn", "poly:0,1", "--x", "3/4"}), Error);
  CHECK_THROWS_AS(run_cli({"bounds", "--fn", "exp:1", "--x", "0", "--p", "0.5"}), Error);
  CHECK_THROWS_AS(run_cli({"verify", "--fn", "tan:1"}), Error);
}

TEST_CASE("entry point maps outcomes to exit codes and honors --out") {
  namespace fs = std::filesystem;
  fs::path out = fs::temp_directory_path() / "finkquad_cli_test.json";
  std::string out_str = out.string();
  {
    const char* argv[] = {"finkquad", "verify", "--fn",  "poly:0,0,1",
                          "--n",      "2",      "--x",   "0",
                          "--out",    out_str.c_str()};
    CHECK(cli::main_entry(10, const_cast<char**>(argv)) == 0);
    std::ifstream in(out);
    REQUIRE(in.good());
    json j = json::parse(in);
    CHECK(j["all_pass"] == true);
  }
  {
    const char* argv[] = {"finkquad", "frobnicate"};
    CHECK(cli::main_entry(2, const_cast<char**>(argv)) == 2);
  }
  {
    const char* argv[] = {"finkquad", "quad", "--fn", "exp:1"};
    CHECK(cli::main_entry(4, const_cast<char**>(argv)) == 2);
  }
  std::error_code ec;
  fs::remove(out, ec);
}
