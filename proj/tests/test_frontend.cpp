#include <doctest.h>

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "epc/api.hpp"
#include "epc/expr.hpp"
#include "epc/mcstruct.hpp"
#include "epc/problem.hpp"
#include "helpers.hpp"

using namespace epc;

namespace {

const Model kChart1{ModelKind::Chart, 1};
const Model kChart2{ModelKind::Chart, 2};
const Model kTorus1{ModelKind::Torus, 1};
const Model kTorus2{ModelKind::Torus, 2};

GaussianRational q(long v) { return GaussianRational(v); }

size_t offset_of(const std::string& text, Model m) {
  try {
    parse_expr(text, m);
  } catch (const ParseError& e) {
    return e.offset;
  }
  FAIL("expected a parse error for: " << text);
  return SIZE_MAX;
}

// Writes `text` to a scratch file and returns its path.
std::string scratch_file(const std::string& name, const std::string& text) {
  auto path = std::filesystem::temp_directory_path() / name;
  std::ofstream out(path);
  out << text;
  out.close();
  return path.string();
}

std::string problem(const char* name) { return epc_test::problem_path(name); }

}  // namespace

TEST_CASE("expression grammar pins") {
  auto z1 = CoeffFn::coordinate(kChart1, 0, false);
  auto zb1 = CoeffFn::coordinate(kChart1, 0, true);
  CHECK(parse_expr("z1*zb1", kChart1) == z1 * zb1);
  CHECK(parse_expr("(1/2+3/4i)*z1^2", kChart1) ==
        z1.pow(2).scaled(GaussianRational::from_fractions(1, 2, 3, 4)));

  auto z2a = CoeffFn::coordinate(kChart2, 0, false);
  auto z2b = CoeffFn::coordinate(kChart2, 1, false);
  CHECK(parse_expr("z1^2+-2*z2", kChart2) == z2a.pow(2) - z2b.scaled(q(2)));

  // '^' binds tighter than '*'.
  CHECK(parse_expr("2*z1^2", kChart1) == z1.pow(2).scaled(q(2)));
  CHECK(parse_expr("2*z1^2", kChart1) != parse_expr("(2*z1)^2", kChart1));

  CHECK(parse_expr("e[1;0]", kTorus1) == CoeffFn::character(kTorus1, {1}, {0}));
  CHECK(parse_expr("e[1,-2;0,3]", kTorus2) == CoeffFn::character(kTorus2, {1, -2}, {0, 3}));

  CHECK(parse_expr(" 1 + 2 ", kChart1) == CoeffFn::constant(kChart1, q(3)));
  CHECK(parse_expr("-1i", kChart1) ==
        CoeffFn::constant(kChart1, GaussianRational(0, -1)));
}

TEST_CASE("printer output re-parses to the same function") {
  for (Model m : {kChart2, kTorus2}) {
    Rng rng(7);
    for (int t = 0; t < 50; ++t) {
      CoeffFn f = random_coeff(m, rng);
      CHECK(parse_expr(f.to_string(), m) == f);
    }
    CHECK(parse_expr(CoeffFn::zero(m).to_string(), m).is_zero());
  }
}

TEST_CASE("parse errors carry byte offsets") {
  CHECK(offset_of("", kChart1) == 0);
  CHECK(offset_of("z1+e[1;0]", kChart2) == 3);  // characters are torus-only
  CHECK(offset_of("z1", kTorus1) == 0);         // coordinates are chart-only
  CHECK(offset_of("z3", kChart2) == 1);         // index out of range
  CHECK(offset_of("1/0", kChart1) == 2);        // zero denominator
  CHECK(offset_of("2 z1", kChart1) == 2);       // trailing input
  CHECK(offset_of("z1^-2", kChart1) == 3);      // signed exponent
  CHECK_THROWS_AS(parse_expr("(1+2", kChart1), ParseError);
  CHECK_THROWS_AS(parse_expr("e[1;0,0]", kTorus2), ParseError);  // short list
}

TEST_CASE("the shipped problem corpus loads") {
  const char* names[] = {
      "chart_h0_n1.json",      "torus_h0.json",          "torus_theta.json",
      "torus_theta_const1.json", "torus_theta_i.json",   "torus_theta_2.json",
      "holo_pi_n2.json",       "omega_n2.json",          "mixed_const.json",
      "bad_omega.json",        "bad_theta_n2.json",      "torus_pi_n2.json",
      "chart_theta_zzb.json",  "chart_theta21.json",     "chart_pi_const_n2.json",
  };
  for (const char* name : names) {
    ProblemSpec spec = load_problem(problem(name));
    CHECK(spec.model.dim >= 1);
    CHECK(spec.h.model.dim == spec.model.dim);
  }

  auto spec = load_problem(problem("holo_pi_n2.json"));
  CHECK(spec.model.kind == ModelKind::Chart);
  CHECK(spec.model.dim == 2);
  auto expected = GradedElement::term(kChart2, FrameMono{0b11, 0, 0, 0},
                                      CoeffFn::coordinate(kChart2, 0, false).scaled(q(2)));
  CHECK(spec.h.pi == expected);
  CHECK(spec.h.theta.is_zero());
  CHECK(spec.h.omega.is_zero());

  auto tor = load_problem(problem("torus_theta.json"));
  CHECK(tor.h.theta ==
        GradedElement::term(kTorus1, FrameMono{1, 0, 0, 1}, CoeffFn::character(kTorus1, {1}, {0})));
}

TEST_CASE("problem files are validated") {
  auto manifold = std::string(R"({"model": "chart", "dim": 2})");

  CHECK_THROWS_AS(parse_problem(R"({"manifold": {"model": "chart", "dim": 2}, "Hh": {}})"),
                  ProblemError);
  CHECK_THROWS_AS(parse_problem(R"({"H": {}})"), ProblemError);  // missing manifold
  CHECK_THROWS_AS(parse_problem(R"({"manifold": {"model": "plane", "dim": 2}})"), ProblemError);
  CHECK_THROWS_AS(parse_problem(R"({"manifold": {"model": "chart", "dim": 0}})"), ProblemError);
  CHECK_THROWS_AS(parse_problem(R"({"manifold": {"model": "chart", "dim": 17}})"), ProblemError);

  // Duplicate JSON keys are detected, not silently merged.
  CHECK_THROWS_AS(
      parse_problem(
          R"({"manifold": {"model": "chart", "dim": 2},
              "H": {"pi": {"1,2": "1"}, "pi": {"1,2": "2"}}})"),
      ProblemError);

  // Skew pairs are stored once, on the increasing key.
  try {
    parse_problem(R"({"manifold": {"model": "chart", "dim": 2}, "H": {"pi": {"2,1": "1"}}})");
    FAIL("expected rejection of a decreasing pi key");
  } catch (const ProblemError& e) {
    CHECK(std::string(e.what()).find("i<j") != std::string::npos);
  }
  CHECK_THROWS_AS(
      parse_problem(R"({"manifold": {"model": "chart", "dim": 2}, "H": {"omega": {"1,1": "1"}}})"),
      ProblemError);
  CHECK_THROWS_AS(
      parse_problem(R"({"manifold": {"model": "chart", "dim": 2}, "H": {"pi": {"1,3": "1"}}})"),
      ProblemError);

  // theta keys are unordered pairs of (vector, covector) indices.
  auto ok = parse_problem(
      R"({"manifold": {"model": "chart", "dim": 2}, "H": {"theta": {"2,1": "1"}}})");
  CHECK(!ok.h.theta.is_zero());

  // Expressions must parse in the declared model.
  CHECK_THROWS_AS(
      parse_problem(R"({"manifold": {"model": "torus", "dim": 1}, "H": {"pi": {"1,1": "z1"}}})"),
      ProblemError);
}

TEST_CASE("subspace and map files") {
  auto y = load_subspace(problem("subspace_z2zero.json"), kChart2);
  REQUIRE(y.basis.size() == 1);
  CHECK(y.basis[0] == std::vector<GaussianRational>{q(1), q(0)});
  CHECK(y.base.empty());

  auto id = load_map(problem("map_identity_n2.json"), kChart2, kChart2);
  CHECK(id.matrix == std::vector<std::vector<GaussianRational>>{{q(1), q(0)}, {q(0), q(1)}});

  auto shear = load_map(problem("map_shear_n2.json"), kChart2, kChart2);
  CHECK(shear.matrix[1][0] == q(1));

  // Schema mixups fail loudly.
  CHECK_THROWS_AS(load_subspace(problem("map_identity_n2.json"), kChart2), ProblemError);
  CHECK_THROWS_AS(load_map(problem("subspace_z2zero.json"), kChart2, kChart2), ProblemError);
  CHECK_THROWS_AS(load_problem(problem("subspace_z2zero.json")), ProblemError);

  auto bad_entry = scratch_file("epc_bad_subspace.json", R"({"basis": [["z1", "0"]]})");
  CHECK_THROWS_AS(load_subspace(bad_entry, kChart2), ProblemError);

  auto bad_rows = scratch_file("epc_bad_map.json", R"({"matrix": [["1", "0"]]})");
  CHECK_THROWS_AS(load_map(bad_rows, kChart2, kChart2), ProblemError);

  auto bad_len = scratch_file("epc_bad_len.json", R"({"basis": [["1"]]})");
  CHECK_THROWS_AS(load_subspace(bad_len, kChart2), ProblemError);

  CHECK_THROWS_AS(load_subspace("/nonexistent/epc.json", kChart2), ProblemError);
  std::remove(bad_entry.c_str());
  std::remove(bad_rows.c_str());
  std::remove(bad_len.c_str());
}

TEST_CASE("api layer wires reports and exit codes") {
  auto ok = api_check_mc(problem("torus_theta.json"), false);
  CHECK(ok.exit_code == 0);
  CHECK(ok.report["mc"]["satisfied"] == true);
  CHECK(!ok.report.contains("structure"));

  auto verbose = api_check_mc(problem("torus_theta.json"), true);
  CHECK(verbose.report.contains("structure"));

  auto bad = api_check_mc(problem("bad_omega.json"), false);
  CHECK(bad.exit_code == 1);
  CHECK(bad.report["mc"]["satisfied"] == false);

  auto hm = api_homology(problem("torus_h0.json"), "kb", 3);
  CHECK(hm.exit_code == 0);
  CHECK(hm.report["homology"]["dims"] == std::vector<int>{1, 2, 1});
  CHECK(hm.report.contains("duality"));
  CHECK_THROWS_AS(api_homology(problem("torus_h0.json"), "xx", 3), ProblemError);

  auto mod = api_modular(problem("chart_theta_zzb.json"), "1");
  CHECK(mod.exit_code == 1);
  CHECK(mod.report["modular"]["unimodular"] == false);

  auto d2 = api_d2(problem("bad_theta_n2.json"), 5, 0, 2);
  CHECK(d2.exit_code == 1);
  CHECK(d2.report["d2"]["equivalent"] == true);

  auto co = api_coisotropic(problem("omega_n2.json"), problem("subspace_z2zero.json"));
  CHECK(co.exit_code == 0);
  CHECK(co.report["coisotropic"]["subalgebroid"]["verdict"] == true);

  auto pm = api_poisson_map(problem("chart_pi_const_n2.json"), problem("chart_pi_const_n2.json"),
                            problem("map_shear_n2.json"));
  CHECK(pm.exit_code == 0);
  CHECK(pm.report["poisson_map"]["graph"]["agree"] == true);
}
