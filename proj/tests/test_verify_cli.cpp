#include "cli.hpp"
#include "divdiv/global_space.hpp"
#include "divdiv/random.hpp"
#include "divdiv/verify.hpp"
#include "test_support.hpp"

#include <doctest.h>
#include <json.hpp>

#include <filesystem>
#include <fstream>
#include <sstream>

using namespace divdiv;
using namespace divdiv::test;

namespace {

struct CliResult {
  int code;
  std::string out;
  std::string err;
};

CliResult run_cli(std::vector<std::string> args) {
  args.insert(args.begin(), "divdiv");
  std::vector<const char*> argv;
  for (const auto& a : args) argv.push_back(a.c_str());
  std::ostringstream out, err;
  const int code = divdiv::cli::run(static_cast<int>(argv.size()), argv.data(), out, err);
  return {code, out.str(), err.str()};
}

std::string temp_path(const std::string& name) {
  return (std::filesystem::path(DIVDIV_TEST_DATA_DIR) / name).string();
}

std::string slurp(const std::string& path) {
  std::ifstream in(path);
  std::ostringstream s;
  s << in.rdbuf();
  return s.str();
}

/// Changes the first stored coefficient of nodal field 0.
void tamper(nlohmann::json& basis) {
  for (auto& entry : basis["fields"][0])
    if (!entry.empty()) {
      entry[0][3] = entry[0][3].get<std::string>() == "17" ? "18" : "17";
      return;
    }
}

/// Report JSON with timings removed, for run-to-run comparison.
nlohmann::json without_timing(const std::string& text) {
  auto j = nlohmann::json::parse(text);
  for (auto& r : j) r.erase("millis");
  return j;
}

}  // namespace

TEST_SUITE("verify_cli") {

TEST_CASE("polynomial de Rham complexes") {
  const VerificationReport r = check_polynomial_derham(3);
  CHECK(r.pass);
  CHECK(r.claim == "poly-derham:k=3");
  CHECK(r.ranks.at("grad") == 26);
  CHECK(r.ranks.at("curl") == 28);
  CHECK(r.ranks.at("div") == 8);
  CHECK(check_polynomial_derham(4).pass);
  CHECK(check_polynomial_derham(1, 1, 1).pass);
  CHECK(check_polynomial_derham(2, 1, 0).pass);
}

TEST_CASE("polynomial divdiv complexes") {
  const VerificationReport r3 = check_polynomial_divdiv(3);
  CHECK(r3.pass);
  CHECK(r3.ranks.at("sym_curl") == 94);
  CHECK(r3.dims.at("V") - r3.ranks.at("dev_grad") == 4);
  const VerificationReport r4 = check_polynomial_divdiv(4);
  CHECK(r4.pass);
  CHECK(r4.ranks.at("div_div") == 27);
  CHECK(r4.ranks.at("sym_curl") == 5 * 64 - 3 * 16 - 6 * 4 + 4);
}

TEST_CASE("dimension and constrained-space reports") {
  for (int k = 3; k <= 5; ++k) CHECK(check_dimensions("box", k).pass);
  const VerificationReport t = check_dimensions("tet", 4);
  CHECK(t.pass);
  CHECK(t.dims.at("Sigma") == 210);
  CHECK(t.dims.at("U") == 448);
  CHECK(t.dims.at("V") == 252);
  CHECK(t.dims.at("Q") == 10);
  CHECK(check_constrained_spaces(4).pass);
  CHECK_THROWS_AS(check_dimensions("hex", 3), std::invalid_argument);
}

TEST_CASE("failing reports carry a witness") {
  VerificationReport r;
  r.expect_eq("rank", 3, 4);
  CHECK_FALSE(r.pass);
  REQUIRE(r.witnesses.size() == 1);
  CHECK(r.witnesses[0].rfind("FAILED ", 0) == 0);
  const auto j = nlohmann::json::parse(r.to_json());
  CHECK(j.at("status") == "fail");
  for (const char* key : {"claim", "status", "dims", "ranks", "witnesses", "millis"}) CHECK(j.contains(key));
}

TEST_CASE("global exactness and kernel characterization on one cube") {
  const MeshComplex m = build_box_mesh(1, 1, 1);
  const VerificationReport r = check_exactness_global(m, 3, "1x1x1");
  CHECK(r.pass);
  CHECK(r.ranks.at("sym_curl") == 94);
  CHECK(r.dims.at("V") - r.dims.at("U") + r.dims.at("Sigma") - r.dims.at("Q") == 4);
  // Closed form -4V + (k+3)E + (4k^2-10k+2)F + (5k^3-27k^2+42k-16)T + 4 at (8, 12, 6, 1).
  const long long k = 3;
  CHECK(r.ranks.at("sym_curl") ==
        -4 * 8 + (k + 3) * 12 + (4 * k * k - 10 * k + 2) * 6 + (5 * k * k * k - 27 * k * k + 42 * k - 16) + 4);
  const VerificationReport kc = check_kernel_characterization(m, 3, "1x1x1");
  CHECK(kc.pass);
  CHECK(kc.dims.at("ker(sym_curl)") == 104);
}

TEST_CASE("constructive div div preimages") {
  const MeshComplex m = single_tet_mesh();
  const GlobalSpace sigma = assemble_global_space(m, SpaceFamily::Sigma, 4);
  const DivDivPreimage pre = construct_divdiv_preimage(sigma, {Polynomial(1)});
  REQUIRE(pre.solved);
  CHECK(sigma.field_on_cell(0, pre.u_dofs).shape() == Shape::matrix);
  CHECK(div_div(sigma.field_on_cell(0, pre.u_dofs)) == scalar(Polynomial(1)));

  const DivDivPreimage pre2 = construct_divdiv_preimage(sigma, {X() * Y() - 2 * Z() * Z() + q(1, 3)});
  REQUIRE(pre2.solved);
  CHECK(div_div(sigma.field_on_cell(0, pre2.u_dofs)) == scalar(X() * Y() - 2 * Z() * Z() + q(1, 3)));

  const VerificationReport r = check_divdiv_surjectivity_constructive(m, 4, "single");
  CHECK(r.pass);
  CHECK_THROWS_AS(check_divdiv_surjectivity_constructive(build_box_mesh(1, 1, 1), 3, "box"), std::invalid_argument);
}

TEST_CASE("identity suite") {
  const VerificationReport r = check_identity_suite(10, 99);
  CHECK(r.pass);
  CHECK(r.dims.at("samples") == 10);
}

TEST_CASE("basis export round trip") {
  const std::string text = export_basis_json(SpaceFamily::Sigma, 3, CellGeometry::unit_box());
  const auto j = nlohmann::json::parse(text);
  CHECK(j.at("fields").size() == 102);
  CHECK(j.at("dofs").size() == 102);
  CHECK(check_basis_json(text).pass);

  // Perturbing one coefficient breaks duality.
  auto bad = j;
  tamper(bad);
  CHECK_FALSE(check_basis_json(bad.dump()).pass);

  const std::string tet = export_basis_json(SpaceFamily::V, 4, CellGeometry::reference_tet());
  CHECK(nlohmann::json::parse(tet).at("fields").size() == 252);
  CHECK(check_basis_json(tet).pass);
}

TEST_CASE("CLI exit codes") {
  CHECK(run_cli({"dims", "--grid", "box", "--k", "3"}).code == 0);
  CHECK(run_cli({"dims", "--grid", "box", "--k", "3", "--bogus"}).code == 2);
  CHECK(run_cli({"dims", "--grid", "hex", "--k", "3"}).code == 2);
  CHECK(run_cli({}).code == 2);
  CHECK(run_cli({"unisolvence", "--grid", "box", "--family", "sigma", "--k", "2"}).code == 2);
  CHECK(run_cli({"global-complex", "--grid", "box", "--k", "3", "--mesh", "single"}).code == 2);
  CHECK(run_cli({"--help"}).code == 0);

  // A basis file whose duality fails is a check failure, not a usage error.
  const std::string path = temp_path("tampered_basis.json");
  {
    auto j = nlohmann::json::parse(export_basis_json(SpaceFamily::Q, 3, CellGeometry::unit_box()));
    tamper(j);
    std::ofstream(path) << j.dump();
  }
  CHECK(run_cli({"export-basis", "--path", path, "--verify-only"}).code == 1);
}

TEST_CASE("CLI reports") {
  const CliResult d = run_cli({"dims", "--grid", "tet", "--k", "4"});
  REQUIRE(d.code == 0);
  const auto j = nlohmann::json::parse(d.out);
  REQUIRE(j.size() == 1);
  CHECK(j[0].at("dims").at("Sigma") == 210);
  CHECK(j[0].at("dims").at("U") == 448);
  CHECK(j[0].at("dims").at("V") == 252);
  CHECK(j[0].at("dims").at("Q") == 10);

  const CliResult u = run_cli({"unisolvence", "--grid", "box", "--family", "sigma", "--k", "3"});
  REQUIRE(u.code == 0);
  const auto uj = nlohmann::json::parse(u.out);
  CHECK(uj[0].at("status") == "pass");
  CHECK(uj[0].at("ranks").at("dof_matrix") == 102);

  const std::string out = temp_path("report.json");
  const CliResult g = run_cli({"global-complex", "--grid", "tet", "--k", "4", "--mesh", "single", "--out", out});
  REQUIRE(g.code == 0);
  CHECK(g.out.find("pass global-exactness:grid=tet:mesh=single:k=4") != std::string::npos);
  const auto gj = nlohmann::json::parse(slurp(out));
  CHECK(gj[0].at("ranks").at("sym_curl") == 200);

  const std::string mesh_path = temp_path("two.json");
  std::ofstream(mesh_path) << mesh_to_json(build_box_mesh(2, 1, 1));
  CHECK(run_cli({"global-complex", "--grid", "box", "--k", "3", "--mesh", mesh_path}).code == 0);
  CHECK(run_cli({"global-complex", "--grid", "tet", "--k", "4", "--mesh", mesh_path}).code == 2);

  const std::string basis = temp_path("basis.json");
  CHECK(run_cli({"export-basis", "--grid", "tet", "--family", "sigma", "--k", "3", "--cell", "random", "--path", basis})
            .code == 0);
  CHECK(run_cli({"export-basis", "--path", basis, "--verify-only"}).code == 0);
}

TEST_CASE("reports are reproducible") {
  const std::vector<std::string> args{"green-identities", "--samples", "5", "--seed", "3"};
  CHECK(without_timing(run_cli(args).out) == without_timing(run_cli(args).out));
  const std::vector<std::string> p{"poly-complex", "--kind", "derham", "--k", "3", "--degrees", "2", "1", "0"};
  const auto a = without_timing(run_cli(p).out);
  CHECK(a == without_timing(run_cli(p).out));
  // Canonical order by claim id.
  CHECK(a[0].at("claim") == "poly-derham:k=(2,1,0)");
  CHECK(a[1].at("claim") == "poly-derham:k=3");
}

}  // TEST_SUITE
