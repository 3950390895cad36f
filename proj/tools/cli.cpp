#include "cli.hpp"

#include "divdiv/random.hpp"
#include "divdiv/verify.hpp"

#include <CLI11.hpp>

#include <fstream>
#include <iostream>
#include <regex>
#include <sstream>

namespace divdiv::cli {

namespace {

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

std::string read_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw UsageError("cannot read " + path);
  std::ostringstream s;
  s << in.rdbuf();
  return s.str();
}

/// "single" and "two" (tet), "NxMxL" (either grid) or a mesh JSON file.
MeshComplex resolve_mesh(const std::string& grid, const std::string& spec) {
  static const std::regex dims(R"((\d+)x(\d+)x(\d+))");
  std::smatch m;
  if (std::regex_match(spec, m, dims)) {
    const int nx = std::stoi(m[1]), ny = std::stoi(m[2]), nz = std::stoi(m[3]);
    return grid == "box" ? build_box_mesh(nx, ny, nz) : build_tet_mesh(nx, ny, nz);
  }
  if (spec == "single" || spec == "two") {
    if (grid != "tet") throw UsageError("mesh '" + spec + "' is tetrahedral; use --grid tet");
    return spec == "single" ? single_tet_mesh() : two_tet_mesh();
  }
  MeshComplex mesh = mesh_from_json(read_file(spec));
  if (to_string(mesh.type) != grid) throw UsageError("mesh file " + spec + " is not a " + grid + " mesh");
  return mesh;
}

CellGeometry resolve_cell(const std::string& grid, const std::string& cell, std::uint64_t seed) {
  if (cell == "unit" || cell == "reference") return grid == "box" ? CellGeometry::unit_box() : CellGeometry::reference_tet();
  if (cell != "random") throw UsageError("--cell must be unit, reference or random");
  RationalRng rng(seed);
  if (grid == "tet") {
    const auto x = rng.tetrahedron();
    return {"tet", {x.begin(), x.end()}};
  }
  const Vec3 lo = rng.vec3();
  Vec3 hi = lo;
  for (int i = 0; i < 3; ++i) {
    Rational h = rng.next_nonzero();
    if (sgn(h) < 0) h = -h;
    hi[i] += h;
  }
  return {"box", {lo, hi}};
}

std::vector<SpaceFamily> resolve_families(const std::string& family) {
  if (family == "all") return {SpaceFamily::V, SpaceFamily::U, SpaceFamily::Sigma, SpaceFamily::Q};
  return {parse_family(family)};
}

int emit(const std::vector<VerificationReport>& reports, const std::string& out_path, std::ostream& out) {
  const std::string text = reports_to_json(reports);
  bool pass = true;
  for (const auto& r : reports) pass = pass && r.pass;
  if (out_path.empty()) {
    out << text << "\n";
  } else {
    std::ofstream f(out_path);
    if (!f) throw UsageError("cannot write " + out_path);
    f << text << "\n";
    for (const auto& r : reports) out << r.status() << " " << r.claim << " (" << r.millis << " ms)\n";
  }
  return pass ? 0 : 1;
}

void check_grid(const std::string& grid) {
  if (grid != "box" && grid != "tet") throw UsageError("--grid must be box or tet");
}

}  // namespace

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Exact verification of conforming divdiv finite element complexes"};
  app.require_subcommand(1);
  app.fallthrough();
  std::string out_path;
  app.add_option("--out", out_path, "Write the JSON report to this file");

  std::string grid = "box";
  std::vector<int> ks;
  auto* dims = app.add_subcommand("dims", "Shape space dimensions against closed forms");
  dims->add_option("--grid", grid, "box or tet")->required();
  dims->add_option("--k", ks, "Degree index (repeatable)")->required();

  std::string family = "all", cell = "unit";
  std::uint64_t seed = 1;
  auto* uni = app.add_subcommand("unisolvence", "Exact nonsingularity of local DOF matrices");
  uni->add_option("--grid", grid, "box or tet")->required();
  uni->add_option("--family", family, "v, u, sigma, q or all");
  uni->add_option("--k", ks, "Degree index (repeatable)")->required();
  uni->add_option("--cell", cell, "unit (reference), or random");
  uni->add_option("--seed", seed, "Seed for random cells");

  std::string kind = "divdiv";
  std::vector<int> degrees;
  auto* poly = app.add_subcommand("poly-complex", "Exactness of the polynomial complexes on a box");
  poly->add_option("--kind", kind, "derham or divdiv");
  poly->add_option("--k", ks, "Degree index (repeatable)");
  poly->add_option("--degrees", degrees, "Anisotropic de Rham degrees k1 k2 k3")->expected(3);

  std::string mesh_spec = "1x1x1";
  bool kernel = false, constructive = false;
  auto* glob = app.add_subcommand("global-complex", "Rank identities of an assembled complex");
  glob->add_option("--grid", grid, "box or tet")->required();
  glob->add_option("--k", ks, "Degree index")->required();
  glob->add_option("--mesh", mesh_spec, "single, two, NxMxL or a mesh JSON file");
  glob->add_flag("--kernel", kernel, "Also recover dev grad preimages of ker(sym curl)");
  glob->add_flag("--constructive", constructive, "Also build div div preimages from the DOFs (tet only)");
  glob->add_option("--seed", seed, "Seed for random samples");

  int samples = 100;
  auto* green = app.add_subcommand("green-identities", "Randomized operator and integration-by-parts identities");
  green->add_option("--samples", samples, "Number of random samples");
  green->add_option("--seed", seed, "Seed");

  std::string basis_path;
  bool verify_only = false;
  auto* exp = app.add_subcommand("export-basis", "Write the nodal basis of one element as exact JSON");
  exp->add_option("--grid", grid, "box or tet");
  exp->add_option("--family", family, "v, u, sigma or q");
  exp->add_option("--k", ks, "Degree index");
  exp->add_option("--cell", cell, "unit (reference), or random");
  exp->add_option("--seed", seed, "Seed for random cells");
  exp->add_option("--path", basis_path, "Output file for the basis")->required();
  exp->add_flag("--verify-only", verify_only, "Re-import an existing file and check duality");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    out << app.help();
    return 0;
  } catch (const CLI::ParseError& e) {
    err << e.what() << "\n" << app.help();
    return 2;
  }

  try {
    std::vector<VerificationReport> reports;
    if (dims->parsed()) {
      check_grid(grid);
      for (int k : ks) reports.push_back(check_dimensions(grid, k));
    } else if (uni->parsed()) {
      check_grid(grid);
      const CellGeometry geometry = resolve_cell(grid, cell, seed);
      for (int k : ks)
        for (auto f : resolve_families(family)) reports.push_back(check_unisolvence(f, k, geometry));
    } else if (poly->parsed()) {
      if (kind != "derham" && kind != "divdiv") throw UsageError("--kind must be derham or divdiv");
      if (!degrees.empty()) {
        if (kind != "derham") throw UsageError("--degrees applies to --kind derham");
        reports.push_back(check_polynomial_derham(degrees[0], degrees[1], degrees[2]));
      }
      if (ks.empty() && degrees.empty()) throw UsageError("poly-complex needs --k or --degrees");
      for (int k : ks) reports.push_back(kind == "derham" ? check_polynomial_derham(k) : check_polynomial_divdiv(k));
    } else if (glob->parsed()) {
      check_grid(grid);
      if (constructive && grid != "tet") throw UsageError("--constructive needs --grid tet");
      const MeshComplex mesh = resolve_mesh(grid, mesh_spec);
      for (int k : ks) {
        reports.push_back(check_exactness_global(mesh, k, mesh_spec));
        if (kernel) reports.push_back(check_kernel_characterization(mesh, k, mesh_spec, seed));
        if (constructive) reports.push_back(check_divdiv_surjectivity_constructive(mesh, k, mesh_spec, seed));
      }
    } else if (green->parsed()) {
      if (samples < 1) throw UsageError("--samples must be positive");
      reports.push_back(check_identity_suite(samples, seed));
    } else if (exp->parsed()) {
      if (!verify_only) {
        check_grid(grid);
        if (ks.size() != 1) throw UsageError("export-basis needs exactly one --k");
        if (family == "all") throw UsageError("export-basis needs a single --family");
        std::ofstream f(basis_path);
        if (!f) throw UsageError("cannot write " + basis_path);
        f << export_basis_json(parse_family(family), ks[0], resolve_cell(grid, cell, seed));
      }
      reports.push_back(check_basis_json(read_file(basis_path)));
    }
    return emit(reports, out_path, out);
  } catch (const UsageError& e) {
    err << "usage error: " << e.what() << "\n";
    return 2;
  } catch (const std::invalid_argument& e) {
    err << "invalid argument: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    err << "check aborted: " << e.what() << "\n";
    return 1;
  }
}

}  // namespace divdiv::cli
