#include "divdiv/verify.hpp"

#include "divdiv/green.hpp"
#include "divdiv/linalg.hpp"
#include "divdiv/operators.hpp"
#include "divdiv/random.hpp"
#include "divdiv/tet_spaces.hpp"

#include <json.hpp>

#include <algorithm>
#include <chrono>
#include <functional>
#include <stdexcept>

namespace divdiv {

namespace {

using Json = nlohmann::ordered_json;
using Op = std::function<TensorField(const TensorField&)>;

class Stopwatch {
 public:
  long long millis() const {
    return std::chrono::duration_cast<std::chrono::milliseconds>(std::chrono::steady_clock::now() - start_).count();
  }

 private:
  std::chrono::steady_clock::time_point start_ = std::chrono::steady_clock::now();
};

long long as_ll(std::size_t n) { return static_cast<long long>(n); }

std::size_t rank_of(const std::vector<TensorField>& fields) {
  if (fields.empty()) return 0;
  return exact_rank(coefficient_matrix(fields)).rank;
}

/// Exactness of S0 -> S1 -> S2 -> S3 -> 0 whose first kernel has dimension kernel_dim.
void check_complex(VerificationReport& r, const std::array<std::string, 4>& names, const std::array<PolySpace, 4>& s,
                   const std::array<std::string, 3>& op_names, const std::array<Op, 3>& ops, long long kernel_dim) {
  std::array<std::vector<TensorField>, 3> images;
  std::array<long long, 3> rank{};
  for (std::size_t i = 0; i < 4; ++i) r.dims[names[i]] = as_ll(s[i].dim());
  for (std::size_t i = 0; i < 3; ++i) {
    for (const auto& f : s[i].basis()) images[i].push_back(ops[i](f));
    const SpanTester target(s[i + 1].basis());
    std::size_t outside = 0;
    for (const auto& g : images[i]) outside += target.contains(g) ? 0 : 1;
    r.expect(outside == 0, op_names[i] + " maps " + names[i] + " into " + names[i + 1] + " (" + std::to_string(outside) +
                               " images outside)");
    rank[i] = as_ll(rank_of(images[i]));
    r.ranks[op_names[i]] = rank[i];
    if (i > 0) {
      std::size_t nonzero = 0;
      for (const auto& g : images[i - 1]) nonzero += ops[i](g).is_zero() ? 0 : 1;
      r.expect(nonzero == 0, op_names[i] + " o " + op_names[i - 1] + " = 0 (" + std::to_string(nonzero) + " nonzero)");
    }
  }
  const auto d = [&](std::size_t i) { return as_ll(s[i].dim()); };
  r.expect_eq("kernel of " + op_names[0], d(0) - rank[0], kernel_dim);
  r.expect_eq("rank(" + op_names[1] + ") = dim " + names[1] + " - rank(" + op_names[0] + ")", rank[1], d(1) - rank[0]);
  r.expect_eq("rank(" + op_names[2] + ") = dim " + names[2] + " - rank(" + op_names[1] + ")", rank[2], d(2) - rank[1]);
  r.expect_eq("rank(" + op_names[2] + ") = dim " + names[3], rank[2], d(3));
}

Rational cell_integral(const MeshComplex& mesh, std::size_t c, const Polynomial& p) {
  if (mesh.type == CellType::box) return integrate_box(p, mesh.box_cell(c));
  return mesh.tet_cell(c).integrate(p);
}

long long tet_formula(SpaceFamily f, long long k, const MeshComplex& m) {
  const long long V = as_ll(m.num_vertices()), E = as_ll(m.num_edges()), F = as_ll(m.num_faces()),
                  T = as_ll(m.num_cells());
  switch (f) {
    case SpaceFamily::V: return 36 * V + (11 * k - 29) * E + (2 * k * k - 11 * k + 15) * F + (k * k * k - 4 * k * k + 3 * k) / 2 * T;
    case SpaceFamily::U:
      return 41 * V + (16 * k - 30) * E + (4 * k * k - 15 * k + 11) * F + (4 * k * k * k - 12 * k * k - 4 * k + 12) / 3 * T;
    case SpaceFamily::Sigma: return 9 * V + (5 * k - 5) * E + (2 * k * k - 4 * k) * F + (k * k * k - 2 * k * k - 3 * k) * T;
    case SpaceFamily::Q: return (k * k * k - k) / 6 * T;
  }
  return 0;
}

long long box_formula(SpaceFamily f, long long k) {
  switch (f) {
    case SpaceFamily::V: return 3 * (k + 1) * k * k;
    case SpaceFamily::U: return 8 * k * k * k - 6 * k;
    case SpaceFamily::Sigma: return 3 * (k + 1) * (k - 1) * (k - 1) + 3 * k * k * (k - 1);
    case SpaceFamily::Q: return (k - 1) * (k - 1) * (k - 1);
  }
  return 0;
}

long long binom3(long long n) { return n * (n - 1) * (n - 2) / 6; }

constexpr std::array<SpaceFamily, 4> kFamilies{SpaceFamily::V, SpaceFamily::U, SpaceFamily::Sigma, SpaceFamily::Q};

Json poly_json(const Polynomial& p) {
  Json terms = Json::array();
  for (const auto& t : p.terms()) {
    const MultiIndex e = t.exponents();
    terms.push_back({e[0], e[1], e[2], to_string(t.coeff)});
  }
  return terms;
}

Polynomial poly_from_json(const Json& j) {
  std::vector<Polynomial::Term> terms;
  for (const auto& t : j)
    terms.push_back({MultiIndex(t.at(0).get<int>(), t.at(1).get<int>(), t.at(2).get<int>()).pack(),
                     parse_rational(t.at(3).get<std::string>())});
  return Polynomial::from_terms(std::move(terms));
}

}  // namespace

// --- Reports ------------------------------------------------------------------

void VerificationReport::expect_eq(const std::string& what, long long actual, long long expected) {
  std::string w = what + ": " + std::to_string(actual);
  if (actual != expected) w += " (expected " + std::to_string(expected) + ")";
  expect(actual == expected, w);
}

void VerificationReport::expect(bool ok, const std::string& witness) {
  witnesses.push_back(ok ? witness : "FAILED " + witness);
  pass = pass && ok;
}

namespace {
Json report_json(const VerificationReport& r) {
  Json j;
  j["claim"] = r.claim;
  j["status"] = r.status();
  j["dims"] = Json::object();
  for (const auto& [k, v] : r.dims) j["dims"][k] = v;
  j["ranks"] = Json::object();
  for (const auto& [k, v] : r.ranks) j["ranks"][k] = v;
  j["witnesses"] = r.witnesses;
  j["millis"] = r.millis;
  return j;
}
}  // namespace

std::string VerificationReport::to_json(int indent) const { return report_json(*this).dump(indent); }

std::string reports_to_json(std::vector<VerificationReport> reports, int indent) {
  std::stable_sort(reports.begin(), reports.end(),
                   [](const VerificationReport& a, const VerificationReport& b) { return a.claim < b.claim; });
  Json out = Json::array();
  for (const auto& r : reports) out.push_back(report_json(r));
  return out.dump(indent);
}

// --- Polynomial complexes -------------------------------------------------------

VerificationReport check_polynomial_derham(int k) {
  if (k < 2) throw std::invalid_argument("check_polynomial_derham: k >= 2 required");
  VerificationReport r = check_polynomial_derham(k - 2, k - 2, k - 2);
  r.claim = "poly-derham:k=" + std::to_string(k);
  const long long kk = k;
  r.expect_eq("dim curl M (closed form 3k^2(k-1) - k^3 + 1)", r.ranks["curl"], 3 * kk * kk * (kk - 1) - kk * kk * kk + 1);
  return r;
}

VerificationReport check_polynomial_derham(int k1, int k2, int k3) {
  if (k1 < 0 || k2 < 0 || k3 < 0) throw std::invalid_argument("check_polynomial_derham: degrees must be >= 0");
  Stopwatch sw;
  VerificationReport r;
  r.claim = "poly-derham:k=(" + std::to_string(k1) + "," + std::to_string(k2) + "," + std::to_string(k3) + ")";
  check_complex(r, {"H1", "Hcurl", "Hdiv", "L2"}, derham_spaces(k1, k2, k3), {"grad", "curl", "div"},
                {[](const TensorField& f) { return grad(f); }, [](const TensorField& f) { return curl(f); },
                 [](const TensorField& f) { return div(f); }},
                1);
  r.millis = sw.millis();
  return r;
}

VerificationReport check_polynomial_divdiv(int k) {
  if (k < 3) throw std::invalid_argument("check_polynomial_divdiv: k >= 3 required");
  Stopwatch sw;
  VerificationReport r;
  r.claim = "poly-divdiv:k=" + std::to_string(k);
  check_complex(r, {"V", "U", "Sigma", "Q"},
                {shape_space_box(BoxFamily::V, k), shape_space_box(BoxFamily::U, k), shape_space_box(BoxFamily::Sigma, k),
                 shape_space_box(BoxFamily::Qscalar, k - 2)},
                {"dev_grad", "sym_curl", "div_div"},
                {[](const TensorField& f) { return dev_grad(f); }, [](const TensorField& f) { return sym_curl(f); },
                 [](const TensorField& f) { return div_div(f); }},
                4);
  const long long kk = k;
  r.expect_eq("rank(sym_curl) (closed form 5k^3 - 3k^2 - 6k + 4)", r.ranks["sym_curl"],
              5 * kk * kk * kk - 3 * kk * kk - 6 * kk + 4);
  r.millis = sw.millis();
  return r;
}

// --- Local elements -------------------------------------------------------------

CellGeometry CellGeometry::unit_box() { return {"box", {Vec3{0, 0, 0}, Vec3{1, 1, 1}}}; }

CellGeometry CellGeometry::reference_tet() {
  return {"tet", {Vec3{0, 0, 0}, Vec3{1, 0, 0}, Vec3{0, 1, 0}, Vec3{0, 0, 1}}};
}

MeshComplex CellGeometry::as_mesh() const {
  if (grid == "box") {
    if (vertices.size() != 2) throw std::invalid_argument("box cell needs two corners");
    return build_box_mesh(1, 1, 1, Box{vertices[0], vertices[1]});
  }
  if (grid == "tet") {
    if (vertices.size() != 4) throw std::invalid_argument("tet cell needs four vertices");
    return single_tet_mesh({vertices[0], vertices[1], vertices[2], vertices[3]});
  }
  throw std::invalid_argument("unknown grid " + grid);
}

SpaceFamily parse_family(const std::string& name) {
  std::string n = name;
  std::transform(n.begin(), n.end(), n.begin(), [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
  if (n == "v") return SpaceFamily::V;
  if (n == "u") return SpaceFamily::U;
  if (n == "sigma" || n == "s") return SpaceFamily::Sigma;
  if (n == "q") return SpaceFamily::Q;
  throw std::invalid_argument("unknown family " + name);
}

VerificationReport check_dimensions(const std::string& grid, int k) {
  Stopwatch sw;
  VerificationReport r;
  r.claim = "dims:grid=" + grid + ":k=" + std::to_string(k);
  const long long kk = k;
  if (grid == "box") {
    if (k < 3) throw std::invalid_argument("check_dimensions: box k >= 3 required");
    const std::array<BoxFamily, 4> box{BoxFamily::V, BoxFamily::U, BoxFamily::Sigma, BoxFamily::Qscalar};
    for (std::size_t i = 0; i < 4; ++i) {
      const int deg = i == 3 ? k - 2 : k;
      const auto n = as_ll(shape_space_box(box[i], deg).dim());
      r.dims[to_string(kFamilies[i])] = n;
      r.expect_eq("dim " + to_string(kFamilies[i]) + " (closed form)", n, box_formula(kFamilies[i], kk));
    }
  } else if (grid == "tet") {
    if (k < 4) throw std::invalid_argument("check_dimensions: tet k >= 4 required");
    const MeshComplex one = single_tet_mesh();
    const std::array<TetFamily, 4> tet{TetFamily::V, TetFamily::U, TetFamily::Sigma, TetFamily::Q};
    // Full polynomial spaces P_{k+2}(R^3), P_{k+1}(T), P_k(S), P_{k-2}.
    const std::array<long long, 4> full{3 * binom3(kk + 5), 8 * binom3(kk + 4), 6 * binom3(kk + 3), binom3(kk + 1)};
    for (std::size_t i = 0; i < 4; ++i) {
      const auto n = as_ll(shape_space_tet(tet[i], k).dim());
      const std::string name = to_string(kFamilies[i]);
      r.dims[name] = n;
      r.expect_eq("dim " + name + " (full polynomial space)", n, full[i]);
      r.expect_eq("dim " + name + " (entity-weighted count on one tetrahedron)", n, tet_formula(kFamilies[i], kk, one));
    }
  } else {
    throw std::invalid_argument("unknown grid " + grid);
  }
  r.millis = sw.millis();
  return r;
}

VerificationReport check_constrained_spaces(int k) {
  if (k < 4) throw std::invalid_argument("check_constrained_spaces: k >= 4 required");
  Stopwatch sw;
  VerificationReport r;
  r.claim = "constrained-spaces:k=" + std::to_string(k);
  const TetElement K = reference_tet();
  const long long kk = k;
  const ConstrainedSpace w = space_W(k, K);
  r.dims["W_k"] = as_ll(w.space.dim());
  r.ranks["W_k constraints"] = as_ll(w.constraint_rank);
  const auto wq = as_ll(space_W_quotient(k, K).dim());
  r.dims["curl W_k / RM"] = wq;
  r.expect_eq("dim curl W_k / RM (closed form (2k^3 - 3k^2 - 5k - 12)/6)", wq,
              (2 * kk * kk * kk - 3 * kk * kk - 5 * kk - 12) / 6);
  const ConstrainedSpace m = space_M(k + 2, K);
  r.dims["M_{k+2}"] = as_ll(m.space.dim());
  r.ranks["M_{k+2} constraints"] = as_ll(m.constraint_rank);
  const auto mi = as_ll(space_M_image(k, K).dim());
  r.dims["curl curl* M_{k+2}"] = mi;
  r.expect_eq("dim curl curl* M_{k+2} (closed form (k^3 - 3k^2 - 4k + 12)/2)", mi, (kk * kk * kk - 3 * kk * kk - 4 * kk + 12) / 2);
  r.millis = sw.millis();
  return r;
}

VerificationReport check_unisolvence(SpaceFamily family, int k, const CellGeometry& cell) {
  Stopwatch sw;
  VerificationReport r;
  std::string where;
  for (const auto& v : cell.vertices) where += "(" + to_string(v[0]) + "," + to_string(v[1]) + "," + to_string(v[2]) + ")";
  r.claim = "unisolvence:grid=" + cell.grid + ":family=" + to_string(family) + ":k=" + std::to_string(k) + ":cell=" + where;
  const FiniteElementDef def = local_element(cell.as_mesh(), 0, family, k);
  const UnisolvenceCertificate cert = certify_unisolvence(def);
  r.dims["shape"] = as_ll(cert.dim);
  r.dims["dofs"] = as_ll(cert.dofs);
  r.ranks["dof_matrix"] = as_ll(cert.rank);
  r.expect_eq("DOF count equals shape dimension", as_ll(cert.dofs), as_ll(cert.dim));
  std::string w = std::to_string(cert.dofs) + "x" + std::to_string(cert.dim) + " DOF matrix ";
  w += cert.nonsingular ? "nonsingular" : "singular";
  if (cert.witness) w += "; annihilated shape function " + cert.witness->to_string();
  r.expect(cert.nonsingular, w);
  r.millis = sw.millis();
  return r;
}

// --- Global complexes -------------------------------------------------------------

VerificationReport check_exactness_global(const MeshComplex& mesh, int k, const std::string& mesh_name) {
  Stopwatch sw;
  VerificationReport r;
  r.claim = "global-exactness:grid=" + to_string(mesh.type) + ":mesh=" + mesh_name + ":k=" + std::to_string(k);
  r.expect_eq("Euler characteristic", mesh.euler_characteristic(), 1);
  std::array<GlobalSpace, 4> s;
  for (std::size_t i = 0; i < 4; ++i) {
    s[i] = assemble_global_space(mesh, kFamilies[i], k);
    r.dims[to_string(kFamilies[i])] = as_ll(s[i].dim);
  }
  const std::array<OperatorTag, 3> ops{OperatorTag::dev_grad, OperatorTag::sym_curl, OperatorTag::div_div};
  std::array<RatMatrix, 3> t;
  std::array<long long, 3> rank{};
  for (std::size_t i = 0; i < 3; ++i) {
    t[i] = operator_matrix(ops[i], s[i], s[i + 1]).matrix;
    rank[i] = as_ll(exact_rank(t[i]).rank);
    r.ranks[to_string(ops[i])] = rank[i];
  }
  const auto d = [&](std::size_t i) { return as_ll(s[i].dim); };
  r.expect((t[1] * t[0]).is_zero(), "sym_curl o dev_grad = 0 as a matrix product");
  r.expect((t[2] * t[1]).is_zero(), "div_div o sym_curl = 0 as a matrix product");
  r.expect_eq("rank(dev_grad) = dim V - 4", rank[0], d(0) - 4);
  r.expect_eq("rank(sym_curl) = dim U - rank(dev_grad)", rank[1], d(1) - rank[0]);
  r.expect_eq("rank(div_div) = dim Q", rank[2], d(3));
  r.expect_eq("rank(sym_curl) = dim Sigma - dim Q", rank[1], d(2) - d(3));
  r.expect_eq("dim V - dim U + dim Sigma - dim Q", d(0) - d(1) + d(2) - d(3), 4);
  const long long kk = k;
  const long long V = as_ll(mesh.num_vertices()), E = as_ll(mesh.num_edges()), F = as_ll(mesh.num_faces()),
                  T = as_ll(mesh.num_cells());
  if (mesh.type == CellType::tet) {
    for (std::size_t i = 0; i < 4; ++i)
      r.expect_eq("dim " + to_string(kFamilies[i]) + " (entity-weighted closed form)", d(i), tet_formula(kFamilies[i], kk, mesh));
  } else {
    r.expect_eq("rank(sym_curl) (entity-weighted closed form)", rank[1],
                -4 * V + (kk + 3) * E + (4 * kk * kk - 10 * kk + 2) * F + (5 * kk * kk * kk - 27 * kk * kk + 42 * kk - 16) * T + 4);
    r.expect_eq("dim ker(div_div) (entity-weighted closed form)", d(2) - rank[2],
                (kk - 1) * E + (4 * kk * kk - 10 * kk + 6) * F + (5 * kk * kk * kk - 27 * kk * kk + 42 * kk - 20) * T);
  }
  r.millis = sw.millis();
  return r;
}

VerificationReport check_kernel_characterization(const MeshComplex& mesh, int k, const std::string& mesh_name,
                                                 std::uint64_t seed, int samples) {
  Stopwatch sw;
  VerificationReport r;
  r.claim = "kernel-characterization:grid=" + to_string(mesh.type) + ":mesh=" + mesh_name + ":k=" + std::to_string(k);
  const GlobalSpace V = assemble_global_space(mesh, SpaceFamily::V, k);
  const GlobalSpace U = assemble_global_space(mesh, SpaceFamily::U, k);
  const GlobalSpace S = assemble_global_space(mesh, SpaceFamily::Sigma, k);
  const RatMatrix t1 = operator_matrix(OperatorTag::dev_grad, V, U).matrix;
  const RatMatrix t2 = operator_matrix(OperatorTag::sym_curl, U, S).matrix;
  r.dims["V"] = as_ll(V.dim);
  r.dims["U"] = as_ll(U.dim);

  // Gauge: the value at one vertex and the integral of the divergence over the domain.
  RatMatrix gauge(4, V.dim);
  const Vec3 x0 = mesh.vertices[mesh.cells[0][0]];
  for (std::size_t c = 0; c < mesh.num_cells(); ++c) {
    const auto& shape = V.elements[c].shape;
    for (std::size_t s = 0; s < shape.dim(); ++s) {
      const Rational div_int = cell_integral(mesh, c, div(shape[s]).value());
      std::array<Rational, 3> at0;
      if (c == 0)
        for (std::size_t m = 0; m < 3; ++m) at0[m] = shape[s][m].evaluate(x0);
      for (std::size_t i = 0; i < V.dof_map[c].size(); ++i) {
        const Rational& a = V.nodal[c](s, i);
        if (sgn(a) == 0) continue;
        const std::size_t g = V.dof_map[c][i];
        if (c == 0)
          for (std::size_t m = 0; m < 3; ++m) gauge(m, g) += a * at0[m];
        gauge(3, g) += a * div_int;
      }
    }
  }
  const RatMatrix system = t1.vstack(gauge);

  // The gauge must pin down RT, the kernel of dev grad, interpolated from global fields.
  std::vector<TensorField> rt{constant_vector_field(unit_vector(0)), constant_vector_field(unit_vector(1)),
                              constant_vector_field(unit_vector(2)),
                              TensorField::vector({Polynomial::variable(0), Polynomial::variable(1), Polynomial::variable(2)})};
  std::vector<RatVector> rt_coeffs;
  for (const auto& f : rt) {
    rt_coeffs.push_back(interpolate(V, std::vector<TensorField>(mesh.num_cells(), f)));
    r.expect(t1.apply(rt_coeffs.back()) == RatVector(U.dim), "dev_grad annihilates the interpolant of " + f.to_string());
  }
  const RankResult k1 = exact_rank(t1);
  r.ranks["dev_grad"] = as_ll(k1.rank);
  r.expect_eq("dim ker(dev_grad)", as_ll(V.dim - k1.rank), 4);
  r.expect_eq("rank of the RT interpolants", as_ll(exact_rank(RatMatrix::from_columns(rt_coeffs, V.dim)).rank), 4);
  r.expect_eq("rank of gauge on RT", as_ll(exact_rank(gauge * RatMatrix::from_columns(rt_coeffs, V.dim)).rank), 4);

  RationalRng rng(seed);
  auto recover = [&](const RatVector& u, const std::string& label) {
    RatVector rhs = u;
    rhs.resize(rhs.size() + 4);
    const auto v = solve_consistent(system, rhs);
    if (!v) {
      r.expect(false, label + ": no dev grad preimage in V_h");
      return;
    }
    r.expect(t1.apply(*v) == u, label + ": dev_grad v = u exactly");
  };

  for (int i = 0; i < samples; ++i) {
    RatVector v(V.dim);
    for (auto& x : v) x = rng.next();
    recover(t1.apply(v), "dev grad of random v #" + std::to_string(i));
  }
  const RankResult k2 = exact_rank(t2);
  r.ranks["sym_curl"] = as_ll(k2.rank);
  r.dims["ker(sym_curl)"] = as_ll(k2.nullspace.size());
  for (int i = 0; i < samples; ++i) {
    RatVector u(U.dim);
    for (const auto& n : k2.nullspace) {
      const Rational a = rng.next();
      for (std::size_t j = 0; j < u.size(); ++j) u[j] += a * n[j];
    }
    r.expect(t2.apply(u) == RatVector(S.dim), "random kernel element #" + std::to_string(i) + " has sym_curl u = 0");
    recover(u, "random kernel element #" + std::to_string(i));
  }
  // Zero field: the gauged system has the single solution 0, i.e. the preimage set is RT.
  r.expect_eq("rank of gauged dev_grad system", as_ll(exact_rank(system).rank), as_ll(V.dim));
  r.millis = sw.millis();
  return r;
}

// --- Identity suite -----------------------------------------------------------------

VerificationReport check_identity_suite(int samples, std::uint64_t seed) {
  Stopwatch sw;
  VerificationReport r;
  r.claim = "identity-suite:samples=" + std::to_string(samples);
  RationalRng rng(seed, 4);
  const std::vector<std::string> names{"sym_curl o dev_grad = 0",
                                       "div_div o sym_curl = 0",
                                       "(sym curl u) n = (curl u) n - 1/2 (div* u) x n",
                                       "(div sym curl u) . n = 1/2 curl(div* u) . n",
                                       "div*(dev grad v) x n = 2/3 grad(div v) x n",
                                       "rot_f v = n . curl v",
                                       "Green identity, normal-divergence form",
                                       "Green identity, edge form"};
  std::vector<int> failures(names.size(), 0);
  for (int s = 0; s < samples; ++s) {
    const TensorField v = rng.field(Shape::vector, 3);
    const TensorField u = rng.field(Shape::matrix, 3, SymmetryTag::traceless);
    const TensorField sigma = rng.field(Shape::matrix, 3, SymmetryTag::symmetric);
    const TensorField q = rng.field(Shape::scalar, 4);
    Vec3 n = rng.vec3();
    while (is_zero(n)) n = rng.vec3();
    Vec3 t = cross(n, rng.vec3());
    while (is_zero(t)) t = cross(n, rng.vec3());

    const TensorField su = sym_curl(u);
    const TensorField dsu = div_col(u);
    failures[0] += sym_curl(dev_grad(v)).is_zero() ? 0 : 1;
    failures[1] += div_div(su).is_zero() ? 0 : 1;
    failures[2] += (mat_vec(su, n) - (mat_vec(curl(u), n) - cross(dsu, n) * Rational(1, 2))).is_zero() ? 0 : 1;
    failures[3] += (dot(div(su), n) - dot(curl(dsu), n) * Rational(1, 2)).is_zero() ? 0 : 1;
    failures[4] += (cross(div_col(dev_grad(v)), n) - cross(grad(div(v)), n) * Rational(2, 3)).is_zero() ? 0 : 1;
    failures[5] += (rot_f(v, make_face_frame(n, t)).value() - dot(curl(v), n)).is_zero() ? 0 : 1;
    const auto res = verify_green_identities(sigma, q, rng.tetrahedron());
    failures[6] += sgn(res[0]) == 0 ? 0 : 1;
    failures[7] += sgn(res[1]) == 0 ? 0 : 1;
  }
  r.dims["samples"] = samples;
  for (std::size_t i = 0; i < names.size(); ++i) {
    r.ranks["failures: " + names[i]] = failures[i];
    r.expect(failures[i] == 0, names[i] + ": " + std::to_string(failures[i]) + " nonzero residuals in " +
                                   std::to_string(samples) + " samples");
  }
  r.millis = sw.millis();
  return r;
}

// --- Nodal basis export ---------------------------------------------------------------

std::string export_basis_json(SpaceFamily family, int k, const CellGeometry& cell) {
  const FiniteElementDef def = local_element(cell.as_mesh(), 0, family, k);
  const RatMatrix a = dof_matrix(def);
  const std::vector<TensorField> fields = nodal_fields(def, nodal_coefficients(a));
  Json j;
  j["grid"] = cell.grid;
  j["family"] = to_string(family);
  j["k"] = k;
  j["vertices"] = Json::array();
  for (const auto& v : cell.vertices) j["vertices"].push_back({to_string(v[0]), to_string(v[1]), to_string(v[2])});
  j["shape"] = to_string(def.shape.shape());
  j["symmetry"] = to_string(def.shape.tag());
  j["dofs"] = Json::array();
  for (const auto& d : def.dofs) j["dofs"].push_back({{"entity", def.entities[d.entity].label}, {"group", d.group}});
  j["fields"] = Json::array();
  for (const auto& f : fields) {
    Json entries = Json::array();
    for (const auto& p : f.entries()) entries.push_back(poly_json(p));
    j["fields"].push_back(std::move(entries));
  }
  return j.dump();
}

VerificationReport check_basis_json(const std::string& text) {
  Stopwatch sw;
  const Json j = Json::parse(text);
  CellGeometry cell;
  cell.grid = j.at("grid").get<std::string>();
  for (const auto& v : j.at("vertices"))
    cell.vertices.push_back({parse_rational(v.at(0).get<std::string>()), parse_rational(v.at(1).get<std::string>()),
                             parse_rational(v.at(2).get<std::string>())});
  const SpaceFamily family = parse_family(j.at("family").get<std::string>());
  const int k = j.at("k").get<int>();
  VerificationReport r;
  r.claim = "basis-duality:grid=" + cell.grid + ":family=" + to_string(family) + ":k=" + std::to_string(k);
  const FiniteElementDef def = local_element(cell.as_mesh(), 0, family, k);
  std::vector<TensorField> fields;
  for (const auto& f : j.at("fields")) {
    std::vector<Polynomial> e;
    for (const auto& p : f) e.push_back(poly_from_json(p));
    if (e.size() != entry_count(def.shape.shape())) throw std::invalid_argument("basis JSON: wrong entry count");
    switch (def.shape.shape()) {
      case Shape::scalar: fields.push_back(TensorField::scalar(e[0])); break;
      case Shape::vector: fields.push_back(TensorField::vector({e[0], e[1], e[2]})); break;
      case Shape::matrix: {
        std::array<Polynomial, 9> m;
        std::copy(e.begin(), e.end(), m.begin());
        // Untagged on import: a corrupted entry must show up as a span failure, not a throw.
        fields.push_back(TensorField::matrix(m, SymmetryTag::general));
        break;
      }
    }
  }
  r.dims["fields"] = as_ll(fields.size());
  r.dims["dofs"] = as_ll(def.dofs.size());
  r.expect_eq("field count equals DOF count", as_ll(fields.size()), as_ll(def.dofs.size()));
  const SpanTester shape(def.shape.basis());
  std::size_t outside = 0;
  for (const auto& f : fields) outside += shape.contains(f) ? 0 : 1;
  r.expect(outside == 0, "imported fields lie in the shape space (" + std::to_string(outside) + " outside)");
  if (fields.size() == def.dofs.size() && outside == 0) {
    if (def.shape.shape() == Shape::matrix)
      for (auto& f : fields) f.with_tag(def.shape.tag());
    DofEvaluator ev(def);
    r.expect(ev.matrix(fields) == RatMatrix::identity(fields.size()), "DOF_i(field_j) = delta_ij exactly");
  }
  r.millis = sw.millis();
  return r;
}

}  // namespace divdiv
