// Acceptance run: one PASS/FAIL line per criterion, nonzero exit if any fails.
#include "divdiv/box_elements.hpp"
#include "divdiv/random.hpp"
#include "divdiv/verify.hpp"

#include <chrono>
#include <functional>
#include <iostream>
#include <sstream>

using namespace divdiv;

namespace {

struct Outcome {
  bool pass = true;
  std::ostringstream detail;
  std::vector<std::string> failures;

  void require(bool ok, const std::string& what) {
    if (!ok) {
      pass = false;
      failures.push_back(what);
    }
  }
  void take(const VerificationReport& r) {
    if (r.pass) return;
    pass = false;
    for (const auto& w : r.witnesses)
      if (w.rfind("FAILED ", 0) == 0) failures.push_back(r.claim + ": " + w);
    if (failures.empty()) failures.push_back(r.claim + " failed");
  }
};

CellGeometry random_cuboid(std::uint64_t seed) {
  RationalRng rng(seed);
  const Vec3 lo = rng.vec3();
  Vec3 hi = lo;
  for (std::size_t a = 0; a < 3; ++a) {
    Rational h(rng.uniform_int(1, 7), rng.uniform_int(1, 4));
    h.canonicalize();
    hi[a] += h;
  }
  return {"box", {lo, hi}};
}

CellGeometry random_tet(std::uint64_t seed) {
  RationalRng rng(seed);
  const auto x = rng.tetrahedron();
  return {"tet", {x.begin(), x.end()}};
}

long long dim_of(const VerificationReport& r, const std::string& key) { return r.dims.count(key) ? r.dims.at(key) : -1; }
long long rank_of(const VerificationReport& r, const std::string& key) {
  return r.ranks.count(key) ? r.ranks.at(key) : -1;
}

// 1. Cuboid shape space dimensions for k = 3, 4, 5.
void dimensions(Outcome& o) {
  for (long long k = 3; k <= 5; ++k) {
    const VerificationReport r = check_dimensions("box", static_cast<int>(k));
    o.take(r);
    const long long sigma = 3 * (k + 1) * (k - 1) * (k - 1) + 3 * k * k * (k - 1), u = 8 * k * k * k - 6 * k,
                    v = 3 * (k + 1) * k * k;
    o.require(dim_of(r, "Sigma") == sigma, "dim Sigma at k=" + std::to_string(k));
    o.require(dim_of(r, "U") == u, "dim U at k=" + std::to_string(k));
    o.require(dim_of(r, "V") == v, "dim V at k=" + std::to_string(k));
    o.detail << "k=" << k << ":" << sigma << "/" << u << "/" << v << " ";
  }
}

// 2. Nonsingular DOF matrices.
void unisolvence(Outcome& o) {
  std::size_t count = 0, largest = 0;
  auto run = [&](SpaceFamily f, int k, const CellGeometry& cell) {
    const VerificationReport r = check_unisolvence(f, k, cell);
    o.take(r);
    o.require(rank_of(r, "dof_matrix") == dim_of(r, "shape") && dim_of(r, "shape") == dim_of(r, "dofs"),
              r.claim + " is not square and full rank");
    largest = std::max(largest, static_cast<std::size_t>(dim_of(r, "shape")));
    ++count;
  };
  for (const CellGeometry& cell : {CellGeometry::unit_box(), random_cuboid(101)})
    for (int k = 3; k <= 4; ++k)
      for (auto f : {SpaceFamily::Sigma, SpaceFamily::U, SpaceFamily::V}) run(f, k, cell);
  for (const CellGeometry& cell : {CellGeometry::reference_tet(), random_tet(102)}) {
    run(SpaceFamily::Sigma, 3, cell);
    run(SpaceFamily::Sigma, 4, cell);
    run(SpaceFamily::U, 4, cell);
    run(SpaceFamily::V, 4, cell);
  }
  o.detail << count << " elements, largest " << largest << "x" << largest;
}

// 3. Polynomial complexes.
void polynomial_complexes(Outcome& o) {
  for (int k = 3; k <= 4; ++k) o.take(check_polynomial_derham(k));
  o.take(check_polynomial_derham(1, 1, 1));
  o.take(check_polynomial_derham(2, 1, 0));
  for (long long k = 3; k <= 4; ++k) {
    const VerificationReport r = check_polynomial_divdiv(static_cast<int>(k));
    o.take(r);
    const long long want = 5 * k * k * k - 3 * k * k - 6 * k + 4;
    o.require(rank_of(r, "sym_curl") == want, "rank sym curl at k=" + std::to_string(k));
    o.detail << "rank sym curl k=" << k << ": " << rank_of(r, "sym_curl") << " ";
  }
}

// 4. Constrained interior spaces on a tetrahedron.
void constrained(Outcome& o) {
  for (long long k = 4; k <= 5; ++k) {
    const VerificationReport r = check_constrained_spaces(static_cast<int>(k));
    o.take(r);
    const long long w = (2 * k * k * k - 3 * k * k - 5 * k - 12) / 6, m = (k * k * k - 3 * k * k - 4 * k + 12) / 2;
    o.require(dim_of(r, "curl W_k / RM") == w, "dim W quotient at k=" + std::to_string(k));
    o.require(dim_of(r, "curl curl* M_{k+2}") == m, "dim M image at k=" + std::to_string(k));
    o.detail << "k=" << k << ": " << dim_of(r, "curl W_k / RM") << "/" << dim_of(r, "curl curl* M_{k+2}") << " ";
  }
}

void global_common(Outcome& o, const VerificationReport& r) {
  o.take(r);
  const long long alt = dim_of(r, "V") - dim_of(r, "U") + dim_of(r, "Sigma") - dim_of(r, "Q");
  o.require(alt == 4, r.claim + ": alternating sum " + std::to_string(alt));
  o.require(rank_of(r, "dev_grad") == dim_of(r, "V") - 4, r.claim + ": rank dev grad");
  o.require(rank_of(r, "sym_curl") == dim_of(r, "U") - rank_of(r, "dev_grad"), r.claim + ": rank sym curl");
  o.require(rank_of(r, "div_div") == dim_of(r, "Q"), r.claim + ": rank div div");
  o.require(rank_of(r, "sym_curl") == dim_of(r, "Sigma") - dim_of(r, "Q"), r.claim + ": kernel of div div");
}

// 5. Assembled cuboid complexes.
void global_box(Outcome& o) {
  const VerificationReport one = check_exactness_global(build_box_mesh(1, 1, 1), 3, "1x1x1");
  global_common(o, one);
  // Entity-weighted closed form -4V + (k+3)E + (4k^2-10k+2)F + (5k^3-27k^2+42k-16)T + 4 at one cube.
  const long long k = 3;
  const long long formula =
      -4 * 8 + (k + 3) * 12 + (4 * k * k - 10 * k + 2) * 6 + (5 * k * k * k - 27 * k * k + 42 * k - 16) + 4;
  o.require(rank_of(one, "sym_curl") == 94 && formula == 94, "rank sym curl on one cube");
  const VerificationReport two = check_exactness_global(build_box_mesh(2, 1, 1), 3, "2x1x1");
  global_common(o, two);
  o.detail << "1x1x1 ranks " << rank_of(one, "dev_grad") << "/" << rank_of(one, "sym_curl") << "/"
           << rank_of(one, "div_div") << ", 2x1x1 ranks " << rank_of(two, "dev_grad") << "/"
           << rank_of(two, "sym_curl") << "/" << rank_of(two, "div_div");
}

// 6. Assembled tetrahedral complexes.
void global_tet(Outcome& o) {
  const VerificationReport one = check_exactness_global(single_tet_mesh(), 4, "single");
  global_common(o, one);
  o.require(dim_of(one, "V") == 252 && dim_of(one, "U") == 448 && dim_of(one, "Sigma") == 210 &&
                dim_of(one, "Q") == 10,
            "single tet dimensions");
  const VerificationReport two = check_exactness_global(two_tet_mesh(), 4, "two");
  global_common(o, two);
  o.detail << "single " << dim_of(one, "V") << "/" << dim_of(one, "U") << "/" << dim_of(one, "Sigma") << "/"
           << dim_of(one, "Q") << ", two " << dim_of(two, "V") << "/" << dim_of(two, "U") << "/"
           << dim_of(two, "Sigma") << "/" << dim_of(two, "Q");
}

// 7. Randomized identities.
void identities(Outcome& o) {
  const VerificationReport r = check_identity_suite(120, 2024);
  o.take(r);
  long long failures = 0;
  for (const auto& [name, n] : r.ranks) failures += n;
  o.require(failures == 0, std::to_string(failures) + " nonzero residuals");
  o.detail << r.dims.at("samples") << " samples, " << r.ranks.size() << " identity families, " << failures
           << " failures";
}

// 8. Constructive div div preimages.
void constructive(Outcome& o) {
  const VerificationReport r = check_divdiv_surjectivity_constructive(two_tet_mesh(), 4, "two");
  o.take(r);
  o.detail << "two tets, k=4, " << r.witnesses.size() << " checks";
}

}  // namespace

int main() {
  const std::vector<std::pair<std::string, std::function<void(Outcome&)>>> criteria{
      {"cuboid shape space dimensions", dimensions},
      {"unisolvence of all element families", unisolvence},
      {"polynomial complex exactness", polynomial_complexes},
      {"constrained interior space dimensions", constrained},
      {"global exactness on cuboid meshes", global_box},
      {"global exactness on tetrahedral meshes", global_tet},
      {"randomized identity suite", identities},
      {"constructive div div surjectivity", constructive},
  };
  bool all = true;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    Outcome o;
    const auto start = std::chrono::steady_clock::now();
    try {
      criteria[i].second(o);
    } catch (const std::exception& e) {
      o.pass = false;
      o.failures.push_back(std::string("exception: ") + e.what());
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    all = all && o.pass;
    std::cout << (o.pass ? "PASS" : "FAIL") << " criterion " << i + 1 << ": " << criteria[i].first << " ("
              << o.detail.str() << ") [" << static_cast<long long>(secs * 1000) << " ms]" << std::endl;
    for (const auto& f : o.failures) std::cout << "    " << f << "\n";
  }
  return all ? 0 : 1;
}
