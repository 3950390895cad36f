// Constructive div div preimages on tetrahedral meshes.
//
// Given q_h, first find a piecewise P_{k-1} vector field v_h with continuous normal
// trace, single-valued vertex values and div v_h = q_h. Then fix the Sigma_h DOFs:
//   sigma(a) = 0, div sigma(a) = v_h(a), face moments of div sigma . n = those of v_h . n,
// so div u_h . n = v_h . n on every face. Integration by parts on a cell K gives, for p in P_{k-2}(K),
//   (div div u_h - q_h, p)_K = (u_h, hess p)_K - sum_f eps_Kf (u_h n_f, grad p)_f + (v_h, grad p)_K,
// with eps_Kf = +1 when n_f leaves K. Linear p leave only the face constants (u_h n_f, e_m)_f,
// which solve a signed cell-face incidence system. The higher moments of u_h n_f
// are set to zero, and the interior hessian moments absorb the rest.

#include "divdiv/linalg.hpp"
#include "divdiv/operators.hpp"
#include "divdiv/random.hpp"
#include "divdiv/tet_spaces.hpp"
#include "divdiv/verify.hpp"

#include <chrono>
#include <map>
#include <memory>
#include <stdexcept>

namespace divdiv {

namespace {

Polynomial antiderivative(const Polynomial& p, int axis) {
  std::vector<Polynomial::Term> terms;
  for (const auto& t : p.terms()) {
    const MultiIndex e = t.exponents();
    std::array<int, 3> x{e[0], e[1], e[2]};
    ++x[static_cast<std::size_t>(axis)];
    terms.push_back({MultiIndex(x[0], x[1], x[2]).pack(), Rational(t.coeff / x[static_cast<std::size_t>(axis)])});
  }
  return Polynomial::from_terms(std::move(terms));
}

/// Linear system assembled row by row over a fixed number of unknowns.
struct RowSystem {
  std::size_t cols = 0;
  std::vector<RatVector> rows;
  RatVector rhs;

  RatVector& add_row(const Rational& b) {
    rows.emplace_back(cols);
    rhs.push_back(b);
    return rows.back();
  }
  std::optional<RatVector> solve() const {
    if (rows.empty()) return RatVector(cols);
    return solve_consistent(RatMatrix::from_rows(rows, cols), rhs);
  }
};

/// Per-mesh data shared by every q_h.
class PreimageBuilder {
 public:
  explicit PreimageBuilder(const GlobalSpace& sigma) : sigma_(sigma), mesh_(sigma.mesh), k_(sigma.k) {
    if (mesh_.type != CellType::tet) throw std::invalid_argument("constructive div div preimage needs a tet mesh");
    if (sigma.family != SpaceFamily::Sigma) throw std::invalid_argument("constructive div div preimage needs Sigma_h");
    basis_ = vector_polys(k_ - 1);
    for (const auto& phi : basis_.basis()) basis_div_.push_back(div(phi).value());
    for (std::size_t c = 0; c < mesh_.num_cells(); ++c) {
      cells_.push_back(mesh_.tet_cell(c));
      evaluators_.push_back(std::make_unique<DofEvaluator>(sigma.elements[c]));
      quotients_.push_back(space_P_mod_P1(k_ - 2, cells_.back()));
    }
    face_weight_count_ = face_weights_mean_split(k_ - 3).size();
  }

  DivDivPreimage build(const std::vector<Polynomial>& q) {
    DivDivPreimage out;
    if (q.size() != mesh_.num_cells()) throw std::invalid_argument("one q polynomial per cell required");
    for (const auto& p : q)
      if (p.degree() > k_ - 2) throw std::invalid_argument("q_h exceeds degree k - 2");
    const auto v = solve_v(q);
    if (!v) {
      out.failure = "no piecewise P_{k-1} field with continuous normal trace and vertex values has divergence q_h";
      return out;
    }
    out.v_coefficients = *v;
    std::vector<TensorField> vh;
    for (std::size_t c = 0; c < mesh_.num_cells(); ++c) vh.push_back(v_on_cell(*v, c));
    const auto constants = face_constants(vh);
    if (!constants) {
      out.failure = "face constant system is inconsistent";
      return out;
    }
    out.u_dofs = RatVector(sigma_.dim);
    std::vector<bool> set(sigma_.dim, false);
    for (std::size_t c = 0; c < mesh_.num_cells(); ++c) {
      const RatVector local = cell_dofs(c, vh[c], *constants);
      for (std::size_t i = 0; i < local.size(); ++i) {
        const std::size_t g = sigma_.dof_map[c][i];
        if (!set[g]) {
          out.u_dofs[g] = local[i];
          set[g] = true;
        } else if (out.u_dofs[g] != local[i]) {
          out.failure = "shared DOF " + std::to_string(g) + " takes two values (cell " + std::to_string(c) + ")";
          return out;
        }
      }
    }
    out.solved = true;
    return out;
  }

  TensorField v_on_cell(const RatVector& coeffs, std::size_t c) const {
    const std::size_t nb = basis_.dim();
    return basis_.combine(RatVector(coeffs.begin() + static_cast<long>(c * nb), coeffs.begin() + static_cast<long>((c + 1) * nb)));
  }

 private:
  std::optional<RatVector> solve_v(const std::vector<Polynomial>& q) const {
    const std::size_t nb = basis_.dim();
    const std::size_t nc = mesh_.num_cells();
    RowSystem sys{nb * nc, {}, {}};
    const auto col = [&](std::size_t c, std::size_t s) { return c * nb + s; };
    for (std::size_t c = 0; c < nc; ++c)
      for (const auto& m : monomials_total_degree(k_ - 2)) {
        RatVector& row = sys.add_row(q[c].coefficient(m));
        for (std::size_t s = 0; s < nb; ++s) row[col(c, s)] = basis_div_[s].coefficient(m);
      }
    // Normal continuity, in the parameters of the face through its sorted vertices.
    for (std::size_t f = 0; f < mesh_.num_faces(); ++f) {
      if (mesh_.is_boundary_face(f)) continue;
      const auto& fv = mesh_.faces[f];
      const Entity tri = make_triangle(mesh_.vertices[fv[0]], mesh_.vertices[fv[1]], mesh_.vertices[fv[2]]);
      const Vec3 n = cross(tri.axes[0], tri.axes[1]);
      std::map<std::uint32_t, RatVector> by_key;
      for (std::size_t side = 0; side < 2; ++side) {
        const std::size_t c = mesh_.face_cells[f][side];
        const Rational sign = side == 0 ? 1 : -1;
        for (std::size_t s = 0; s < nb; ++s) {
          const Polynomial trace = restrict_to_entity(dot(basis_[s], n), tri);
          for (const auto& t : trace.terms()) {
            auto& row = by_key.try_emplace(t.key, RatVector(sys.cols)).first->second;
            row[col(c, s)] += sign * t.coeff;
          }
        }
      }
      for (auto& [key, row] : by_key) {
        sys.add_row(0) = std::move(row);
      }
    }
    // Single-valued vertex values.
    std::vector<std::vector<std::size_t>> cells_at(mesh_.num_vertices());
    for (std::size_t c = 0; c < nc; ++c)
      for (auto a : mesh_.cells[c]) cells_at[a].push_back(c);
    for (std::size_t a = 0; a < mesh_.num_vertices(); ++a)
      for (std::size_t j = 1; j < cells_at[a].size(); ++j)
        for (std::size_t m = 0; m < 3; ++m) {
          RatVector& row = sys.add_row(0);
          for (std::size_t s = 0; s < nb; ++s) {
            const Rational val = basis_[s][m].evaluate(mesh_.vertices[a]);
            row[col(cells_at[a][0], s)] += val;
            row[col(cells_at[a][j], s)] -= val;
          }
        }
    return sys.solve();
  }

  /// c[f][m] = (u_h n_f, e_m)_f with unit normals: sum_f eps_Kf c[f] = (v_h, 1)_K on every K.
  std::optional<std::vector<Vec3>> face_constants(const std::vector<TensorField>& vh) const {
    std::vector<Vec3> out(mesh_.num_faces());
    for (std::size_t m = 0; m < 3; ++m) {
      RowSystem sys{mesh_.num_faces(), {}, {}};
      for (std::size_t c = 0; c < mesh_.num_cells(); ++c) {
        RatVector& row = sys.add_row(cells_[c].integrate(vh[c][m]));
        for (std::size_t lf = 0; lf < 4; ++lf) row[mesh_.cell_faces[c][lf]] += mesh_.face_sign(c, lf);
      }
      const auto x = sys.solve();
      if (!x) return std::nullopt;
      for (std::size_t f = 0; f < out.size(); ++f) out[f][static_cast<int>(m)] = (*x)[f];
    }
    return out;
  }

  RatVector cell_dofs(std::size_t c, const TensorField& v, const std::vector<Vec3>& constants) {
    const FiniteElementDef& def = sigma_.elements[c];
    const TetElement& K = cells_[c];
    // A symmetric field whose divergence is v reproduces every div-based functional of v.
    const TensorField tau = TensorField::matrix(
        {antiderivative(v[0], 0), 0, 0, 0, antiderivative(v[1], 1), 0, 0, 0, antiderivative(v[2], 2)},
        SymmetryTag::symmetric);
    const RatVector tau_dofs = evaluators_[c]->evaluate(tau);
    RatVector out(def.dofs.size());
    std::map<std::pair<std::size_t, std::string>, std::size_t> position;
    for (std::size_t i = 0; i < def.dofs.size(); ++i) {
      const auto& d = def.dofs[i];
      const std::size_t p = position[{d.entity, d.group}]++;
      if (d.group == "vertex-div" || d.group == "face-div-normal") {
        out[i] = tau_dofs[i];
      } else if (d.group == "face-traction") {
        const int lf = static_cast<int>(d.entity - TetElement::face_index(0));
        check_unit_measure(K, lf);
        if (p % face_weight_count_ == 0)
          out[i] = constants[mesh_.cell_faces[c][static_cast<std::size_t>(lf)]][static_cast<int>(p / face_weight_count_)];
      } else if (d.group == "interior-hessian") {
        const Polynomial& q = quotients_[c][p].value();
        const TensorField g = grad(quotients_[c][p]);
        Rational val = -K.integrate(v[0] * g[0] + v[1] * g[1] + v[2] * g[2]);
        for (std::size_t lf = 0; lf < 4; ++lf) {
          const Entity face = K.face_entity(static_cast<int>(lf));
          const Vec3& cf = constants[mesh_.cell_faces[c][lf]];
          // Only the face mean of grad q meets u_h n_f; the mean-free moments vanish.
          Rational pairing = 0;
          for (int m = 0; m < 3; ++m)
            pairing += cf[m] * integrate_on_entity(q.derivative(m), face).parametric * 2;
          val += mesh_.face_sign(c, lf) * pairing;
        }
        out[i] = val;
      }
    }
    return out;
  }

  /// Face moments are taken in the face parameters against sigma N with the
  /// unnormalized frame normal N; they equal unit-normal moments in the surface
  /// measure exactly when |N| is the parameter area factor.
  static void check_unit_measure(const TetElement& K, int lf) {
    if (norm2(K.face_frame(lf).normal) != K.face_entity(lf).metric_squared())
      throw std::logic_error("face frame normal does not carry the surface measure");
  }

  const GlobalSpace& sigma_;
  const MeshComplex& mesh_;
  int k_;
  PolySpace basis_;
  std::vector<Polynomial> basis_div_;
  std::vector<TetElement> cells_;
  std::vector<std::unique_ptr<DofEvaluator>> evaluators_;
  std::vector<PolySpace> quotients_;
  std::size_t face_weight_count_ = 0;
};

}  // namespace

DivDivPreimage construct_divdiv_preimage(const GlobalSpace& sigma, const std::vector<Polynomial>& q) {
  PreimageBuilder b(sigma);
  return b.build(q);
}

VerificationReport check_divdiv_surjectivity_constructive(const MeshComplex& mesh, int k, const std::string& mesh_name,
                                                          std::uint64_t seed) {
  const auto start = std::chrono::steady_clock::now();
  VerificationReport r;
  r.claim = "divdiv-surjectivity:mesh=" + mesh_name + ":k=" + std::to_string(k);
  const GlobalSpace S = assemble_global_space(mesh, SpaceFamily::Sigma, k);
  const GlobalSpace Q = assemble_global_space(mesh, SpaceFamily::Q, k);
  r.dims["Sigma"] = static_cast<long long>(S.dim);
  r.dims["Q"] = static_cast<long long>(Q.dim);
  PreimageBuilder builder(S);

  auto attempt = [&](const std::vector<Polynomial>& q, const std::string& label) {
    const DivDivPreimage pre = builder.build(q);
    if (!pre.solved) {
      r.expect(false, label + ": " + pre.failure);
      return false;
    }
    for (std::size_t c = 0; c < mesh.num_cells(); ++c) {
      const Polynomial residual = div_div(S.field_on_cell(c, pre.u_dofs)).value() - q[c];
      const TensorField v = builder.v_on_cell(pre.v_coefficients, c);
      const TensorField normal_gap = div(S.field_on_cell(c, pre.u_dofs)) - v;
      const TetElement K = mesh.tet_cell(c);
      for (int lf = 0; lf < 4; ++lf) {
        const Polynomial trace = restrict_to_entity(dot(normal_gap, K.face_frame(lf).normal), K.face_entity(lf));
        if (!trace.is_zero()) {
          r.expect(false, label + ": div u_h . n differs from v_h . n on cell " + std::to_string(c));
          return false;
        }
      }
      if (!residual.is_zero()) {
        r.expect(false, label + ": div div u_h - q_h = " + residual.to_string() + " on cell " + std::to_string(c));
        return false;
      }
    }
    return true;
  };

  std::size_t solved = 0;
  for (std::size_t j = 0; j < Q.dim; ++j) {
    std::vector<Polynomial> q;
    for (std::size_t c = 0; c < mesh.num_cells(); ++c) q.push_back(Q.basis_on_cell(c, j).value());
    solved += attempt(q, "Q basis function " + std::to_string(j)) ? 1 : 0;
  }
  r.expect_eq("Q basis functions with an exact constructed preimage", static_cast<long long>(solved),
              static_cast<long long>(Q.dim));
  RationalRng rng(seed);
  std::vector<Polynomial> q;
  for (std::size_t c = 0; c < mesh.num_cells(); ++c) q.push_back(rng.polynomial(k - 2, 1.0));
  r.expect(attempt(q, "random q_h"), "random q_h: div div u_h = q_h exactly");

  // Independent route: the rank of the assembled div div matrix.
  const auto rank = static_cast<long long>(exact_rank(operator_matrix(OperatorTag::div_div, S, Q).matrix).rank);
  r.ranks["div_div"] = rank;
  r.expect_eq("rank(div_div) = dim Q", rank, static_cast<long long>(Q.dim));
  r.expect((rank == static_cast<long long>(Q.dim)) == (solved == Q.dim), "rank test and construction agree");
  r.millis = std::chrono::duration_cast<std::chrono::milliseconds>(std::chrono::steady_clock::now() - start).count();
  return r;
}

}  // namespace divdiv
