#include "divdiv/tet_elements.hpp"

#include "divdiv/operators.hpp"
#include "divdiv/tet_spaces.hpp"

#include <stdexcept>

namespace divdiv {

namespace {

std::size_t idx(int i, int j) { return static_cast<std::size_t>(3 * i + j); }

const auto kSymCurl = [](const TensorField& u) { return sym_curl(u); };
const auto kDivCol = [](const TensorField& u) { return div_col(u); };
const auto kDiv = [](const TensorField& u) { return div(u); };

using FieldOp = std::function<TensorField(const TensorField&)>;

/// The field itself when op is empty, otherwise the derived field named name.
const TensorField& source(FieldCache& c, const std::string& name, const FieldOp& op) {
  return op ? c.derived(name, op) : c.field();
}

std::string vec_key(const Vec3& v) { return "(" + to_string(v[0]) + "," + to_string(v[1]) + "," + to_string(v[2]) + ")"; }

/// a^T F b for a derived matrix field F.
ExtractorPtr contraction(const std::string& name, FieldOp op, const Vec3& a,
                         const Vec3& b) {
  return make_extractor(name + ":" + vec_key(a) + vec_key(b), [name, op, a, b](FieldCache& c) {
    return contract(a, source(c, name, op), b);
  });
}

/// a . F for a derived vector field F.
ExtractorPtr projection(const std::string& name, FieldOp op, const Vec3& a) {
  return make_extractor(name + "." + vec_key(a), [name, op, a](FieldCache& c) { return dot(source(c, name, op), a); });
}

/// d/dx_axis of entry k of a derived field.
ExtractorPtr derived_derivative(const std::string& name, FieldOp op,
                                std::size_t k, int axis) {
  return make_extractor("d" + std::to_string(axis) + name + "." + std::to_string(k),
                        [name, op, k, axis](FieldCache& c) { return source(c, name, op)[k].derivative(axis); });
}

/// Second derivative d_a d_b of entry k of the field itself or of a derived field.
ExtractorPtr second_derivative(const std::string& name, FieldOp op,
                               std::size_t k, int a, int b) {
  return make_extractor("d" + std::to_string(a) + std::to_string(b) + name + "." + std::to_string(k),
                        [name, op, k, a, b](FieldCache& c) {
                          const TensorField& f = source(c, name, op);
                          return f[k].derivative(a).derivative(b);
                        });
}

/// d . grad (a . v) for a vector field v (the field itself or derived).
ExtractorPtr directional(const std::string& name, FieldOp op, const Vec3& a,
                         const Vec3& d) {
  return make_extractor("D" + name + vec_key(a) + vec_key(d), [name, op, a, d](FieldCache& c) {
    const TensorField& f = source(c, name, op);
    Polynomial s;
    for (std::size_t i = 0; i < f.size(); ++i) {
      if (f.size() > 1 && sgn(a[static_cast<int>(i)]) == 0) continue;
      const Rational w = f.size() > 1 ? a[static_cast<int>(i)] : Rational(1);
      for (int x = 0; x < 3; ++x)
        if (sgn(d[x]) != 0) s.add_scaled(f[i].derivative(x), w * d[x]);
    }
    return s;
  });
}

std::vector<Polynomial> edge_weights(int deg) {
  std::vector<Polynomial> out;
  for (int j = 0; j <= deg; ++j) out.push_back(param_monomial(j));
  return out;
}

/// s^a t^b with a + b <= deg, graded-lex.
std::vector<std::array<int, 2>> face_exponents(int deg) {
  std::vector<std::array<int, 2>> out;
  for (const auto& m : monomials_total_degree(deg))
    if (m[2] == 0) out.push_back({m[0], m[1]});
  return out;
}

std::vector<Polynomial> face_monomials(int deg) {
  std::vector<Polynomial> out;
  for (auto [a, b] : face_exponents(deg)) out.push_back(param_monomial(a, b));
  return out;
}

struct DofBuilder {
  std::vector<DofFunctional>& dofs;

  void point(std::size_t entity, const ExtractorPtr& x, const std::string& group) {
    dofs.push_back({entity, DofKind::point, {{x, Polynomial(1)}}, group});
  }
  void moments(std::size_t entity, const ExtractorPtr& x, const std::vector<Polynomial>& weights,
               const std::string& group) {
    for (const auto& w : weights) dofs.push_back({entity, DofKind::moment, {{x, w}}, group});
  }
  /// (F, w)_K summed over the entries of w, where F is entry_of(e) of the field.
  void field_moments(std::size_t entity, const std::vector<TensorField>& weights,
                     const std::function<ExtractorPtr(std::size_t)>& entry_of, const std::string& group) {
    for (const auto& w : weights) {
      DofFunctional d{entity, DofKind::moment, {}, group};
      for (std::size_t e = 0; e < w.size(); ++e)
        if (!w[e].is_zero()) d.terms.push_back({entry_of(e), w[e]});
      dofs.push_back(std::move(d));
    }
  }
};

void check_degree(TetFamily family, int k) {
  if (k < min_degree(family))
    throw std::invalid_argument("degree " + std::to_string(k) + " below the minimum for family " + to_string(family));
}

/// The five edge contractions t.F.n+, t.F.n-, n+.F.n+, n-.F.n-, n+.F.n-.
std::vector<std::pair<Vec3, Vec3>> edge_frame_pairs(const EdgeFrame& fr) {
  return {{fr.tangent, fr.n_plus}, {fr.tangent, fr.n_minus}, {fr.n_plus, fr.n_plus}, {fr.n_minus, fr.n_minus},
          {fr.n_plus, fr.n_minus}};
}

/// Restriction of an x, y, z polynomial to the parameters of face f.
Polynomial on_face(const TetElement& K, int f, const Polynomial& p) {
  const Entity e = K.face_entity(f);
  AffinePullback pull(e.origin, e.axes);
  return pull.apply(p);
}

void sigma_dofs(DofBuilder& b, int k, const TetElement& K) {
  constexpr std::array<std::size_t, 6> slots{0, 4, 8, 1, 2, 5};
  for (int v = 0; v < 4; ++v) {
    const std::size_t ent = TetElement::vertex_index(v);
    for (auto s : slots) b.point(ent, entry_extractor(s), "vertex-value");
    for (std::size_t i = 0; i < 3; ++i) b.point(ent, derived_entry_extractor("div", kDiv, i), "vertex-div");
  }
  for (int e = 0; e < 6; ++e)
    for (const auto& [l, r] : edge_frame_pairs(K.edge_frame(e)))
      b.moments(TetElement::edge_index(e), contraction("self", nullptr, l, r), edge_weights(k - 2), "edge-frame");
  const PolySpace ptilde = space_Ptilde_face(k - 1);
  for (int f = 0; f < 4; ++f) {
    const std::size_t ent = TetElement::face_index(f);
    const Vec3& n = K.face_frame(f).normal;
    for (int m = 0; m < 3; ++m) {
      Vec3 em = unit_vector(m);
      b.moments(ent, contraction("self", nullptr, em, n), face_weights_mean_split(k - 3), "face-traction");
    }
    std::vector<Polynomial> w;
    for (const auto& q : ptilde.basis()) w.push_back(q.value());
    b.moments(ent, projection("div", kDiv, n), w, "face-div-normal");
  }
  const std::size_t cell = TetElement::cell_index();
  auto self = [](std::size_t e) { return entry_extractor(e); };
  std::vector<TensorField> hess;
  const PolySpace quotient = space_P_mod_P1(k - 2, K);
  for (const auto& q : quotient.basis()) hess.push_back(hessian(q));
  b.field_moments(cell, hess, self, "interior-hessian");
  std::vector<TensorField> grads;
  const PolySpace w = space_W_quotient(k, K);
  for (const auto& q : w.basis()) grads.push_back(grad(q));
  b.field_moments(cell, grads, self, "interior-grad-W");
  b.field_moments(cell, space_M_image(k, K).basis(), self, "interior-M");
}

void u_dofs(DofBuilder& b, int k, const TetElement& K) {
  // Independent entries of a traceless matrix: u00, u11 and the off-diagonals.
  constexpr std::array<std::size_t, 8> entries{0, 4, 1, 2, 3, 5, 6, 7};
  for (int v = 0; v < 4; ++v) {
    const std::size_t ent = TetElement::vertex_index(v);
    for (auto s : entries) b.point(ent, entry_extractor(s), "vertex-value");
    for (auto s : entries)
      for (int a = 0; a < 3; ++a) b.point(ent, entry_derivative_extractor(s, a), "vertex-grad");
    for (std::size_t i = 0; i < 3; ++i)
      for (int a = 0; a < 3; ++a) b.point(ent, derived_derivative("divc", kDivCol, i, a), "vertex-grad-div");
  }
  for (int e = 0; e < 6; ++e) {
    const std::size_t ent = TetElement::edge_index(e);
    for (auto s : entries) b.moments(ent, entry_extractor(s), edge_weights(k - 3), "edge-value");
    for (std::size_t i = 0; i < 3; ++i)
      b.moments(ent, derived_entry_extractor("divc", kDivCol, i), edge_weights(k - 4), "edge-div");
    for (const auto& [l, r] : edge_frame_pairs(K.edge_frame(e)))
      b.moments(ent, contraction("symcurl", kSymCurl, l, r), edge_weights(k - 2), "edge-frame");
  }
  for (int f = 0; f < 4; ++f) {
    const std::size_t ent = TetElement::face_index(f);
    const FaceFrame& fr = K.face_frame(f);
    const Vec3& n = fr.normal;
    const auto [s, t] = K.face_parameters(f);
    const Polynomial bf = K.face_bubble(f);
    // (u x n, grad_f q) with q = p e_m: row m of u x n against Q grad p, which
    // equals u_m . (n x grad p).
    for (int m = 0; m < 3; ++m)
      for (auto [a, c] : face_exponents(k - 3)) {
        if (a + c == 0) continue;
        const Polynomial p = s.pow(a) * t.pow(c);
        const TensorField g = cross(grad(TensorField::scalar(p)), n);  // grad p x n
        DofFunctional d{ent, DofKind::moment, {}, "face-grad"};
        for (int j = 0; j < 3; ++j) {
          // (n x grad p)_j = -(grad p x n)_j
          const Polynomial w = on_face(K, f, -g[static_cast<std::size_t>(j)]);
          if (!w.is_zero()) d.terms.push_back({entry_extractor(idx(m, j)), w});
        }
        b.dofs.push_back(std::move(d));
      }
    // (u x n, curl_f q) with q = b_f^2 p e_m: row m of curl_f q is n x grad(b_f^2 p),
    // so the pairing is u_m . (n x (n x grad(b_f^2 p))).
    for (int m = 0; m < 3; ++m)
      for (auto [a, c] : face_exponents(k - 4)) {
        const Polynomial p = bf * bf * s.pow(a) * t.pow(c);
        const TensorField g = grad(TensorField::scalar(p));
        const TensorField nxg = Rational(-1) * cross(g, n);
        const TensorField w3 = Rational(-1) * cross(nxg, n);
        DofFunctional d{ent, DofKind::moment, {}, "face-curl"};
        for (int j = 0; j < 3; ++j) {
          const Polynomial w = on_face(K, f, w3[static_cast<std::size_t>(j)]);
          if (!w.is_zero()) d.terms.push_back({entry_extractor(idx(m, j)), w});
        }
        b.dofs.push_back(std::move(d));
      }
    // ((div_col u) x n) . t = div_col u . (n x t) for the two face tangents.
    for (const Vec3& tan : {fr.t_plus, fr.t_minus})
      b.moments(ent, projection("divc", kDivCol, cross(n, tan)), face_monomials(k - 3), "face-div-tangential");
  }
  const std::size_t cell = TetElement::cell_index();
  auto sc = [](std::size_t e) { return derived_entry_extractor("symcurl", kSymCurl, e); };
  std::vector<TensorField> grads;
  const PolySpace w = space_W_quotient(k, K);
  for (const auto& q : w.basis()) grads.push_back(grad(q));
  b.field_moments(cell, grads, sc, "interior-grad-W");
  b.field_moments(cell, space_M_image(k, K).basis(), sc, "interior-M");
  std::vector<TensorField> devgrads;
  const ConstrainedSpace pdiv = space_Pdiv_bubble(k, K);
  for (const auto& q : pdiv.space.basis()) devgrads.push_back(dev_grad(q));
  b.field_moments(cell, devgrads, [](std::size_t e) { return entry_extractor(e); }, "interior-devgrad");
}

void v_dofs(DofBuilder& b, int k, const TetElement& K) {
  for (int v = 0; v < 4; ++v) {
    const std::size_t ent = TetElement::vertex_index(v);
    for (std::size_t i = 0; i < 3; ++i) b.point(ent, entry_extractor(i), "vertex-value");
    for (std::size_t i = 0; i < 3; ++i)
      for (int a = 0; a < 3; ++a) b.point(ent, entry_derivative_extractor(i, a), "vertex-grad");
    for (std::size_t i = 0; i < 3; ++i)
      for (int a = 0; a < 3; ++a)
        for (int c = a; c < 3; ++c) b.point(ent, second_derivative("", nullptr, i, a, c), "vertex-hessian");
    for (int a = 0; a < 3; ++a)
      for (int c = a; c < 3; ++c) b.point(ent, second_derivative("div", kDiv, 0, a, c), "vertex-hessian-div");
  }
  for (int e = 0; e < 6; ++e) {
    const std::size_t ent = TetElement::edge_index(e);
    const EdgeFrame& fr = K.edge_frame(e);
    for (std::size_t i = 0; i < 3; ++i) b.moments(ent, entry_extractor(i), edge_weights(k - 4), "edge-value");
    b.moments(ent, derived_entry_extractor("div", kDiv, 0), edge_weights(k - 5), "edge-div");
    // d(v.n+)/dn+, d(v.n+)/dn-, d(v.t)/dn+, d(v.t)/dn-, d(v.n-)/dn+
    const std::array<std::pair<Vec3, Vec3>, 5> pairs{{{fr.n_plus, fr.n_plus},
                                                      {fr.n_plus, fr.n_minus},
                                                      {fr.tangent, fr.n_plus},
                                                      {fr.tangent, fr.n_minus},
                                                      {fr.n_minus, fr.n_plus}}};
    for (const auto& [a, d] : pairs)
      b.moments(ent, directional("", nullptr, a, d), edge_weights(k - 3), "edge-normal-derivative");
    for (const Vec3& d : {fr.n_plus, fr.n_minus})
      b.moments(ent, directional("div", kDiv, Vec3{1, 0, 0}, d), edge_weights(k - 4), "edge-div-normal-derivative");
  }
  for (int f = 0; f < 4; ++f) {
    const std::size_t ent = TetElement::face_index(f);
    for (std::size_t i = 0; i < 3; ++i) b.moments(ent, entry_extractor(i), face_monomials(k - 4), "face-value");
    b.moments(ent, derived_entry_extractor("div", kDiv, 0), face_monomials(k - 5), "face-div");
  }
  b.field_moments(TetElement::cell_index(), space_Pdiv_bubble(k, K).space.basis(),
                  [](std::size_t e) { return entry_extractor(e); }, "interior");
}

}  // namespace

std::string to_string(TetFamily f) {
  switch (f) {
    case TetFamily::Q: return "Q";
    case TetFamily::Sigma: return "Sigma";
    case TetFamily::U: return "U";
    case TetFamily::V: return "V";
  }
  return "?";
}

int min_degree(TetFamily f) {
  switch (f) {
    case TetFamily::Q: return 2;
    case TetFamily::Sigma: return 3;
    case TetFamily::U:
    case TetFamily::V: return 4;
  }
  return 0;
}

PolySpace shape_space_tet(TetFamily family, int k) {
  check_degree(family, k);
  switch (family) {
    case TetFamily::Q: return span(DegreeSpec::total(k - 2));
    case TetFamily::Sigma: return symmetric_polys(k);
    case TetFamily::U: return traceless_polys(k + 1);
    case TetFamily::V: return vector_polys(k + 2);
  }
  throw std::invalid_argument("shape_space_tet: unknown family");
}

FiniteElementDef make_tet_element(TetFamily family, int k, const TetElement& K) {
  check_degree(family, k);
  FiniteElementDef def;
  def.family = to_string(family);
  def.grid = "tet";
  def.k = k;
  def.entities = K.entities();
  def.shape = shape_space_tet(family, k);
  DofBuilder b{def.dofs};
  switch (family) {
    case TetFamily::Q:
      for (const auto& m : monomials_total_degree(k - 2))
        b.moments(TetElement::cell_index(), entry_extractor(0), {Polynomial::monomial(m)}, "cell-moment");
      break;
    case TetFamily::Sigma: sigma_dofs(b, k, K); break;
    case TetFamily::U: u_dofs(b, k, K); break;
    case TetFamily::V: v_dofs(b, k, K); break;
  }
  return def;
}

}  // namespace divdiv
