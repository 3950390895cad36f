#include "divdiv/tet_spaces.hpp"

#include "divdiv/linalg.hpp"
#include "divdiv/operators.hpp"

#include <stdexcept>

namespace divdiv {

namespace {

/// Pullbacks to the four faces' parameters.
std::vector<AffinePullback> face_pullbacks(const TetElement& K) {
  std::vector<AffinePullback> out;
  for (int f = 0; f < 4; ++f) {
    const Entity e = K.face_entity(f);
    out.emplace_back(e.origin, e.axes);
  }
  return out;
}

void append_entries(std::vector<Polynomial>& out, const TensorField& t, AffinePullback& pull, bool upper_only) {
  if (upper_only && t.shape() == Shape::matrix) {
    for (int i = 0; i < 3; ++i)
      for (int j = i; j < 3; ++j) out.push_back(pull.apply(t(i, j)));
    return;
  }
  for (const auto& p : t.entries()) out.push_back(pull.apply(p));
}

/// The fields of `candidates` at the pivot positions.
std::vector<TensorField> independent(const std::vector<TensorField>& candidates) {
  std::vector<TensorField> out;
  for (auto i : independent_subset(candidates)) out.push_back(candidates[i]);
  return out;
}

}  // namespace

PolySpace vector_polys(int m) {
  const auto s = DegreeSpec::total(m);
  return vector_span({s, s, s}, "P_" + std::to_string(m) + "(R^3)");
}

PolySpace symmetric_polys(int m) {
  std::vector<TensorField> basis;
  constexpr std::array<std::pair<int, int>, 6> slots{{{0, 0}, {1, 1}, {2, 2}, {0, 1}, {0, 2}, {1, 2}}};
  for (auto [i, j] : slots)
    for (const auto& mono : monomials_total_degree(m)) {
      std::array<Polynomial, 9> e;
      e[static_cast<std::size_t>(3 * i + j)] = Polynomial::monomial(mono);
      e[static_cast<std::size_t>(3 * j + i)] = Polynomial::monomial(mono);
      basis.push_back(TensorField::matrix(std::move(e), SymmetryTag::symmetric));
    }
  return {Shape::matrix, SymmetryTag::symmetric, "P_" + std::to_string(m) + "(S)", std::move(basis)};
}

PolySpace traceless_polys(int m) {
  std::vector<TensorField> basis;
  const auto monos = monomials_total_degree(m);
  for (int slot = 0; slot < 2; ++slot)
    for (const auto& mono : monos) {
      std::array<Polynomial, 9> e;
      e[static_cast<std::size_t>(4 * slot)] = Polynomial::monomial(mono);
      e[8] = -Polynomial::monomial(mono);
      basis.push_back(TensorField::matrix(std::move(e), SymmetryTag::traceless));
    }
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) {
      if (i == j) continue;
      for (const auto& mono : monos) {
        std::array<Polynomial, 9> e;
        e[static_cast<std::size_t>(3 * i + j)] = Polynomial::monomial(mono);
        basis.push_back(TensorField::matrix(std::move(e), SymmetryTag::traceless));
      }
    }
  return {Shape::matrix, SymmetryTag::traceless, "P_" + std::to_string(m) + "(T)", std::move(basis)};
}

ConstrainedSpace constrain(PolySpace parent, const TraceMap& traces, std::string descriptor) {
  std::vector<std::vector<Polynomial>> rows_of(parent.dim());
  CoefficientLayout layout;
  for (std::size_t j = 0; j < parent.dim(); ++j) {
    rows_of[j] = traces(parent[j]);
    layout.add(rows_of[j]);
  }
  RatMatrix c(layout.size(), parent.dim());
  for (std::size_t j = 0; j < parent.dim(); ++j) {
    RatVector col = *layout.coordinates(rows_of[j]);
    for (std::size_t i = 0; i < col.size(); ++i) c(i, j) = col[i];
  }
  ConstrainedSpace out;
  out.constraint_count = layout.size();
  std::vector<RatVector> null;
  if (layout.size() == 0) {
    for (std::size_t j = 0; j < parent.dim(); ++j) {
      RatVector e(parent.dim());
      e[j] = 1;
      null.push_back(std::move(e));
    }
  } else {
    RrefResult r = rref(c);
    out.constraint_rank = r.rank;
    null = nullspace_from_rref(r, parent.dim());
  }
  std::vector<TensorField> basis;
  for (const auto& v : null) basis.push_back(parent.combine(v));
  out.space = PolySpace(parent.shape(), parent.tag(), std::move(descriptor), std::move(basis));
  out.coordinates = std::move(null);
  out.parent = std::move(parent);
  return out;
}

ConstrainedSpace space_W(int m, const TetElement& K) {
  if (m < 0) throw std::invalid_argument("space_W: negative degree");
  auto pulls = face_pullbacks(K);
  TraceMap traces = [&](const TensorField& phi) {
    std::vector<Polynomial> out;
    for (int f = 0; f < 4; ++f) append_entries(out, cross(phi, K.face_frame(f).normal), pulls[static_cast<std::size_t>(f)], false);
    return out;
  };
  return constrain(vector_polys(m), traces, "W_" + std::to_string(m));
}

ConstrainedSpace space_M(int m, const TetElement& K) {
  if (m < 0) throw std::invalid_argument("space_M: negative degree");
  auto pulls = face_pullbacks(K);
  // Both traces are symmetric matrices, so the upper triangle carries every condition.
  TraceMap traces = [&](const TensorField& tau) {
    std::vector<Polynomial> out;
    for (int f = 0; f < 4; ++f) {
      auto& pull = pulls[static_cast<std::size_t>(f)];
      append_entries(out, lambda_f(tau, K.face_frame(f)), pull, true);
      append_entries(out, q_f_two_sided(tau, K.face_frame(f)), pull, true);
    }
    return out;
  };
  return constrain(symmetric_polys(m), traces, "M_" + std::to_string(m));
}

std::vector<TensorField> rigid_motions() {
  const Polynomial x = Polynomial::variable(0), y = Polynomial::variable(1), z = Polynomial::variable(2);
  return {
      TensorField::vector({1, 0, 0}),
      TensorField::vector({0, 1, 0}),
      TensorField::vector({0, 0, 1}),
      TensorField::vector({-y, x, 0}),
      TensorField::vector({-z, 0, x}),
      TensorField::vector({0, -z, y}),
  };
}

PolySpace space_W_quotient(int k, const TetElement& K) {
  if (k < 1) throw std::invalid_argument("space_W_quotient: k must be positive");
  const ConstrainedSpace w = space_W(k, K);
  std::vector<TensorField> curls;
  for (const auto& phi : w.space.basis()) curls.push_back(curl(phi));
  const std::vector<TensorField> s = independent(curls);
  std::vector<TensorField> basis;
  if (!s.empty()) {
    const auto rm = rigid_motions();
    RatMatrix gram(rm.size(), s.size());
    for (std::size_t r = 0; r < rm.size(); ++r)
      for (std::size_t j = 0; j < s.size(); ++j) gram(r, j) = K.integrate(frobenius(rm[r], s[j]));
    const PolySpace span_s(Shape::vector, SymmetryTag::general, "curl W", s);
    for (const auto& v : exact_rank(gram).nullspace) basis.push_back(span_s.combine(v));
  }
  return {Shape::vector, SymmetryTag::general, "curl W_" + std::to_string(k) + "/RM", std::move(basis)};
}

PolySpace space_M_image(int k, const TetElement& K) {
  if (k < 0) throw std::invalid_argument("space_M_image: negative degree");
  const ConstrainedSpace m = space_M(k + 2, K);
  std::vector<TensorField> images;
  for (const auto& tau : m.space.basis()) {
    TensorField t = curl(curl_col(tau));
    images.push_back(t.with_tag(SymmetryTag::symmetric));
  }
  return {Shape::matrix, SymmetryTag::symmetric, "curl curl_col M_" + std::to_string(k + 2), independent(images)};
}

ConstrainedSpace space_Pdiv_bubble(int k, const TetElement& K) {
  if (k < 2) throw std::invalid_argument("space_Pdiv_bubble: k must be at least 2");
  const Polynomial b = K.cell_bubble();
  std::vector<TensorField> parent;
  const PolySpace p_space = vector_polys(k - 2);
  for (const auto& p : p_space.basis()) parent.push_back(b * p);
  auto pulls = face_pullbacks(K);
  TraceMap traces = [&](const TensorField& q) {
    std::vector<Polynomial> out;
    const Polynomial d = div(q).value();
    for (auto& pull : pulls) out.push_back(pull.apply(d));
    return out;
  };
  return constrain(PolySpace(Shape::vector, SymmetryTag::general, "b_K P_" + std::to_string(k - 2) + "(R^3)", std::move(parent)),
                   traces, "P^div_" + std::to_string(k + 2));
}

PolySpace space_Ptilde_face(int d) {
  if (d < 0) throw std::invalid_argument("space_Ptilde_face: negative degree");
  const Polynomial s = Polynomial::variable(0), t = Polynomial::variable(1);
  const Polynomial l0 = Polynomial(1) - s - t;
  std::vector<TensorField> basis;
  for (const auto& m : monomials_total_degree(d)) {
    // Homogeneous exponents (d - a - b, a, b) on (l0, s, t).
    const int a = m[0], c = m[1];
    if (m[2] != 0) continue;
    const int e0 = d - a - c;
    if (e0 == d || a == d || c == d) continue;
    Polynomial p(1);
    for (int i = 0; i < e0; ++i) p = p * l0;
    for (int i = 0; i < a; ++i) p = p * s;
    for (int i = 0; i < c; ++i) p = p * t;
    basis.push_back(TensorField::scalar(std::move(p)));
  }
  return {Shape::scalar, SymmetryTag::general, "P~_" + std::to_string(d) + "(f)", std::move(basis)};
}

PolySpace space_P_mod_P1(int n, const TetElement& K) {
  const std::array<Polynomial, 4> p1{Polynomial(1), Polynomial::variable(0), Polynomial::variable(1),
                                     Polynomial::variable(2)};
  RatMatrix gram(4, 4);
  for (std::size_t i = 0; i < 4; ++i)
    for (std::size_t j = 0; j < 4; ++j) gram(i, j) = K.integrate(p1[i] * p1[j]);
  const RatMatrix ginv = *inverse(gram);
  std::vector<TensorField> basis;
  for (const auto& m : monomials_total_degree(n)) {
    if (m[0] + m[1] + m[2] < 2) continue;
    const Polynomial q = Polynomial::monomial(m);
    std::array<Rational, 4> rhs;
    for (std::size_t i = 0; i < 4; ++i) rhs[i] = K.integrate(q * p1[i]);
    Polynomial proj;
    for (std::size_t i = 0; i < 4; ++i) {
      Rational c = 0;
      for (std::size_t j = 0; j < 4; ++j) c += ginv(i, j) * rhs[j];
      proj.add_scaled(p1[i], c);
    }
    basis.push_back(TensorField::scalar(q - proj));
  }
  return {Shape::scalar, SymmetryTag::general, "P_" + std::to_string(n) + "/P_1", std::move(basis)};
}

std::vector<Polynomial> face_weights_mean_split(int d) {
  std::vector<Polynomial> out;
  if (d < 0) return out;
  out.emplace_back(1);
  const Rational area = integrate_reference(Polynomial(1), RefShape::triangle);
  for (const auto& m : monomials_total_degree(d)) {
    if (m[2] != 0 || m[0] + m[1] == 0) continue;
    const Polynomial p = Polynomial::monomial(m);
    out.push_back(p - Polynomial(integrate_reference(p, RefShape::triangle) / area));
  }
  return out;
}

}  // namespace divdiv
