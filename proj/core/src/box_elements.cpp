#include "divdiv/box_elements.hpp"

#include "divdiv/operators.hpp"

#include <stdexcept>

namespace divdiv {

namespace {

int prev3(int i) { return (i + 2) % 3; }
int next3(int i) { return (i + 1) % 3; }
std::size_t idx(int i, int j) { return static_cast<std::size_t>(3 * i + j); }

/// Monomials with per-axis degree bounds deg[axis].
std::vector<MultiIndex> mixed_monomials(const std::array<int, 3>& deg) {
  return monomials_per_variable(deg[0], deg[1], deg[2]);
}

TensorField single_entry_matrix(std::size_t k, Polynomial p) {
  std::array<Polynomial, 9> m;
  m[k] = std::move(p);
  return TensorField::matrix(std::move(m));
}

TensorField symmetric_pair_matrix(int i, int j, const Polynomial& p) {
  std::array<Polynomial, 9> m;
  m[idx(i, j)] = p;
  m[idx(j, i)] = p;
  return TensorField::matrix(std::move(m), SymmetryTag::symmetric);
}

/// diag entries (a, b, -(a + b)) on the first two slots.
TensorField traceless_diag(int slot, const Polynomial& p) {
  std::array<Polynomial, 9> m;
  m[idx(slot, slot)] = p;
  m[idx(2, 2)] = -p;
  return TensorField::matrix(std::move(m), SymmetryTag::traceless);
}

/// The two tangential axes of a face normal to `axis`, in increasing order.
std::pair<int, int> tangential_axes(int axis) {
  int p = (axis + 1) % 3, q = (axis + 2) % 3;
  if (p > q) std::swap(p, q);
  return {p, q};
}

/// Face weights: monomials s^a t^b with a <= deg of the lower tangential axis and
/// b <= deg of the higher one, in graded-lex order.
std::vector<Polynomial> face_weights(int normal_axis, int deg_axis_a, int axis_a, int deg_axis_b) {
  auto [p, q] = tangential_axes(normal_axis);
  const int dp = axis_a == p ? deg_axis_a : deg_axis_b;
  const int dq = axis_a == p ? deg_axis_b : deg_axis_a;
  std::vector<Polynomial> out;
  for (const auto& m : monomials_per_variable(dp, dq, 0)) out.push_back(param_monomial(m[0], m[1]));
  return out;
}

std::vector<Polynomial> edge_weights(int deg) {
  std::vector<Polynomial> out;
  for (int j = 0; j <= deg; ++j) out.push_back(param_monomial(j));
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
  /// (field, w)_K summed over all entries of w.
  void field_moments(std::size_t entity, const std::vector<TensorField>& weights, const std::string& group) {
    for (const auto& w : weights) {
      DofFunctional d{entity, DofKind::moment, {}, group};
      for (std::size_t e = 0; e < w.size(); ++e)
        if (!w[e].is_zero()) d.terms.push_back({entry_extractor(e), w[e]});
      dofs.push_back(std::move(d));
    }
  }
};

void check_degree(BoxFamily family, int k) {
  if (k < min_degree(family))
    throw std::invalid_argument("degree " + std::to_string(k) + " below the minimum for family " + to_string(family));
}

}  // namespace

CuboidElement::CuboidElement(const Box& box) : box_(box) {
  for (int i = 0; i < 3; ++i) {
    if (h(i) <= 0) throw std::invalid_argument("CuboidElement: nonpositive edge length");
    const Polynomial x = Polynomial::variable(i);
    Polynomial b = (x - Polynomial(box.lo[i])) * (x - Polynomial(box.hi[i]));
    b *= Rational(1 / (h(i) * h(i)));
    bubbles_[static_cast<std::size_t>(i)] = std::move(b);
  }
}

Rational CuboidElement::h(int axis) const { return box_.hi[axis] - box_.lo[axis]; }

Polynomial CuboidElement::cell_bubble() const { return bubbles_[0] * bubbles_[1] * bubbles_[2]; }

Vec3 CuboidElement::vertex(int bits) const {
  Vec3 x;
  for (int i = 0; i < 3; ++i) x[i] = (bits >> i) & 1 ? box_.hi[i] : box_.lo[i];
  return x;
}

std::vector<DofEntity> CuboidElement::entities() const {
  std::vector<DofEntity> out(kEntities);
  for (int v = 0; v < 8; ++v) out[vertex_index(v)] = {0, make_vertex(vertex(v)), false, "vertex " + std::to_string(v)};
  for (int a = 0; a < 3; ++a) {
    auto [p, q] = tangential_axes(a);
    for (int bp = 0; bp < 2; ++bp)
      for (int bq = 0; bq < 2; ++bq) {
        const int start = (bp << p) | (bq << q);
        const std::size_t e = edge_index(a, bp, bq);
        out[e] = {1, make_segment(vertex(start), vertex(start | (1 << a))), false, "edge " + std::to_string(e - 8)};
      }
    for (int side = 0; side < 2; ++side) {
      const int c = side << a;
      const std::size_t f = face_index(a, side);
      out[f] = {2, make_parallelogram(vertex(c), vertex(c | (1 << p)), vertex(c | (1 << q))), false,
                "face " + std::to_string(f - 20)};
    }
  }
  out[cell_index()] = {3, make_box_cell(box_), true, "cell"};
  return out;
}

std::string to_string(BoxFamily f) {
  switch (f) {
    case BoxFamily::Qscalar: return "Qscalar";
    case BoxFamily::M: return "M";
    case BoxFamily::Vderham: return "Vderham";
    case BoxFamily::V: return "V";
    case BoxFamily::U: return "U";
    case BoxFamily::Sigma: return "Sigma";
  }
  return "?";
}

int min_degree(BoxFamily f) {
  switch (f) {
    case BoxFamily::Qscalar: return 0;
    case BoxFamily::M:
    case BoxFamily::Vderham: return 1;
    case BoxFamily::V:
    case BoxFamily::U:
    case BoxFamily::Sigma: return 3;
  }
  return 0;
}

std::array<PolySpace, 4> derham_spaces(int k1, int k2, int k3) {
  if (k1 < 0 || k2 < 0 || k3 < 0) throw std::invalid_argument("derham_spaces: negative degree");
  const std::string tag = "[" + std::to_string(k1) + std::to_string(k2) + std::to_string(k3) + "]";
  PolySpace h1 = span(DegreeSpec::mixed(k1 + 1, k2 + 1, k3 + 1));
  PolySpace m = vector_span({DegreeSpec::mixed(k1, k2 + 1, k3 + 1), DegreeSpec::mixed(k1 + 1, k2, k3 + 1),
                             DegreeSpec::mixed(k1 + 1, k2 + 1, k3)},
                            "M" + tag);
  PolySpace v = vector_span({DegreeSpec::mixed(k1 + 1, k2, k3), DegreeSpec::mixed(k1, k2 + 1, k3),
                             DegreeSpec::mixed(k1, k2, k3 + 1)},
                            "V" + tag);
  PolySpace l2 = span(DegreeSpec::mixed(k1, k2, k3));
  return {std::move(h1), std::move(m), std::move(v), std::move(l2)};
}

PolySpace shape_space_box(BoxFamily family, int k) {
  check_degree(family, k);
  const std::string tag = "[" + std::to_string(k) + "]";
  switch (family) {
    case BoxFamily::Qscalar:
      return span(DegreeSpec::per_variable(k));
    case BoxFamily::M:
      return vector_span({DegreeSpec::mixed(k - 1, k, k), DegreeSpec::mixed(k, k - 1, k),
                          DegreeSpec::mixed(k, k, k - 1)},
                         "M" + tag);
    case BoxFamily::Vderham:
    case BoxFamily::V:
      return vector_span({DegreeSpec::mixed(k, k - 1, k - 1), DegreeSpec::mixed(k - 1, k, k - 1),
                          DegreeSpec::mixed(k - 1, k - 1, k)},
                         "V" + tag);
    case BoxFamily::U: {
      std::vector<TensorField> basis;
      for (int slot = 0; slot < 2; ++slot)
        for (const auto& m : monomials_per_variable(k - 1, k - 1, k - 1))
          basis.push_back(traceless_diag(slot, Polynomial::monomial(m)));
      for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j) {
          if (i == j) continue;
          std::array<int, 3> deg{};
          deg[i] = k;
          deg[j] = k - 2;
          deg[3 - i - j] = k - 1;
          for (const auto& m : mixed_monomials(deg)) {
            TensorField f = single_entry_matrix(idx(i, j), Polynomial::monomial(m));
            basis.push_back(f.with_tag(SymmetryTag::traceless));
          }
        }
      return {Shape::matrix, SymmetryTag::traceless, "U" + tag, std::move(basis)};
    }
    case BoxFamily::Sigma: {
      std::vector<TensorField> basis;
      for (int i = 0; i < 3; ++i) {
        std::array<int, 3> deg{k - 2, k - 2, k - 2};
        deg[i] = k;
        for (const auto& m : mixed_monomials(deg))
          basis.push_back(symmetric_pair_matrix(i, i, Polynomial::monomial(m)));
      }
      for (int i = 0; i < 3; ++i)
        for (int j = i + 1; j < 3; ++j) {
          std::array<int, 3> deg{k - 1, k - 1, k - 1};
          deg[3 - i - j] = k - 2;
          for (const auto& m : mixed_monomials(deg))
            basis.push_back(symmetric_pair_matrix(i, j, Polynomial::monomial(m)));
        }
      return {Shape::matrix, SymmetryTag::symmetric, "Sigma" + tag, std::move(basis)};
    }
  }
  throw std::invalid_argument("shape_space_box: unknown family");
}

PolySpace bubble_space_box(BoxFamily family, int k, const CuboidElement& cell) {
  check_degree(family, k);
  const std::string tag = "[" + std::to_string(k) + "]";
  std::vector<TensorField> basis;
  switch (family) {
    case BoxFamily::Sigma: {
      for (int i = 0; i < 3; ++i) {
        std::array<int, 3> deg{};
        deg[i] = k - 4;
        deg[prev3(i)] = k - 2;
        deg[next3(i)] = k - 2;
        const Polynomial b2 = cell.bubble(i) * cell.bubble(i);
        for (const auto& m : mixed_monomials(deg))
          basis.push_back(symmetric_pair_matrix(i, i, b2 * Polynomial::monomial(m)));
      }
      for (int i = 0; i < 3; ++i)
        for (int j = i + 1; j < 3; ++j) {
          std::array<int, 3> deg{};
          deg[i] = k - 3;
          deg[j] = k - 3;
          deg[3 - i - j] = k - 2;
          const Polynomial bb = cell.bubble(i) * cell.bubble(j);
          for (const auto& m : mixed_monomials(deg))
            basis.push_back(symmetric_pair_matrix(i, j, bb * Polynomial::monomial(m)));
        }
      return {Shape::matrix, SymmetryTag::symmetric, "SigmaBubble" + tag, std::move(basis)};
    }
    case BoxFamily::U: {
      const Polynomial bk = cell.cell_bubble();
      for (int slot = 0; slot < 2; ++slot)
        for (const auto& m : monomials_per_variable(k - 3, k - 3, k - 3))
          basis.push_back(traceless_diag(slot, bk * Polynomial::monomial(m)));
      for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j) {
          if (i == j) continue;
          const int l = 3 - i - j;
          std::array<int, 3> deg{};
          deg[i] = k - 4;
          deg[j] = k - 2;
          deg[l] = k - 3;
          const Polynomial b = cell.bubble(i) * cell.bubble(i) * cell.bubble(l);
          for (const auto& m : mixed_monomials(deg)) {
            TensorField f = single_entry_matrix(idx(i, j), b * Polynomial::monomial(m));
            basis.push_back(f.with_tag(SymmetryTag::traceless));
          }
        }
      return {Shape::matrix, SymmetryTag::traceless, "UBubble" + tag, std::move(basis)};
    }
    case BoxFamily::V: {
      const Polynomial bk = cell.cell_bubble();
      for (int i = 0; i < 3; ++i) {
        std::array<int, 3> deg{};
        deg[i] = k - 4;
        deg[prev3(i)] = k - 3;
        deg[next3(i)] = k - 3;
        const Polynomial b = bk * cell.bubble(i);
        for (const auto& m : mixed_monomials(deg)) {
          std::array<Polynomial, 3> v;
          v[static_cast<std::size_t>(i)] = b * Polynomial::monomial(m);
          basis.push_back(TensorField::vector(std::move(v)));
        }
      }
      return {Shape::vector, SymmetryTag::general, "VBubble" + tag, std::move(basis)};
    }
    default:
      throw std::invalid_argument("bubble_space_box: family has no bubble space");
  }
}

FiniteElementDef make_box_element(BoxFamily family, int k, const CuboidElement& cell) {
  check_degree(family, k);
  FiniteElementDef def;
  def.family = to_string(family);
  def.grid = "box";
  def.k = k;
  def.entities = cell.entities();
  def.shape = shape_space_box(family, k);
  DofBuilder b{def.dofs};
  const std::size_t K = CuboidElement::cell_index();

  switch (family) {
    case BoxFamily::Qscalar: {
      for (const auto& m : monomials_per_variable(k, k, k))
        b.moments(K, entry_extractor(0), {Polynomial::monomial(m)}, "cell-moment");
      break;
    }
    case BoxFamily::Sigma: {
      // Each edge carries moments of the one shear component with both indices
      // transverse to it.
      for (int a = 0; a < 3; ++a) {
        const int i = prev3(a);  // i + 1 == a
        const auto x = entry_extractor(idx(i, prev3(i)));
        for (int bp = 0; bp < 2; ++bp)
          for (int bq = 0; bq < 2; ++bq) b.moments(CuboidElement::edge_index(a, bp, bq), x, edge_weights(k - 2), "edge-shear");
      }
      for (int i = 0; i < 3; ++i)
        for (int side = 0; side < 2; ++side) {
          const std::size_t f = CuboidElement::face_index(i, side);
          b.moments(f, entry_extractor(idx(i, prev3(i))), face_weights(i, k - 3, prev3(i), k - 2), "face-shear");
          b.moments(f, entry_extractor(idx(i, next3(i))), face_weights(i, k - 3, next3(i), k - 2), "face-shear");
          const auto w = face_weights(i, k - 2, prev3(i), k - 2);
          b.moments(f, entry_extractor(idx(i, i)), w, "face-normal");
          b.moments(f, entry_derivative_extractor(idx(i, i), i), w, "face-normal-derivative");
        }
      b.field_moments(K, bubble_space_box(family, k, cell).basis(), "interior");
      break;
    }
    case BoxFamily::U: {
      for (int v = 0; v < 8; ++v)
        for (int i = 0; i < 2; ++i) b.point(CuboidElement::vertex_index(v), entry_extractor(idx(i, i)), "vertex-diagonal");
      for (std::size_t e = 8; e < 20; ++e)
        for (int i = 0; i < 2; ++i) b.moments(e, entry_extractor(idx(i, i)), edge_weights(k - 3), "edge-diagonal");
      for (std::size_t e = 8; e < 20; ++e) {
        const int i = CuboidElement::edge_axis(e - 8);
        for (int j = 0; j < 3; ++j) {
          if (j == i) continue;
          b.moments(e, entry_extractor(idx(j, i)), edge_weights(k - 2), "edge-offdiagonal");
          b.moments(e, entry_derivative_extractor(idx(j, i), j), edge_weights(k - 2), "edge-offdiagonal-derivative");
        }
      }
      for (int n = 0; n < 3; ++n)
        for (int side = 0; side < 2; ++side) {
          const std::size_t f = CuboidElement::face_index(n, side);
          auto [p, q] = tangential_axes(n);
          // Tangential pairs (i, j) on a face normal to l = n.
          for (auto [i, j] : {std::pair{p, q}, std::pair{q, p}})
            b.moments(f, entry_extractor(idx(i, j)), face_weights(n, k - 4, i, k - 2), "face-tangential");
          // Pairs (i, j) with i = n normal to the face, j tangential, l the other tangential axis.
          for (int j : {p, q}) {
            const int l = 3 - n - j;
            const auto w = face_weights(n, k - 3, l, k - 2);
            b.moments(f, entry_extractor(idx(n, j)), w, "face-normal-row");
            b.moments(f, entry_derivative_extractor(idx(n, j), n), w, "face-normal-row-derivative");
          }
          for (int i = 0; i < 2; ++i)
            b.moments(f, entry_extractor(idx(i, i)), face_weights(n, k - 3, p, k - 3), "face-diagonal");
        }
      b.field_moments(K, bubble_space_box(family, k, cell).basis(), "interior");
      break;
    }
    case BoxFamily::V: {
      for (int v = 0; v < 8; ++v)
        for (int i = 0; i < 3; ++i) {
          b.point(CuboidElement::vertex_index(v), entry_extractor(static_cast<std::size_t>(i)), "vertex-value");
          b.point(CuboidElement::vertex_index(v), entry_derivative_extractor(static_cast<std::size_t>(i), i),
                  "vertex-derivative");
        }
      for (std::size_t e = 8; e < 20; ++e) {
        const int a = CuboidElement::edge_axis(e - 8);
        for (int i = 0; i < 3; ++i) {
          const auto x = entry_extractor(static_cast<std::size_t>(i));
          if (i == a) {
            b.moments(e, x, edge_weights(k - 4), "edge-tangential");
          } else {
            b.moments(e, x, edge_weights(k - 3), "edge-normal");
            b.moments(e, entry_derivative_extractor(static_cast<std::size_t>(i), i), edge_weights(k - 3),
                      "edge-normal-derivative");
          }
        }
      }
      for (int n = 0; n < 3; ++n)
        for (int side = 0; side < 2; ++side) {
          const std::size_t f = CuboidElement::face_index(n, side);
          auto [p, q] = tangential_axes(n);
          const auto w = face_weights(n, k - 3, p, k - 3);
          b.moments(f, entry_extractor(static_cast<std::size_t>(n)), w, "face-normal");
          b.moments(f, entry_derivative_extractor(static_cast<std::size_t>(n), n), w, "face-normal-derivative");
          for (int i : {p, q})
            b.moments(f, entry_extractor(static_cast<std::size_t>(i)), face_weights(n, k - 4, i, k - 3),
                      "face-tangential");
        }
      b.field_moments(K, bubble_space_box(family, k, cell).basis(), "interior");
      break;
    }
    default:
      throw std::invalid_argument("make_box_element: no DOFs defined for family " + to_string(family));
  }
  return def;
}

}  // namespace divdiv
