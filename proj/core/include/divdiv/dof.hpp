#pragma once

#include "divdiv/integration.hpp"
#include "divdiv/linalg.hpp"
#include "divdiv/poly_space.hpp"

#include <functional>
#include <memory>
#include <optional>
#include <string>
#include <unordered_map>
#include <vector>

namespace divdiv {

/// A shape function together with memoized derived fields (div, sym curl, ...).
class FieldCache {
 public:
  explicit FieldCache(const TensorField& f) : field_(f) {}
  const TensorField& field() const { return field_; }
  /// The derived field named key, built by make on first use.
  const TensorField& derived(const std::string& key, const std::function<TensorField(const TensorField&)>& make);

 private:
  const TensorField& field_;
  std::unordered_map<std::string, TensorField> derived_;
};

/// Linear map from a field to a scalar polynomial. Results are memoized by key,
/// so two extractors with equal keys must compute the same map.
struct Extractor {
  std::string key;
  std::function<Polynomial(FieldCache&)> apply;
};
using ExtractorPtr = std::shared_ptr<const Extractor>;

ExtractorPtr make_extractor(std::string key, std::function<Polynomial(FieldCache&)> apply);

/// Entry k of the field (row-major for matrices).
ExtractorPtr entry_extractor(std::size_t k);
/// d/dx_axis of entry k.
ExtractorPtr entry_derivative_extractor(std::size_t k, int axis);
/// Entry k of a named derived field.
ExtractorPtr derived_entry_extractor(const std::string& name, const std::function<TensorField(const TensorField&)>& op,
                                     std::size_t k);

enum class DofKind { point, moment };

/// One summand of a functional: the pairing of an extracted scalar with a weight.
/// Point functionals use constant weights.
struct DofTerm {
  ExtractorPtr extractor;
  Polynomial weight;
};

/// Geometric carrier of functionals. Moment weights live in the entity's
/// parameters (measure ds on the reference domain), except on entities with
/// physical_weights, where weights are polynomials in x, y, z and the measure is dx.
struct DofEntity {
  int dim = 0;
  Entity geometry;
  bool physical_weights = false;
  std::string label;
};

struct DofFunctional {
  std::size_t entity = 0;
  DofKind kind = DofKind::moment;
  std::vector<DofTerm> terms;
  std::string group;
};

/// Shape space plus an ordered list of functionals on one cell.
struct FiniteElementDef {
  std::string family;
  std::string grid;
  int k = 0;
  std::vector<DofEntity> entities;
  PolySpace shape;
  std::vector<DofFunctional> dofs;

  std::size_t dim() const { return shape.dim(); }
  /// Number of functionals attached to each entity.
  std::vector<std::size_t> dofs_per_entity() const;
  /// Functional counts by group tag, in order of first appearance.
  std::vector<std::pair<std::string, std::size_t>> dofs_per_group() const;
};

/// Evaluates the functionals of an element. Caches per-entity restriction maps
/// and monomial integrals, so one evaluator should serve many fields.
class DofEvaluator {
 public:
  explicit DofEvaluator(const FiniteElementDef& def);
  DofEvaluator(const DofEvaluator&) = delete;
  DofEvaluator& operator=(const DofEvaluator&) = delete;

  RatVector evaluate(const TensorField& f);
  /// Selected functionals only.
  RatVector evaluate(const TensorField& f, const std::vector<std::size_t>& which);
  /// Rows: functionals; columns: fields.
  RatMatrix matrix(const std::vector<TensorField>& fields);

  /// Integral of a monomial in the entity's weight variables over the entity.
  const Rational& monomial_integral(std::size_t entity, std::uint32_t key);
  /// Restriction of an x, y, z polynomial to the entity's weight variables.
  Polynomial restrict(std::size_t entity, const Polynomial& p);

 private:
  Rational evaluate_one(const DofFunctional& d, FieldCache& cache,
                        std::unordered_map<std::string, Polynomial>& extracted,
                        std::unordered_map<std::string, Polynomial>& restricted);

  const FiniteElementDef& def_;
  std::vector<std::unique_ptr<AffinePullback>> pullbacks_;
  std::vector<std::unordered_map<std::uint32_t, Rational>> integrals_;
  std::vector<Rational> cell_jacobian_;
};

/// DOF matrix A_ij = dof_i(shape_j).
RatMatrix dof_matrix(const FiniteElementDef& def);

struct UnisolvenceCertificate {
  std::size_t dofs = 0;
  std::size_t dim = 0;
  std::size_t rank = 0;
  bool square = false;
  bool nonsingular = false;
  /// A nonzero shape function annihilated by every functional, when one exists.
  std::optional<TensorField> witness;
};

/// Nonsingularity is certified by a full-rank pivot block modulo a prime, which
/// bounds the rational rank from below; otherwise the exact nullspace supplies a witness.
UnisolvenceCertificate certify_unisolvence(const FiniteElementDef& def, const RatMatrix& a);
UnisolvenceCertificate certify_unisolvence(const FiniteElementDef& def);

/// Nodal basis coefficients: column j holds the shape-basis coordinates of the
/// field dual to functional j. Throws if the DOF matrix is singular.
RatMatrix nodal_coefficients(const RatMatrix& dof_matrix);
std::vector<TensorField> nodal_fields(const FiniteElementDef& def, const RatMatrix& coefficients);

/// DOF values of f and the shape-space field with those DOF values.
struct LocalInterpolant {
  RatVector dof_values;
  TensorField field;
};
LocalInterpolant interpolate_local(const FiniteElementDef& def, const RatMatrix& dof_matrix, const TensorField& f);

/// Parameter monomials s^a t^b (b = 0 on edges) used as face and edge weights.
Polynomial param_monomial(int a, int b = 0);

}  // namespace divdiv
