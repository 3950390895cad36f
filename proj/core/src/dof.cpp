#include "divdiv/dof.hpp"

#include <algorithm>
#include <stdexcept>

namespace divdiv {

const TensorField& FieldCache::derived(const std::string& key,
                                       const std::function<TensorField(const TensorField&)>& make) {
  auto it = derived_.find(key);
  if (it != derived_.end()) return it->second;
  return derived_.emplace(key, make(field_)).first->second;
}

ExtractorPtr make_extractor(std::string key, std::function<Polynomial(FieldCache&)> apply) {
  return std::make_shared<const Extractor>(Extractor{std::move(key), std::move(apply)});
}

ExtractorPtr entry_extractor(std::size_t k) {
  return make_extractor("e" + std::to_string(k), [k](FieldCache& c) { return c.field()[k]; });
}

ExtractorPtr entry_derivative_extractor(std::size_t k, int axis) {
  return make_extractor("d" + std::to_string(axis) + "e" + std::to_string(k),
                        [k, axis](FieldCache& c) { return c.field()[k].derivative(axis); });
}

ExtractorPtr derived_entry_extractor(const std::string& name, const std::function<TensorField(const TensorField&)>& op,
                                     std::size_t k) {
  return make_extractor(name + "." + std::to_string(k),
                        [name, op, k](FieldCache& c) { return c.derived(name, op)[k]; });
}

std::vector<std::size_t> FiniteElementDef::dofs_per_entity() const {
  std::vector<std::size_t> out(entities.size(), 0);
  for (const auto& d : dofs) ++out.at(d.entity);
  return out;
}

std::vector<std::pair<std::string, std::size_t>> FiniteElementDef::dofs_per_group() const {
  std::vector<std::pair<std::string, std::size_t>> out;
  for (const auto& d : dofs) {
    auto it = std::find_if(out.begin(), out.end(), [&](const auto& p) { return p.first == d.group; });
    if (it == out.end())
      out.emplace_back(d.group, 1);
    else
      ++it->second;
  }
  return out;
}

DofEvaluator::DofEvaluator(const FiniteElementDef& def) : def_(def) {
  const std::size_t n = def.entities.size();
  pullbacks_.resize(n);
  integrals_.resize(n);
  cell_jacobian_.resize(n);
  for (std::size_t e = 0; e < n; ++e) {
    const Entity& g = def.entities[e].geometry;
    pullbacks_[e] = std::make_unique<AffinePullback>(g.origin, g.axes);
    if (def.entities[e].physical_weights) {
      auto j = rational_sqrt(g.metric_squared());
      if (!j || sgn(*j) == 0) throw std::invalid_argument("DofEvaluator: degenerate or irrational cell measure");
      cell_jacobian_[e] = *j;
    }
  }
}

Polynomial DofEvaluator::restrict(std::size_t entity, const Polynomial& p) {
  if (def_.entities[entity].physical_weights) return p;
  return pullbacks_[entity]->apply(p);
}

const Rational& DofEvaluator::monomial_integral(std::size_t entity, std::uint32_t key) {
  auto& table = integrals_[entity];
  auto it = table.find(key);
  if (it != table.end()) return it->second;
  const DofEntity& ent = def_.entities[entity];
  Rational v;
  if (ent.physical_weights) {
    v = cell_jacobian_[entity] *
        integrate_reference(pullbacks_[entity]->monomial_image(key), ent.geometry.shape);
  } else {
    v = integrate_reference(Polynomial::monomial(MultiIndex::unpack(key)), ent.geometry.shape);
  }
  return table.emplace(key, std::move(v)).first->second;
}

Rational DofEvaluator::evaluate_one(const DofFunctional& d, FieldCache& cache,
                                    std::unordered_map<std::string, Polynomial>& extracted,
                                    std::unordered_map<std::string, Polynomial>& restricted) {
  Rational value;
  const DofEntity& ent = def_.entities[d.entity];
  for (const auto& term : d.terms) {
    const std::string& key = term.extractor->key;
    auto xit = extracted.find(key);
    if (xit == extracted.end()) xit = extracted.emplace(key, term.extractor->apply(cache)).first;
    const Polynomial& p = xit->second;
    if (p.is_zero()) continue;
    if (d.kind == DofKind::point) {
      value += term.weight.coefficient(MultiIndex{}) * p.evaluate(ent.geometry.origin);
      continue;
    }
    const std::string rkey = key + "@" + std::to_string(d.entity);
    auto rit = restricted.find(rkey);
    if (rit == restricted.end()) rit = restricted.emplace(rkey, restrict(d.entity, p)).first;
    const Polynomial& r = rit->second;
    for (const auto& a : r.terms()) {
      const MultiIndex ea = a.exponents();
      for (const auto& b : term.weight.terms()) {
        const MultiIndex eb = b.exponents();
        const MultiIndex sum(ea[0] + eb[0], ea[1] + eb[1], ea[2] + eb[2]);
        value += a.coeff * b.coeff * monomial_integral(d.entity, sum.pack());
      }
    }
  }
  return value;
}

RatVector DofEvaluator::evaluate(const TensorField& f) {
  std::vector<std::size_t> all(def_.dofs.size());
  for (std::size_t i = 0; i < all.size(); ++i) all[i] = i;
  return evaluate(f, all);
}

RatVector DofEvaluator::evaluate(const TensorField& f, const std::vector<std::size_t>& which) {
  FieldCache cache(f);
  std::unordered_map<std::string, Polynomial> extracted;
  std::unordered_map<std::string, Polynomial> restricted;
  RatVector out;
  out.reserve(which.size());
  for (std::size_t i : which) out.push_back(evaluate_one(def_.dofs.at(i), cache, extracted, restricted));
  return out;
}

RatMatrix DofEvaluator::matrix(const std::vector<TensorField>& fields) {
  RatMatrix a(def_.dofs.size(), fields.size());
  for (std::size_t j = 0; j < fields.size(); ++j) {
    RatVector col = evaluate(fields[j]);
    for (std::size_t i = 0; i < col.size(); ++i) a(i, j) = std::move(col[i]);
  }
  return a;
}

RatMatrix dof_matrix(const FiniteElementDef& def) {
  DofEvaluator ev(def);
  return ev.matrix(def.shape.basis());
}

UnisolvenceCertificate certify_unisolvence(const FiniteElementDef& def, const RatMatrix& a) {
  UnisolvenceCertificate c;
  c.dofs = a.rows();
  c.dim = a.cols();
  c.square = c.dofs == c.dim;
  if (c.square && rank_lower_bound(a) == c.dim) {
    c.rank = c.dim;
    c.nonsingular = true;
    return c;
  }
  RankResult r = exact_rank(a);
  c.rank = r.rank;
  c.nonsingular = c.square && r.rank == c.dim;
  if (!r.nullspace.empty()) c.witness = def.shape.combine(r.nullspace.front());
  return c;
}

UnisolvenceCertificate certify_unisolvence(const FiniteElementDef& def) {
  return certify_unisolvence(def, dof_matrix(def));
}

RatMatrix nodal_coefficients(const RatMatrix& a) {
  auto inv = inverse(a);
  if (!inv) throw std::runtime_error("nodal_coefficients: singular DOF matrix");
  return std::move(*inv);
}

std::vector<TensorField> nodal_fields(const FiniteElementDef& def, const RatMatrix& coefficients) {
  std::vector<TensorField> out;
  out.reserve(coefficients.cols());
  for (std::size_t j = 0; j < coefficients.cols(); ++j) out.push_back(def.shape.combine(coefficients.column(j)));
  return out;
}

LocalInterpolant interpolate_local(const FiniteElementDef& def, const RatMatrix& a, const TensorField& f) {
  DofEvaluator ev(def);
  LocalInterpolant out;
  out.dof_values = ev.evaluate(f);
  RatMatrix rhs(out.dof_values.size(), 1);
  for (std::size_t i = 0; i < out.dof_values.size(); ++i) rhs(i, 0) = out.dof_values[i];
  auto c = solve(a, rhs);
  if (!c) throw std::runtime_error("interpolate_local: singular DOF matrix");
  out.field = def.shape.combine(c->column(0));
  return out;
}

Polynomial param_monomial(int a, int b) { return Polynomial::monomial(MultiIndex(a, b, 0)); }

}  // namespace divdiv
