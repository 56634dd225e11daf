#include "comdyn/ideal.hpp"

#include "comdyn/commutant.hpp"
#include "comdyn/parse.hpp"

namespace comdyn {

namespace {

using SymPoly = Polynomial<Poly>;

CommutationIdeal make_unknowns(const FieldSpec& field, std::size_t components, std::size_t nvars, unsigned degree,
                               bool projective) {
  CommutationIdeal ideal;
  ideal.field = field;
  ideal.projective = projective;
  ideal.nvars = nvars;
  ideal.degree = degree;
  ideal.basis = projective ? monomials_of_degree(nvars, degree) : monomials_up_to(nvars, degree);
  const std::size_t first = projective ? 0 : 1;
  for (std::size_t i = 0; i < components; ++i) {
    for (const auto& m : ideal.basis) {
      std::string name = "b_" + std::to_string(i + first);
      for (auto e : m.exponents()) name += "_" + std::to_string(e);
      ideal.unknowns.push_back(std::move(name));
    }
  }
  if (ideal.unknowns.size() > 2000) {
    throw Error(ErrorCode::ExplosionGuard, std::to_string(ideal.unknowns.size()) + " unknowns exceed the cap of 2000");
  }
  return ideal;
}

std::vector<SymPoly> symbolic_map(const CommutationIdeal& ideal, std::size_t components) {
  const std::size_t k = ideal.unknowns.size();
  const FieldElement one = FieldElement::one(ideal.field);
  std::vector<SymPoly> out;
  std::size_t index = 0;
  for (std::size_t i = 0; i < components; ++i) {
    SymPoly p(ideal.nvars);
    for (const auto& m : ideal.basis) p.add_term(m, Poly::term(Monomial::variable(k, index++), one));
    out.push_back(std::move(p));
  }
  return out;
}

std::vector<SymPoly> lift(const std::vector<Poly>& comps, std::size_t k) {
  std::vector<SymPoly> out;
  for (const auto& c : comps) {
    out.push_back(c.map_coefficients([&](const FieldElement& a) { return Poly::constant(k, a); }));
  }
  return out;
}

void collect(const SymPoly& diff, CommutationIdeal& ideal, std::size_t cap) {
  for (const auto& [m, c] : diff.terms()) {
    ideal.equations.push_back(c);
    if (ideal.equations.size() > cap) {
      throw Error(ErrorCode::ExplosionGuard, "commutation ideal exceeds " + std::to_string(cap) + " equations");
    }
  }
}

}  // namespace

CommutationIdeal commutation_ideal(const PolyMap& f, unsigned degree, std::size_t cap) {
  if (degree == 0) throw Error(ErrorCode::InvalidArgument, "degree must be at least 1");
  const std::size_t n = f.dimension();
  CommutationIdeal ideal = make_unknowns(f.field(), n, n, degree, false);
  const auto psi = symbolic_map(ideal, n);
  const auto lifted = lift(f.components(), ideal.unknowns.size());
  const auto f_psi = compose_components<Poly>(lifted, psi);
  const auto psi_f = compose_components<Poly>(psi, lifted);
  for (std::size_t i = 0; i < n; ++i) collect(f_psi[i] - psi_f[i], ideal, cap);
  return ideal;
}

CommutationIdeal commutation_ideal(const ProjMap& phi, unsigned degree, std::size_t cap) {
  if (degree == 0) throw Error(ErrorCode::InvalidArgument, "degree must be at least 1");
  const std::size_t k = phi.components().size();
  CommutationIdeal ideal = make_unknowns(phi.field(), k, k, degree, true);
  const auto psi = symbolic_map(ideal, k);
  const auto lifted = lift(phi.components(), ideal.unknowns.size());
  const auto a = compose_components<Poly>(psi, lifted);  // psi o phi
  const auto b = compose_components<Poly>(lifted, psi);  // phi o psi
  for (std::size_t i = 0; i < k; ++i) {
    for (std::size_t j = i + 1; j < k; ++j) collect(a[i] * b[j] - a[j] * b[i], ideal, cap);
  }
  return ideal;
}

std::vector<FieldElement> CommutationIdeal::coefficients_of(const std::vector<Poly>& components) const {
  const std::size_t count = unknowns.size() / basis.size();
  if (components.size() != count) throw Error(ErrorCode::DimensionMismatch, "wrong number of components");
  std::vector<FieldElement> values;
  for (const auto& comp : components) {
    if (comp.nvars() != nvars) throw Error(ErrorCode::DimensionMismatch, "component arity mismatch");
    std::size_t matched = 0;
    for (const auto& m : basis) {
      const FieldElement* c = comp.coefficient(m);
      values.push_back(c != nullptr ? *c : FieldElement::zero(field));
      if (c != nullptr) ++matched;
    }
    if (matched != comp.size()) {
      throw Error(ErrorCode::InvalidArgument, "map has terms outside the degree-" + std::to_string(degree) + " basis");
    }
  }
  return values;
}

std::vector<Poly> CommutationIdeal::components_from(std::span<const FieldElement> values) const {
  if (values.size() != unknowns.size()) throw Error(ErrorCode::DimensionMismatch, "one value per unknown needed");
  std::vector<Poly> comps;
  for (std::size_t start = 0; start < values.size(); start += basis.size()) {
    Poly p(nvars);
    for (std::size_t j = 0; j < basis.size(); ++j) p.add_term(basis[j], values[start + j]);
    comps.push_back(std::move(p));
  }
  return comps;
}

std::vector<FieldElement> CommutationIdeal::evaluate_at(std::span<const FieldElement> values) const {
  std::vector<FieldElement> out;
  out.reserve(equations.size());
  for (const auto& e : equations) out.push_back(evaluate(e, values, field));
  return out;
}

bool CommutationIdeal::vanishes_at(std::span<const FieldElement> values) const {
  for (const auto& e : equations) {
    if (!evaluate(e, values, field).is_zero()) return false;
  }
  return true;
}

std::vector<std::string> CommutationIdeal::equation_strings() const {
  std::vector<std::string> out;
  for (const auto& e : equations) out.push_back(to_string(e, unknowns));
  return out;
}

std::vector<std::vector<FieldElement>> ideal_grid_solutions(const CommutationIdeal& ideal, long coeff_bound,
                                                            long denom_bound, std::size_t cap) {
  const auto values = coefficient_grid(ideal.field, coeff_bound, denom_bound);
  const std::size_t k = ideal.unknowns.size();
  mpz_class total;
  mpz_ui_pow_ui(total.get_mpz_t(), values.size(), k);
  if (total > cap) {
    throw Error(ErrorCode::ExplosionGuard, "ideal grid has " + total.get_str() + " points, cap is " + std::to_string(cap));
  }
  std::vector<std::vector<FieldElement>> out;
  std::vector<std::size_t> idx(k, 0);
  std::vector<FieldElement> point(k, values.front());
  while (true) {
    for (std::size_t i = 0; i < k; ++i) point[i] = values[idx[i]];
    if (ideal.vanishes_at(point)) out.push_back(point);
    std::size_t i = k;
    while (i > 0 && idx[i - 1] + 1 == values.size()) idx[--i] = 0;
    if (i == 0) break;
    ++idx[i - 1];
  }
  return out;
}

}  // namespace comdyn
