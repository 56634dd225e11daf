#pragma once

// Commutation equations in the unknown coefficients b_{iJ} of a degree-d map.

#include <string>
#include <variant>
#include <vector>

#include "comdyn/poly_map.hpp"

namespace comdyn {

inline constexpr std::size_t kDefaultEquationCap = 200'000;

struct CommutationIdeal {
  FieldSpec field;
  bool projective = false;
  /// Ambient variable count of psi: n (affine) or n + 1 (projective).
  std::size_t nvars = 0;
  unsigned degree = 0;
  /// Monomials of psi's components, in unknown order within a component.
  std::vector<Monomial> basis;
  /// b_<i>_<J>, component-major; i starts at 1 (affine) or 0 (projective).
  std::vector<std::string> unknowns;
  /// Polynomials in the unknowns; their common zeros are the commuting psi.
  std::vector<Poly> equations;

  /// Values of the unknowns for a concrete map (its coefficients).
  std::vector<FieldElement> coefficients_of(const std::vector<Poly>& components) const;
  /// The map whose coefficients are `values`.
  std::vector<Poly> components_from(std::span<const FieldElement> values) const;
  /// Every equation evaluated at `values`.
  std::vector<FieldElement> evaluate_at(std::span<const FieldElement> values) const;
  bool vanishes_at(std::span<const FieldElement> values) const;

  /// Equations in canonical text with the b_i_J variable names.
  std::vector<std::string> equation_strings() const;
};

/// Affine: coefficients of f o psi - psi o f with psi of degree <= d.
CommutationIdeal commutation_ideal(const PolyMap& f, unsigned degree, std::size_t cap = kDefaultEquationCap);
/// Projective: coefficients of (psi o phi)_i (phi o psi)_j - (psi o phi)_j (phi o psi)_i, i < j,
/// with psi homogeneous of degree d.
CommutationIdeal commutation_ideal(const ProjMap& phi, unsigned degree, std::size_t cap = kDefaultEquationCap);

/// Points of the grid (values per unknown from coefficient_grid) where every
/// equation vanishes, in lexicographic grid order.
std::vector<std::vector<FieldElement>> ideal_grid_solutions(const CommutationIdeal& ideal, long coeff_bound,
                                                            long denom_bound, std::size_t cap = 10'000'000);

}  // namespace comdyn
