#pragma once

// Commutation predicates and enumeration of Com(f, d).

#include <optional>
#include <string>
#include <vector>

#include "comdyn/dynamics.hpp"
#include "comdyn/veronese.hpp"

namespace comdyn {

/// f o g == g o f, exact coefficient equality.
bool commutes_affine(const PolyMap& f, const PolyMap& g);

/// psi o phi proportional to phi o psi: every 2x2 cross product
/// (psi o phi)_i (phi o psi)_j - (psi o phi)_j (phi o psi)_i vanishes.
bool commutes_projective(const ProjMap& phi, const ProjMap& psi);

inline constexpr std::size_t kDefaultAssignmentCap = 10'000'000;

struct CommutantResult {
  PolyMap f;
  unsigned degree = 0;
  /// "catalog:<strategy>" or "grid:<bound>/<denom>".
  std::string method;
  /// Canonical text order, no duplicates.
  std::vector<PolyMap> maps;
  /// "complete-for-method" or "lower-bound-only".
  std::string completeness = "complete-for-method";
  /// What completeness is conditional on, e.g. "catalog contains V_d (bound:log(1))".
  std::string condition;
  /// Assignments or grid candidates actually enumerated.
  mpz_class explored = 0;

  // Catalog search only.
  std::optional<VeroneseFrame> frame;
  std::size_t m_d = 0;
  std::size_t v_d_size = 0;
  /// prod over strata (m, l) with m <= m_d of M^M, M = |Pre_{m,l}| (non-minimal).
  mpz_class counting_bound = 0;
  /// Per frame point: (m, l, candidate count).
  std::vector<std::tuple<std::size_t, std::size_t, std::size_t>> frame_strata;
};

/// Sorts by canonical text and removes duplicates.
void canonicalize(std::vector<PolyMap>& maps);

/// Candidate images for the frame come from the catalog points satisfying each
/// frame point's stratum. Each assignment is interpolated and kept iff
/// deg g = d and g commutes with f.
CommutantResult commutant_search(const PolyMap& f, unsigned degree, const PreperiodicCatalog& catalog,
                                 std::size_t cap = kDefaultAssignmentCap, unsigned threads = 1);

struct GridSpec {
  long coeff_bound = 1;
  long denom_bound = 1;
  /// Optional monomial support per component; default is all monomials of
  /// degree <= d.
  std::optional<std::vector<std::vector<Monomial>>> supports;
  std::size_t cap = kDefaultAssignmentCap;
  unsigned threads = 1;

  std::string to_string() const;  // "grid:<bound>/<denom>[+support]"
};

/// Distinct values a/b with |a| <= bound, 1 <= b <= denom, ascending.
std::vector<FieldElement> coefficient_grid(const FieldSpec& field, long coeff_bound, long denom_bound);

/// Every map with grid coefficients on the supports, max component degree
/// exactly d, commuting with f.
CommutantResult brute_force_commutant(const PolyMap& f, unsigned degree, const GridSpec& grid);

/// Inverse of an invertible degree-1 affine map.
std::optional<PolyMap> inverse_affine(const PolyMap& g);

struct AutomorphismResult {
  CommutantResult commutant;      // Com(phi, 1)
  std::vector<PolyMap> invertible;  // Aut(phi)
};

/// Com(f, 1) by the catalog search (when a catalog is given) or the grid,
/// plus its invertible subset.
AutomorphismResult automorphisms(const PolyMap& f, const GridSpec& grid,
                                 const PreperiodicCatalog* catalog = nullptr);

struct ProjectiveAutomorphismResult {
  std::vector<ProjMap> commuting;   // normalized linear maps commuting with phi
  std::vector<ProjMap> invertible;  // det != 0
  mpz_class explored = 0;
};

/// Linear [L_0, ..., L_n] with entries from the grid, normalized, commuting
/// with phi up to scalar.
ProjectiveAutomorphismResult projective_automorphisms(const ProjMap& phi, long coeff_bound,
                                                      std::size_t cap = kDefaultAssignmentCap);

}  // namespace comdyn
