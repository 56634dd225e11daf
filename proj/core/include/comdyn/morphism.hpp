#pragma once

// Does a tuple of forms define a morphism of P^n (no common zero)?

#include <optional>
#include <vector>

#include "comdyn/poly_map.hpp"

namespace comdyn {

enum class MorphismVerdict { Morphism, NotMorphism, ProbablyMorphism, Inconclusive };
std::string_view to_string(MorphismVerdict v) noexcept;

struct MorphismReport {
  MorphismVerdict verdict = MorphismVerdict::Inconclusive;
  /// Exact common zero over the map's field.
  std::optional<Point> witness;
  /// n = 1 only.
  std::optional<FieldElement> resultant;
  /// Good primes whose F_p-enumeration found no common zero.
  std::vector<std::uint32_t> primes_clean;
  /// Good primes with F_p zeros that did not lift to the map's field.
  std::vector<std::uint32_t> primes_with_zeros;
  std::vector<std::uint32_t> primes_skipped;  // bad reduction
  std::string method;
};

inline const std::vector<std::uint32_t> kDefaultMorphismPrimes = {3, 5, 7, 11, 13, 17, 19};

/// Sylvester resultant of two binary forms of degree d (coefficients read in
/// the order X0^d, X0^{d-1} X1, ...).
FieldElement binary_resultant(const Poly& a, const Poly& b, unsigned degree);

/// n = 1: exact resultant. n >= 2: exact small-integer witness search, then
/// projective enumeration over F_p for each good prime. Over F_p fields the
/// field itself is enumerated. Throws NoGoodPrime, UnsupportedField.
MorphismReport is_morphism(const ProjMap& phi, const std::vector<std::uint32_t>& primes = kDefaultMorphismPrimes);

}  // namespace comdyn
