#pragma once

// Exact scalars over Q, the prime cyclotomic fields Q(zeta_p) and the prime
// fields F_p.

#include <gmpxx.h>

#include <complex>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace comdyn {

bool is_prime(std::uint64_t n) noexcept;

class FieldSpec {
 public:
  enum class Kind : std::uint8_t { Rational, Cyclotomic, PrimeField };

  FieldSpec() = default;

  static FieldSpec rationals() { return {}; }
  /// Q(zeta_p); p must be prime.
  static FieldSpec cyclotomic(std::uint32_t p);
  /// F_p; p must be prime.
  static FieldSpec prime_field(std::uint32_t p);
  /// Accepts `Q`, `Qzeta:<p>` and `Fp:<p>`.
  static FieldSpec parse(std::string_view text);

  Kind kind() const noexcept { return kind_; }
  /// The prime p for cyclotomic and prime fields, 0 for Q.
  std::uint32_t order() const noexcept { return order_; }
  bool is_rational() const noexcept { return kind_ == Kind::Rational; }
  bool is_cyclotomic() const noexcept { return kind_ == Kind::Cyclotomic; }
  bool is_prime_field() const noexcept { return kind_ == Kind::PrimeField; }

  std::string to_string() const;

  friend bool operator==(const FieldSpec&, const FieldSpec&) = default;

 private:
  FieldSpec(Kind kind, std::uint32_t order) : kind_(kind), order_(order) {}

  Kind kind_ = Kind::Rational;
  std::uint32_t order_ = 0;
};

/// An element of a FieldSpec, always held in canonical form:
///  - Q: lowest terms, positive denominator (mpq_class canonicalizes);
///  - Q(zeta_p): the p-1 coefficients of the unique representative of degree
///    below p-1 modulo 1 + x + ... + x^(p-1);
///  - F_p: a residue in [0, p).
/// Values are immutable once built; arithmetic never mixes fields.
class FieldElement {
 public:
  /// Zero of Q.
  FieldElement() = default;

  static FieldElement zero(const FieldSpec& field);
  static FieldElement one(const FieldSpec& field);
  static FieldElement from_integer(const FieldSpec& field, long value);
  static FieldElement from_integer(const FieldSpec& field, const mpz_class& value);
  /// Throws DivisionByZero when the denominator vanishes in F_p.
  static FieldElement from_rational(const FieldSpec& field, const mpq_class& value);
  /// zeta_p^exponent; the field must be cyclotomic.
  static FieldElement zeta(const FieldSpec& field, long exponent = 1);
  /// Builds an element of Q(zeta_p) from the coefficients of any polynomial
  /// in zeta (index = power); the result is reduced.
  static FieldElement from_zeta_polynomial(const FieldSpec& field,
                                           std::span<const mpq_class> coefficients);

  const FieldSpec& field() const noexcept { return field_; }

  bool is_zero() const noexcept;
  bool is_one() const noexcept;

  FieldElement operator-() const;
  friend FieldElement operator+(const FieldElement& a, const FieldElement& b);
  friend FieldElement operator-(const FieldElement& a, const FieldElement& b);
  friend FieldElement operator*(const FieldElement& a, const FieldElement& b);
  friend FieldElement operator/(const FieldElement& a, const FieldElement& b);
  FieldElement& operator+=(const FieldElement& other) { return *this = *this + other; }
  FieldElement& operator-=(const FieldElement& other) { return *this = *this - other; }
  FieldElement& operator*=(const FieldElement& other) { return *this = *this * other; }

  FieldElement inverse() const;
  FieldElement pow(std::uint64_t exponent) const;

  friend bool operator==(const FieldElement& a, const FieldElement& b);

  /// Rational value; throws UnsupportedField for other kinds.
  const mpq_class& rational() const;
  /// The value as a rational when it lies in Q (cyclotomic constants too).
  std::optional<mpq_class> as_rational() const;
  /// Reduced coefficient vector of length p-1; cyclotomic only.
  std::span<const mpq_class> cyclotomic_coefficients() const;
  /// Residue in [0, p); prime-field only.
  std::uint64_t residue() const;

  /// Total order used for canonical sorting (numeric on Q, lexicographic on
  /// coefficient vectors, by residue on F_p). Both operands must share a field.
  int compare(const FieldElement& other) const;
  std::size_t hash() const noexcept;

  /// Canonical scalar text, e.g. `-5/6`, `3*zeta^2 + 1`, `17`.
  std::string to_string() const;
  /// Numeric view through the embedding zeta -> exp(2 pi i / p). Debug use only.
  std::complex<double> to_complex() const;

 private:
  explicit FieldElement(const FieldSpec& field);
  static FieldElement reduce_cyclic(const FieldSpec& field, std::vector<mpq_class> cyclic);

  FieldSpec field_;
  mpq_class q_;                 // Rational
  std::vector<mpq_class> cyc_;  // Cyclotomic, size p-1
  std::uint64_t res_ = 0;       // PrimeField
};

/// Checked operation that rejects elements from different fields.
void require_same_field(const FieldElement& a, const FieldElement& b);

// ---------------------------------------------------------------------------
// k-th roots

/// Trial division factor bound used by the rational root test.
inline constexpr std::uint64_t kDefaultFactorBound = 1'000'000;

/// s with s^k = r when such a rational exists. Works by trial-division
/// factoring of numerator and denominator; throws ZeroInput for r = 0 and
/// FactorizationLimitExceeded when a cofactor cannot be resolved below
/// `factor_bound`.
std::optional<mpq_class> kth_root_in_rationals(const mpq_class& r, unsigned k,
                                               std::uint64_t factor_bound = kDefaultFactorBound);

/// (e, q) with a = q * zeta^e, 0 <= e < p, when a has that shape.
std::optional<std::pair<unsigned, mpq_class>> cyclotomic_root_of_unity_part(
    const FieldElement& a);

enum class RootVerdict { Exists, DoesNotExist, Undecided };

std::string_view to_string(RootVerdict verdict) noexcept;

struct RootCheck {
  RootVerdict verdict = RootVerdict::Undecided;
  std::optional<FieldElement> witness;
  std::string method;
};

/// Decides whether a has a k-th root inside its own field.
///  - Q: exact via kth_root_in_rationals.
///  - F_p: exact via a^((p-1)/gcd(k, p-1)) == 1.
///  - Q(zeta_p): only for a = q*zeta^e. A norm obstruction proves absence; a
///    rational root of q with gcd(k, p) = 1 proves existence; anything else is
///    Undecided.
RootCheck kth_root_in_field(const FieldElement& a, unsigned k,
                            std::uint64_t factor_bound = kDefaultFactorBound);

}  // namespace comdyn
