#pragma once

// Orbits, heights, preperiodic catalogs and the monomial-map engine.

#include <cstddef>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "comdyn/poly_map.hpp"

namespace comdyn {

/// Weil height of a rational point, kept as the exact integer H = max |c_i|
/// over the coprime tuple (L, L*x_1, ..., L*x_n); h = log H.
struct HeightValue {
  mpz_class max_abs{1};

  double log_value() const;
  /// Largest integer H with log H <= b; accepts b within 1e-9 of log of an integer.
  static HeightValue from_log(double b);
  /// A log value such as "0" or "0.6931", or the exact form "H:<int>".
  static HeightValue parse(std::string_view text);
  std::string to_string() const;  // "log(H)"

  friend bool operator==(const HeightValue&, const HeightValue&) = default;
};

HeightValue weil_height(std::span<const FieldElement> point);

inline constexpr std::size_t kDefaultPointCap = 2'000'000;

/// All points of A^n(Q) with height <= bound, ordered by height, then common
/// denominator, then numerators ascending.
std::vector<Point> bounded_height_points(std::size_t n, const HeightValue& bound,
                                         std::size_t cap = kDefaultPointCap);

enum class OrbitStatus { Preperiodic, EscapedHeightBound, StepLimitReached };
std::string_view to_string(OrbitStatus status) noexcept;

struct OrbitRecord {
  Point base;
  /// P, f(P), ..., up to the last new point (or the escaping point).
  std::vector<Point> points;
  OrbitStatus status = OrbitStatus::StepLimitReached;
  /// Minimal (m, l) with f^m(P) = f^l(P); meaningful when Preperiodic.
  std::size_t m = 0;
  std::size_t l = 0;
  std::optional<HeightValue> bound;

  std::size_t cycle_length() const noexcept { return m - l; }
};

/// Total bits an iterate's coordinates may occupy before orbit() gives up.
inline constexpr std::size_t kDefaultOrbitBitCap = std::size_t{1} << 22;

/// Bits of all numerators and denominators of the point.
std::size_t bit_size(std::span<const FieldElement> point);

/// Iterates f from P until an exact repeat, a height escape (iterates k >= 1
/// only; needs Q) or `step_limit` applications of f. Throws ExplosionGuard
/// when an iterate exceeds kDefaultOrbitBitCap bits.
OrbitRecord orbit(const PolyMap& f, const Point& p, std::size_t step_limit,
                  const std::optional<HeightValue>& height_bound = std::nullopt);

/// Q lies in Pre_{m,l} (non-minimal sense: f^m(Q) = f^l(Q)) given its
/// minimal pair (m0, l0).
bool satisfies_stratum(std::size_t m0, std::size_t l0, std::size_t m, std::size_t l) noexcept;

struct CatalogStrategy {
  enum class Kind { BoundedHeightSearch, MonomialExact, FiniteFieldFull };
  Kind kind = Kind::BoundedHeightSearch;
  HeightValue bound;     // BoundedHeightSearch
  std::uint32_t order = 0;  // MonomialExact: N

  static CatalogStrategy bounded_height(HeightValue b) { return {Kind::BoundedHeightSearch, b, 0}; }
  static CatalogStrategy monomial_exact(std::uint32_t n) { return {Kind::MonomialExact, {}, n}; }
  static CatalogStrategy finite_field_full() { return {Kind::FiniteFieldFull, {}, 0}; }

  /// "bounded:B" | "monomial:N" | "finite"; B is a log height or "H:<int>".
  static CatalogStrategy parse(std::string_view text);
  std::string to_string() const;
};

struct Stratum {
  std::size_t m = 0;
  std::size_t l = 0;
  std::vector<Point> points;  // PointLess order
};

class PreperiodicCatalog {
 public:
  PreperiodicCatalog() = default;
  /// Takes strata in any order; sorts them, checks disjointness and f-closure
  /// (NotClosed) and that every point satisfies f^m = f^l.
  PreperiodicCatalog(PolyMap f, CatalogStrategy strategy, std::vector<Stratum> strata);

  const PolyMap& map() const noexcept { return f_; }
  const FieldSpec& field() const noexcept { return f_.field(); }
  const CatalogStrategy& strategy() const noexcept { return strategy_; }
  /// Sorted by (m, l).
  const std::vector<Stratum>& strata() const noexcept { return strata_; }
  std::size_t size() const noexcept { return index_.size(); }
  /// "exact" or "bound:<B>".
  std::string certification() const;

  /// Minimal (m, l) of a stored point.
  std::optional<std::pair<std::size_t, std::size_t>> stratum_of(const Point& p) const;
  bool contains(const Point& p) const { return index_.count(p) != 0; }

  /// Strata in (m, l) order, points in canonical order inside each.
  std::vector<Point> stream() const;
  /// All stored points satisfying Pre_{m,l} in the non-minimal sense.
  std::vector<Point> points_satisfying(std::size_t m, std::size_t l) const;

 private:
  PolyMap f_;
  CatalogStrategy strategy_;
  std::vector<Stratum> strata_;
  std::map<Point, std::pair<std::size_t, std::size_t>, PointLess> index_;
};

PreperiodicCatalog build_catalog(const PolyMap& f, const CatalogStrategy& strategy,
                                 std::size_t cap = kDefaultPointCap);

/// x_i -> prod_j x_j^{A_ij} with unit coefficients.
struct MonomialMapSpec {
  std::vector<std::vector<std::uint32_t>> exponents;

  std::size_t dimension() const noexcept { return exponents.size(); }
  /// Reads A from a map with one monomial per component; coefficients must be 1.
  static std::optional<MonomialMapSpec> from_map(const PolyMap& f);
  PolyMap to_map(const FieldSpec& field) const;
};

struct PeriodicTorusPoint {
  std::vector<std::uint32_t> exponents;  // v with P = (zeta^{v_1}, ...)
  Point point;
  std::size_t exact_period = 0;
};

/// All v in (Z/N)^n with (A^m - I) v = 0 mod N, as points of Q(zeta_N), in
/// lexicographic v order.
std::vector<PeriodicTorusPoint> monomial_periodic_points(const MonomialMapSpec& a, std::uint32_t n_order,
                                                         std::size_t m);

struct InvarianceViolation {
  Point point;
  Point image;
  std::size_t m = 0;
  std::size_t l = 0;
  std::string reason;  // "outside-catalog" | "wrong-stratum"
};

struct InvarianceReport {
  bool containment = true;
  bool surjective = true;
  std::vector<InvarianceViolation> violations;
  /// Catalog points not hit by g.
  std::vector<Point> missed;
};

/// Checks g(Pre_{m,l}) subset Pre_{m,l} on every catalog point, and whether g
/// maps the catalog onto itself. Throws NotCommuting when g does not commute
/// with the catalog map.
InvarianceReport verify_invariance(const PolyMap& g, const PreperiodicCatalog& catalog);

}  // namespace comdyn
