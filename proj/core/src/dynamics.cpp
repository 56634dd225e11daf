#include "comdyn/dynamics.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <set>
#include <unordered_map>

namespace comdyn {

// ---------------------------------------------------------------------------
// Heights

double HeightValue::log_value() const {
  // log of a big integer without overflow: mantissa/exponent split.
  long exp = 0;
  const double mant = mpz_get_d_2exp(&exp, max_abs.get_mpz_t());
  return std::log(mant) + static_cast<double>(exp) * std::log(2.0);
}

HeightValue HeightValue::from_log(double b) {
  if (!(b >= 0.0) || b > 700.0) throw Error(ErrorCode::InvalidArgument, "height bound must lie in [0, 700]");
  const double e = std::exp(b);
  const double r = std::round(e);
  HeightValue h;
  h.max_abs = std::abs(e - r) <= 1e-9 * std::max(1.0, e) ? mpz_class(r) : mpz_class(std::floor(e));
  return h;
}

HeightValue HeightValue::parse(std::string_view text) {
  const std::string value(text);
  if (value.starts_with("H:")) {
    HeightValue h;
    if (value.size() == 2 || h.max_abs.set_str(value.substr(2), 10) != 0 || h.max_abs < 1) {
      throw Error(ErrorCode::InvalidArgument, "bad height '" + value + "'");
    }
    return h;
  }
  try {
    std::size_t used = 0;
    const double b = std::stod(value, &used);
    if (used == value.size()) return from_log(b);
  } catch (const std::invalid_argument&) {
  } catch (const std::out_of_range&) {
  }
  throw Error(ErrorCode::InvalidArgument, "bad height bound '" + value + "'");
}

std::string HeightValue::to_string() const { return "log(" + max_abs.get_str() + ")"; }

HeightValue weil_height(std::span<const FieldElement> point) {
  mpz_class lcm = 1;
  for (const auto& x : point) {
    if (!x.field().is_rational()) throw Error(ErrorCode::UnsupportedField, "Weil height is implemented over Q only");
    mpz_lcm(lcm.get_mpz_t(), lcm.get_mpz_t(), x.rational().get_den_mpz_t());
  }
  mpz_class g = lcm;
  mpz_class best = lcm;
  for (const auto& x : point) {
    const mpq_class& q = x.rational();
    mpz_class c = q.get_num() * (lcm / q.get_den());
    c = abs(c);
    mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), c.get_mpz_t());
    if (c > best) best = c;
  }
  HeightValue h;
  h.max_abs = best / g;
  return h;
}

std::vector<Point> bounded_height_points(std::size_t n, const HeightValue& bound, std::size_t cap) {
  const FieldSpec q = FieldSpec::rationals();
  if (!bound.max_abs.fits_slong_p() || bound.max_abs > 1'000'000) {
    throw Error(ErrorCode::ExplosionGuard, "height bound " + bound.to_string() + " is too large to enumerate");
  }
  const long h = bound.max_abs.get_si();
  // Upper estimate: h denominators times (2h+1)^n numerator tuples.
  mpz_class estimate = h;
  for (std::size_t i = 0; i < n; ++i) estimate *= 2 * h + 1;
  if (estimate > cap) {
    throw Error(ErrorCode::ExplosionGuard, "bounded-height enumeration needs up to " + estimate.get_str() +
                                               " points, cap is " + std::to_string(cap));
  }
  struct Entry {
    long height;
    long den;
    std::vector<long> nums;
  };
  std::vector<Entry> entries;
  std::vector<long> nums(n, -h);
  for (long den = 1; den <= h; ++den) {
    std::fill(nums.begin(), nums.end(), -h);
    while (true) {
      long g = den;
      long height = den;
      for (long a : nums) {
        g = std::gcd(g, std::abs(a));
        height = std::max(height, std::abs(a));
      }
      if (g == 1) entries.push_back({height, den, nums});
      std::size_t i = n;
      while (i > 0 && nums[i - 1] == h) nums[--i] = -h;
      if (i == 0) break;
      ++nums[i - 1];
    }
  }
  std::sort(entries.begin(), entries.end(), [](const Entry& a, const Entry& b) {
    if (a.height != b.height) return a.height < b.height;
    if (a.den != b.den) return a.den < b.den;
    return a.nums < b.nums;
  });
  std::vector<Point> out;
  out.reserve(entries.size());
  for (const auto& e : entries) {
    Point p;
    for (long a : e.nums) p.push_back(FieldElement::from_rational(q, mpq_class(a, e.den)));
    out.push_back(std::move(p));
  }
  return out;
}

// ---------------------------------------------------------------------------
// Orbits

std::string_view to_string(OrbitStatus status) noexcept {
  switch (status) {
    case OrbitStatus::Preperiodic: return "Preperiodic";
    case OrbitStatus::EscapedHeightBound: return "EscapedHeightBound";
    case OrbitStatus::StepLimitReached: return "StepLimitReached";
  }
  return "?";
}

namespace {

std::size_t rational_bits(const mpq_class& q) {
  return mpz_sizeinbase(q.get_num_mpz_t(), 2) + mpz_sizeinbase(q.get_den_mpz_t(), 2);
}

}  // namespace

std::size_t bit_size(std::span<const FieldElement> point) {
  std::size_t bits = 0;
  for (const auto& c : point) {
    if (c.field().is_rational()) bits += rational_bits(c.rational());
    else if (c.field().is_cyclotomic())
      for (const auto& q : c.cyclotomic_coefficients()) bits += rational_bits(q);
  }
  return bits;
}

OrbitRecord orbit(const PolyMap& f, const Point& p, std::size_t step_limit,
                  const std::optional<HeightValue>& height_bound) {
  if (step_limit == 0) throw Error(ErrorCode::InvalidArgument, "step limit must be at least 1");
  if (height_bound && !f.field().is_rational()) {
    throw Error(ErrorCode::UnsupportedField, "height bounds are available over Q only");
  }
  if (p.size() != f.dimension()) throw Error(ErrorCode::DimensionMismatch, "orbit point dimension mismatch");
  OrbitRecord rec;
  rec.base = p;
  rec.bound = height_bound;
  rec.points.push_back(p);
  std::unordered_map<Point, std::size_t, PointHash> seen;
  seen.emplace(p, 0);
  Point current = p;
  for (std::size_t step = 1; step <= step_limit; ++step) {
    current = evaluate(f, current);
    if (auto it = seen.find(current); it != seen.end()) {
      rec.status = OrbitStatus::Preperiodic;
      rec.m = step;
      rec.l = it->second;
      return rec;
    }
    if (bit_size(current) > kDefaultOrbitBitCap) {
      throw Error(ErrorCode::ExplosionGuard, "iterate " + std::to_string(step) + " exceeds " +
                                                 std::to_string(kDefaultOrbitBitCap) + " bits");
    }
    rec.points.push_back(current);
    if (height_bound && weil_height(current).max_abs > height_bound->max_abs) {
      rec.status = OrbitStatus::EscapedHeightBound;
      return rec;
    }
    seen.emplace(current, step);
  }
  rec.status = OrbitStatus::StepLimitReached;
  return rec;
}

bool satisfies_stratum(std::size_t m0, std::size_t l0, std::size_t m, std::size_t l) noexcept {
  if (m <= l || m0 <= l0) return false;
  return l0 <= l && (m - l) % (m0 - l0) == 0;
}

// ---------------------------------------------------------------------------
// Catalogs

CatalogStrategy CatalogStrategy::parse(std::string_view text) {
  if (text == "finite") return finite_field_full();
  if (text.starts_with("monomial:")) {
    const std::string digits(text.substr(9));
    try {
      std::size_t used = 0;
      const unsigned long n = std::stoul(digits, &used);
      if (used == digits.size() && n > 0 && n < (1UL << 31)) return monomial_exact(static_cast<std::uint32_t>(n));
    } catch (const std::exception&) {
    }
    throw Error(ErrorCode::InvalidArgument, "bad monomial order in '" + std::string(text) + "'");
  }
  if (text.starts_with("bounded:")) return bounded_height(HeightValue::parse(text.substr(8)));
  throw Error(ErrorCode::InvalidArgument,
              "catalog strategy must be bounded:<B>, bounded:H:<int>, monomial:<N> or finite; got '" +
                  std::string(text) + "'");
}

std::string CatalogStrategy::to_string() const {
  switch (kind) {
    case Kind::BoundedHeightSearch: return "bounded:H:" + bound.max_abs.get_str();
    case Kind::MonomialExact: return "monomial:" + std::to_string(order);
    case Kind::FiniteFieldFull: return "finite";
  }
  return "?";
}

PreperiodicCatalog::PreperiodicCatalog(PolyMap f, CatalogStrategy strategy, std::vector<Stratum> strata)
    : f_(std::move(f)), strategy_(strategy) {
  std::map<std::pair<std::size_t, std::size_t>, std::vector<Point>> grouped;
  for (auto& s : strata) {
    auto& bucket = grouped[{s.m, s.l}];
    for (auto& p : s.points) bucket.push_back(std::move(p));
  }
  for (auto& [key, pts] : grouped) {
    std::sort(pts.begin(), pts.end(), PointLess{});
    for (const auto& p : pts) {
      if (!index_.emplace(p, key).second) {
        throw Error(ErrorCode::InvalidArgument, "catalog point " + std::to_string(index_.size()) + " is listed twice");
      }
    }
    strata_.push_back({key.first, key.second, std::move(pts)});
  }
  for (const auto& [p, key] : index_) {
    const auto rec = orbit(f_, p, key.first);
    if (rec.status != OrbitStatus::Preperiodic || rec.m != key.first || rec.l != key.second) {
      throw Error(ErrorCode::InvalidArgument, "catalog point does not have minimal (m, l) = (" +
                                                  std::to_string(key.first) + ", " + std::to_string(key.second) +
                                                  ")");
    }
    if (!contains(evaluate(f_, p))) throw Error(ErrorCode::NotClosed, "catalog is not closed under f");
  }
}

std::string PreperiodicCatalog::certification() const {
  if (strategy_.kind == CatalogStrategy::Kind::BoundedHeightSearch) return "bound:" + strategy_.bound.to_string();
  return "exact";
}

std::optional<std::pair<std::size_t, std::size_t>> PreperiodicCatalog::stratum_of(const Point& p) const {
  auto it = index_.find(p);
  if (it == index_.end()) return std::nullopt;
  return it->second;
}

std::vector<Point> PreperiodicCatalog::stream() const {
  std::vector<Point> out;
  out.reserve(index_.size());
  for (const auto& s : strata_) out.insert(out.end(), s.points.begin(), s.points.end());
  return out;
}

std::vector<Point> PreperiodicCatalog::points_satisfying(std::size_t m, std::size_t l) const {
  std::vector<Point> out;
  for (const auto& s : strata_) {
    if (satisfies_stratum(s.m, s.l, m, l)) out.insert(out.end(), s.points.begin(), s.points.end());
  }
  std::sort(out.begin(), out.end(), PointLess{});
  return out;
}

namespace {

std::vector<Stratum> classify(const PolyMap& f, const std::vector<Point>& candidates,
                              const std::optional<HeightValue>& bound) {
  std::map<std::pair<std::size_t, std::size_t>, std::vector<Point>> grouped;
  const std::size_t limit = candidates.size() + 1;
  for (const auto& p : candidates) {
    const auto rec = orbit(f, p, limit, bound);
    if (rec.status == OrbitStatus::Preperiodic) grouped[{rec.m, rec.l}].push_back(p);
  }
  std::vector<Stratum> out;
  for (auto& [key, pts] : grouped) out.push_back({key.first, key.second, std::move(pts)});
  return out;
}

void check_cap(const mpz_class& count, std::size_t cap, const std::string& what) {
  if (count > cap) {
    throw Error(ErrorCode::ExplosionGuard,
                what + " has " + count.get_str() + " points, cap is " + std::to_string(cap));
  }
}

PreperiodicCatalog monomial_catalog(const PolyMap& f, std::uint32_t order, std::size_t cap) {
  if (!is_prime(order)) {
    throw Error(ErrorCode::UnsupportedOrder, "monomial catalog order must be prime, got " + std::to_string(order));
  }
  const FieldSpec target = FieldSpec::cyclotomic(order);
  if (!f.field().is_rational() && !(f.field() == target)) {
    throw Error(ErrorCode::StrategyInapplicable, "monomial catalog over " + target.to_string() +
                                                     " needs a map over Q or that field");
  }
  bool negative = false;
  for (const auto& comp : f.components()) {
    if (comp.size() != 1) throw Error(ErrorCode::StrategyInapplicable, "map is not monomial");
    const auto c = comp.terms().begin()->second.as_rational();
    if (!c || (*c != 1 && *c != -1)) {
      throw Error(ErrorCode::StrategyInapplicable, "monomial catalog needs coefficients +1 or -1");
    }
    negative = negative || *c == -1;
  }
  std::vector<Poly> comps;
  for (const auto& comp : f.components()) {
    comps.push_back(comp.map_coefficients(
        [&](const FieldElement& c) { return FieldElement::from_rational(target, *c.as_rational()); }));
  }
  PolyMap g(target, std::move(comps));
  const std::size_t n = f.dimension();
  // With -1 coefficients the torus is closed only after adjoining signs.
  const std::uint32_t per_coord = negative ? 2 * order : order;
  mpz_class count = 1;
  for (std::size_t i = 0; i < n; ++i) count *= per_coord;
  check_cap(count, cap, "monomial torus");
  std::vector<FieldElement> units;
  for (std::uint32_t e = 0; e < order; ++e) units.push_back(FieldElement::zeta(target, e));
  if (negative) {
    for (std::uint32_t e = 0; e < order; ++e) units.push_back(-FieldElement::zeta(target, e));
  }
  std::vector<Point> candidates;
  std::vector<std::size_t> idx(n, 0);
  while (true) {
    Point p;
    for (auto i : idx) p.push_back(units[i]);
    candidates.push_back(std::move(p));
    std::size_t i = n;
    while (i > 0 && idx[i - 1] + 1 == units.size()) idx[--i] = 0;
    if (i == 0) break;
    ++idx[i - 1];
  }
  return PreperiodicCatalog(g, CatalogStrategy::monomial_exact(order), classify(g, candidates, std::nullopt));
}

PreperiodicCatalog finite_field_catalog(const PolyMap& f, std::size_t cap) {
  if (!f.field().is_prime_field()) {
    throw Error(ErrorCode::StrategyInapplicable, "full enumeration needs a prime field, got " + f.field().to_string());
  }
  const std::uint32_t p = f.field().order();
  const std::size_t n = f.dimension();
  mpz_class count = 1;
  for (std::size_t i = 0; i < n; ++i) count *= p;
  check_cap(count, cap, "finite field space");
  std::vector<Point> candidates;
  std::vector<long> idx(n, 0);
  while (true) {
    Point pt;
    for (auto v : idx) pt.push_back(FieldElement::from_integer(f.field(), v));
    candidates.push_back(std::move(pt));
    std::size_t i = n;
    while (i > 0 && idx[i - 1] + 1 == static_cast<long>(p)) idx[--i] = 0;
    if (i == 0) break;
    ++idx[i - 1];
  }
  return PreperiodicCatalog(f, CatalogStrategy::finite_field_full(), classify(f, candidates, std::nullopt));
}

}  // namespace

PreperiodicCatalog build_catalog(const PolyMap& f, const CatalogStrategy& strategy, std::size_t cap) {
  switch (strategy.kind) {
    case CatalogStrategy::Kind::BoundedHeightSearch: {
      if (!f.field().is_rational()) {
        throw Error(ErrorCode::StrategyInapplicable, "bounded-height search needs a map over Q");
      }
      const auto candidates = bounded_height_points(f.dimension(), strategy.bound, cap);
      return PreperiodicCatalog(f, strategy, classify(f, candidates, strategy.bound));
    }
    case CatalogStrategy::Kind::MonomialExact: return monomial_catalog(f, strategy.order, cap);
    case CatalogStrategy::Kind::FiniteFieldFull: return finite_field_catalog(f, cap);
  }
  throw Error(ErrorCode::InvalidArgument, "unknown catalog strategy");
}

// ---------------------------------------------------------------------------
// Monomial engine

std::optional<MonomialMapSpec> MonomialMapSpec::from_map(const PolyMap& f) {
  MonomialMapSpec spec;
  for (const auto& comp : f.components()) {
    if (comp.size() != 1 || !comp.terms().begin()->second.is_one()) return std::nullopt;
    spec.exponents.push_back(comp.terms().begin()->first.exponents());
  }
  return spec;
}

PolyMap MonomialMapSpec::to_map(const FieldSpec& field) const {
  std::vector<Poly> comps;
  for (const auto& row : exponents) {
    if (row.size() != exponents.size()) throw Error(ErrorCode::DimensionMismatch, "exponent matrix is not square");
    comps.push_back(Poly::term(Monomial(row), FieldElement::one(field)));
  }
  return PolyMap(field, std::move(comps));
}

namespace {

using ModMatrix = std::vector<std::vector<std::uint64_t>>;

ModMatrix mod_mul(const ModMatrix& a, const ModMatrix& b, std::uint64_t n) {
  const std::size_t k = a.size();
  ModMatrix c(k, std::vector<std::uint64_t>(k, 0));
  for (std::size_t i = 0; i < k; ++i) {
    for (std::size_t j = 0; j < k; ++j) {
      std::uint64_t s = 0;
      for (std::size_t t = 0; t < k; ++t) s = (s + a[i][t] * b[t][j]) % n;
      c[i][j] = s;
    }
  }
  return c;
}

std::uint64_t inv_mod(std::uint64_t a, std::uint64_t n) {
  std::uint64_t result = 1;
  std::uint64_t base = a % n;
  for (std::uint64_t e = n - 2; e > 0; e >>= 1U) {
    if (e & 1U) result = result * base % n;
    base = base * base % n;
  }
  return result;
}

// Kernel basis of b over Z/n (n prime).
std::vector<std::vector<std::uint64_t>> kernel_mod(ModMatrix b, std::uint64_t n) {
  const std::size_t k = b.size();
  std::vector<std::size_t> pivots;
  std::size_t row = 0;
  for (std::size_t col = 0; col < k && row < k; ++col) {
    std::size_t piv = row;
    while (piv < k && b[piv][col] == 0) ++piv;
    if (piv == k) continue;
    std::swap(b[piv], b[row]);
    const std::uint64_t s = inv_mod(b[row][col], n);
    for (auto& v : b[row]) v = v * s % n;
    for (std::size_t r = 0; r < k; ++r) {
      if (r == row || b[r][col] == 0) continue;
      const std::uint64_t factor = b[r][col];
      for (std::size_t c = 0; c < k; ++c) b[r][c] = (b[r][c] + n * n - factor * b[row][c] % n) % n;
    }
    pivots.push_back(col);
    ++row;
  }
  std::vector<bool> is_pivot(k, false);
  for (auto p : pivots) is_pivot[p] = true;
  std::vector<std::vector<std::uint64_t>> basis;
  for (std::size_t free = 0; free < k; ++free) {
    if (is_pivot[free]) continue;
    std::vector<std::uint64_t> v(k, 0);
    v[free] = 1;
    for (std::size_t r = 0; r < pivots.size(); ++r) v[pivots[r]] = (n - b[r][free]) % n;
    basis.push_back(std::move(v));
  }
  return basis;
}

}  // namespace

std::vector<PeriodicTorusPoint> monomial_periodic_points(const MonomialMapSpec& a, std::uint32_t n_order,
                                                         std::size_t m) {
  if (!is_prime(n_order)) {
    throw Error(ErrorCode::UnsupportedOrder, "torus order must be prime, got " + std::to_string(n_order));
  }
  if (m == 0) throw Error(ErrorCode::InvalidArgument, "period must be at least 1");
  const std::size_t k = a.dimension();
  const std::uint64_t n = n_order;
  ModMatrix base(k, std::vector<std::uint64_t>(k, 0));
  for (std::size_t i = 0; i < k; ++i) {
    if (a.exponents[i].size() != k) throw Error(ErrorCode::DimensionMismatch, "exponent matrix is not square");
    for (std::size_t j = 0; j < k; ++j) base[i][j] = a.exponents[i][j] % n;
  }
  ModMatrix power(k, std::vector<std::uint64_t>(k, 0));
  for (std::size_t i = 0; i < k; ++i) power[i][i] = 1;
  ModMatrix sq = base;
  for (std::size_t e = m; e > 0; e >>= 1U) {
    if (e & 1U) power = mod_mul(power, sq, n);
    sq = mod_mul(sq, sq, n);
  }
  for (std::size_t i = 0; i < k; ++i) power[i][i] = (power[i][i] + n - 1) % n;
  const auto basis = kernel_mod(power, n);

  mpz_class count = 1;
  for (std::size_t i = 0; i < basis.size(); ++i) count *= n;
  if (count > kDefaultPointCap) throw Error(ErrorCode::ExplosionGuard, "periodic torus set has " + count.get_str() + " points");

  const FieldSpec field = FieldSpec::cyclotomic(n_order);
  std::vector<std::vector<std::uint32_t>> vectors;
  std::vector<std::uint64_t> coeff(basis.size(), 0);
  while (true) {
    std::vector<std::uint32_t> v(k, 0);
    for (std::size_t b = 0; b < basis.size(); ++b) {
      for (std::size_t i = 0; i < k; ++i) v[i] = static_cast<std::uint32_t>((v[i] + coeff[b] * basis[b][i]) % n);
    }
    vectors.push_back(std::move(v));
    std::size_t i = basis.size();
    while (i > 0 && coeff[i - 1] + 1 == n) coeff[--i] = 0;
    if (i == 0) break;
    ++coeff[i - 1];
  }
  std::sort(vectors.begin(), vectors.end());

  std::vector<PeriodicTorusPoint> out;
  for (auto& v : vectors) {
    PeriodicTorusPoint tp;
    tp.exponents = v;
    for (auto e : v) tp.point.push_back(FieldElement::zeta(field, e));
    std::vector<std::uint64_t> w(v.begin(), v.end());
    for (std::size_t step = 1; step <= m; ++step) {
      std::vector<std::uint64_t> next(k, 0);
      for (std::size_t i = 0; i < k; ++i) {
        for (std::size_t j = 0; j < k; ++j) next[i] = (next[i] + base[i][j] * w[j]) % n;
      }
      w = std::move(next);
      if (std::equal(w.begin(), w.end(), v.begin())) {
        tp.exact_period = step;
        break;
      }
    }
    out.push_back(std::move(tp));
  }
  return out;
}

// ---------------------------------------------------------------------------
// Invariance

InvarianceReport verify_invariance(const PolyMap& g, const PreperiodicCatalog& catalog) {
  const PolyMap& f = catalog.map();
  if (!(compose(f, g) == compose(g, f))) throw Error(ErrorCode::NotCommuting, "g does not commute with the catalog map");
  InvarianceReport report;
  std::set<Point, PointLess> images;
  for (const auto& s : catalog.strata()) {
    for (const auto& p : s.points) {
      Point q = evaluate(g, p);
      const auto key = catalog.stratum_of(q);
      if (!key) {
        report.violations.push_back({p, q, s.m, s.l, "outside-catalog"});
      } else if (!satisfies_stratum(key->first, key->second, s.m, s.l)) {
        report.violations.push_back({p, q, s.m, s.l, "wrong-stratum"});
      }
      images.insert(std::move(q));
    }
  }
  report.containment = report.violations.empty();
  for (const auto& p : catalog.stream()) {
    if (images.count(p) == 0) report.missed.push_back(p);
  }
  report.surjective = report.missed.empty();
  return report;
}

}  // namespace comdyn
