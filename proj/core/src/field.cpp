#include "comdyn/field.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <functional>
#include <numbers>
#include <numeric>

#include "comdyn/error.hpp"

namespace comdyn {

namespace {

__extension__ using u128 = unsigned __int128;

std::uint64_t mul_mod(std::uint64_t a, std::uint64_t b, std::uint64_t p) {
  return static_cast<std::uint64_t>((static_cast<u128>(a) * b) % p);
}

std::uint64_t pow_mod(std::uint64_t base, std::uint64_t exponent, std::uint64_t p) {
  std::uint64_t result = 1 % p;
  base %= p;
  while (exponent > 0) {
    if (exponent & 1U) result = mul_mod(result, base, p);
    base = mul_mod(base, base, p);
    exponent >>= 1U;
  }
  return result;
}

std::uint64_t reduce_mpz(const mpz_class& value, std::uint64_t p) {
  mpz_class r;
  mpz_fdiv_r_ui(r.get_mpz_t(), value.get_mpz_t(), p);
  return r.get_ui();
}

void combine_hash(std::size_t& seed, std::size_t value) {
  seed ^= value + 0x9e3779b97f4a7c15ULL + (seed << 6U) + (seed >> 2U);
}

std::size_t hash_mpz(const mpz_class& z) {
  const auto size = static_cast<std::size_t>(mpz_size(z.get_mpz_t()));
  std::size_t seed = size ^ static_cast<std::size_t>(mpz_sgn(z.get_mpz_t()) + 1);
  for (std::size_t i = 0; i < std::min<std::size_t>(size, 2); ++i) {
    combine_hash(seed, static_cast<std::size_t>(mpz_getlimbn(z.get_mpz_t(), static_cast<mp_size_t>(i))));
  }
  return seed;
}

std::size_t hash_mpq(const mpq_class& q) {
  std::size_t seed = hash_mpz(q.get_num());
  combine_hash(seed, hash_mpz(q.get_den()));
  return seed;
}

// Joins "c*m" style terms with +/- separators.
void append_term(std::string& out, const std::string& term) {
  if (out.empty()) {
    out = term;
  } else if (!term.empty() && term.front() == '-') {
    out += " - ";
    out += term.substr(1);
  } else {
    out += " + ";
    out += term;
  }
}

}  // namespace

bool is_prime(std::uint64_t n) noexcept {
  if (n < 2) return false;
  if (n % 2 == 0) return n == 2;
  for (std::uint64_t d = 3; d * d <= n; d += 2) {
    if (n % d == 0) return false;
  }
  return true;
}

// ---------------------------------------------------------------------------
// FieldSpec

FieldSpec FieldSpec::cyclotomic(std::uint32_t p) {
  if (!is_prime(p)) {
    throw Error(ErrorCode::InvalidFieldSpec,
                "cyclotomic order must be prime, got " + std::to_string(p));
  }
  return {Kind::Cyclotomic, p};
}

FieldSpec FieldSpec::prime_field(std::uint32_t p) {
  if (!is_prime(p)) {
    throw Error(ErrorCode::InvalidFieldSpec,
                "prime field modulus must be prime, got " + std::to_string(p));
  }
  return {Kind::PrimeField, p};
}

FieldSpec FieldSpec::parse(std::string_view text) {
  auto parse_order = [&](std::string_view digits) {
    std::uint32_t value = 0;
    auto [ptr, ec] = std::from_chars(digits.data(), digits.data() + digits.size(), value);
    if (ec != std::errc{} || ptr != digits.data() + digits.size() || digits.empty()) {
      throw Error(ErrorCode::InvalidFieldSpec, "bad field order in '" + std::string(text) + "'");
    }
    return value;
  };
  if (text == "Q") return rationals();
  if (text.starts_with("Qzeta:")) return cyclotomic(parse_order(text.substr(6)));
  if (text.starts_with("Fp:")) return prime_field(parse_order(text.substr(3)));
  throw Error(ErrorCode::InvalidFieldSpec,
              "unknown field '" + std::string(text) + "' (expected Q, Qzeta:p or Fp:p)");
}

std::string FieldSpec::to_string() const {
  switch (kind_) {
    case Kind::Rational: return "Q";
    case Kind::Cyclotomic: return "Qzeta:" + std::to_string(order_);
    case Kind::PrimeField: return "Fp:" + std::to_string(order_);
  }
  return "?";
}

// ---------------------------------------------------------------------------
// FieldElement construction

FieldElement::FieldElement(const FieldSpec& field) : field_(field) {
  if (field.is_cyclotomic()) cyc_.assign(field.order() - 1, mpq_class(0));
}

void require_same_field(const FieldElement& a, const FieldElement& b) {
  if (!(a.field() == b.field())) {
    throw Error(ErrorCode::MixedFields, "cannot combine elements of " + a.field().to_string() +
                                            " and " + b.field().to_string());
  }
}

FieldElement FieldElement::zero(const FieldSpec& field) { return FieldElement(field); }

FieldElement FieldElement::one(const FieldSpec& field) { return from_integer(field, 1L); }

FieldElement FieldElement::from_integer(const FieldSpec& field, long value) {
  return from_integer(field, mpz_class(value));
}

FieldElement FieldElement::from_integer(const FieldSpec& field, const mpz_class& value) {
  FieldElement e(field);
  switch (field.kind()) {
    case FieldSpec::Kind::Rational: e.q_ = value; break;
    case FieldSpec::Kind::Cyclotomic: e.cyc_[0] = value; break;
    case FieldSpec::Kind::PrimeField: e.res_ = reduce_mpz(value, field.order()); break;
  }
  return e;
}

FieldElement FieldElement::from_rational(const FieldSpec& field, const mpq_class& value) {
  FieldElement e(field);
  switch (field.kind()) {
    case FieldSpec::Kind::Rational: e.q_ = value; break;
    case FieldSpec::Kind::Cyclotomic: e.cyc_[0] = value; break;
    case FieldSpec::Kind::PrimeField: {
      const std::uint64_t p = field.order();
      const std::uint64_t den = reduce_mpz(value.get_den(), p);
      if (den == 0) {
        throw Error(ErrorCode::DivisionByZero,
                    "denominator of " + value.get_str() + " vanishes in " + field.to_string());
      }
      e.res_ = mul_mod(reduce_mpz(value.get_num(), p), pow_mod(den, p - 2, p), p);
      break;
    }
  }
  return e;
}

FieldElement FieldElement::reduce_cyclic(const FieldSpec& field, std::vector<mpq_class> cyclic) {
  // cyclic holds p coefficients modulo x^p - 1; subtracting c_{p-1} times
  // Phi_p leaves the canonical representative of degree < p-1.
  const std::size_t p = field.order();
  FieldElement e(field);
  for (std::size_t i = 0; i + 1 < p; ++i) e.cyc_[i] = cyclic[i] - cyclic[p - 1];
  return e;
}

FieldElement FieldElement::zeta(const FieldSpec& field, long exponent) {
  if (!field.is_cyclotomic()) {
    throw Error(ErrorCode::FieldMismatch, "zeta requires a cyclotomic field, got " + field.to_string());
  }
  const long p = field.order();
  const auto k = static_cast<std::size_t>(((exponent % p) + p) % p);
  std::vector<mpq_class> cyclic(static_cast<std::size_t>(p), mpq_class(0));
  cyclic[k] = 1;
  return reduce_cyclic(field, std::move(cyclic));
}

FieldElement FieldElement::from_zeta_polynomial(const FieldSpec& field,
                                                std::span<const mpq_class> coefficients) {
  if (!field.is_cyclotomic()) {
    throw Error(ErrorCode::FieldMismatch, "zeta polynomial requires a cyclotomic field");
  }
  const std::size_t p = field.order();
  std::vector<mpq_class> cyclic(p, mpq_class(0));
  for (std::size_t i = 0; i < coefficients.size(); ++i) cyclic[i % p] += coefficients[i];
  return reduce_cyclic(field, std::move(cyclic));
}

// ---------------------------------------------------------------------------
// Arithmetic

bool FieldElement::is_zero() const noexcept {
  switch (field_.kind()) {
    case FieldSpec::Kind::Rational: return sgn(q_) == 0;
    case FieldSpec::Kind::Cyclotomic:
      return std::all_of(cyc_.begin(), cyc_.end(), [](const mpq_class& c) { return sgn(c) == 0; });
    case FieldSpec::Kind::PrimeField: return res_ == 0;
  }
  return false;
}

bool FieldElement::is_one() const noexcept {
  switch (field_.kind()) {
    case FieldSpec::Kind::Rational: return q_ == 1;
    case FieldSpec::Kind::Cyclotomic:
      if (cyc_[0] != 1) return false;
      return std::all_of(cyc_.begin() + 1, cyc_.end(), [](const mpq_class& c) { return sgn(c) == 0; });
    case FieldSpec::Kind::PrimeField: return res_ == 1;
  }
  return false;
}

FieldElement FieldElement::operator-() const {
  FieldElement e(field_);
  switch (field_.kind()) {
    case FieldSpec::Kind::Rational: e.q_ = -q_; break;
    case FieldSpec::Kind::Cyclotomic:
      for (std::size_t i = 0; i < cyc_.size(); ++i) e.cyc_[i] = -cyc_[i];
      break;
    case FieldSpec::Kind::PrimeField: e.res_ = res_ == 0 ? 0 : field_.order() - res_; break;
  }
  return e;
}

FieldElement operator+(const FieldElement& a, const FieldElement& b) {
  require_same_field(a, b);
  FieldElement e(a.field_);
  switch (a.field_.kind()) {
    case FieldSpec::Kind::Rational: e.q_ = a.q_ + b.q_; break;
    case FieldSpec::Kind::Cyclotomic:
      for (std::size_t i = 0; i < a.cyc_.size(); ++i) e.cyc_[i] = a.cyc_[i] + b.cyc_[i];
      break;
    case FieldSpec::Kind::PrimeField: e.res_ = (a.res_ + b.res_) % a.field_.order(); break;
  }
  return e;
}

FieldElement operator-(const FieldElement& a, const FieldElement& b) { return a + (-b); }

FieldElement operator*(const FieldElement& a, const FieldElement& b) {
  require_same_field(a, b);
  switch (a.field_.kind()) {
    case FieldSpec::Kind::Rational: {
      FieldElement e(a.field_);
      e.q_ = a.q_ * b.q_;
      return e;
    }
    case FieldSpec::Kind::Cyclotomic: {
      const std::size_t p = a.field_.order();
      std::vector<mpq_class> cyclic(p, mpq_class(0));
      for (std::size_t i = 0; i + 1 < p; ++i) {
        if (sgn(a.cyc_[i]) == 0) continue;
        for (std::size_t j = 0; j + 1 < p; ++j) {
          if (sgn(b.cyc_[j]) == 0) continue;
          cyclic[(i + j) % p] += a.cyc_[i] * b.cyc_[j];
        }
      }
      return FieldElement::reduce_cyclic(a.field_, std::move(cyclic));
    }
    case FieldSpec::Kind::PrimeField: {
      FieldElement e(a.field_);
      e.res_ = mul_mod(a.res_, b.res_, a.field_.order());
      return e;
    }
  }
  return a;
}

FieldElement FieldElement::inverse() const {
  if (is_zero()) throw Error(ErrorCode::DivisionByZero, "division by zero in " + field_.to_string());
  switch (field_.kind()) {
    case FieldSpec::Kind::Rational: {
      FieldElement e(field_);
      e.q_ = 1 / q_;
      return e;
    }
    case FieldSpec::Kind::Cyclotomic: {
      // a^{-1} = (prod of the other Galois conjugates) / N(a).
      const std::size_t p = field_.order();
      FieldElement others = one(field_);
      for (std::size_t k = 2; k < p; ++k) {
        std::vector<mpq_class> cyclic(p, mpq_class(0));
        for (std::size_t i = 0; i + 1 < p; ++i) cyclic[(i * k) % p] += cyc_[i];
        others = others * reduce_cyclic(field_, std::move(cyclic));
      }
      const FieldElement norm = *this * others;
      const mpq_class inv_norm = 1 / norm.cyc_[0];
      FieldElement e(field_);
      for (std::size_t i = 0; i + 1 < p; ++i) e.cyc_[i] = others.cyc_[i] * inv_norm;
      return e;
    }
    case FieldSpec::Kind::PrimeField: {
      FieldElement e(field_);
      e.res_ = pow_mod(res_, field_.order() - 2, field_.order());
      return e;
    }
  }
  return *this;
}

FieldElement operator/(const FieldElement& a, const FieldElement& b) {
  require_same_field(a, b);
  return a * b.inverse();
}

FieldElement FieldElement::pow(std::uint64_t exponent) const {
  FieldElement result = one(field_);
  FieldElement base = *this;
  while (exponent > 0) {
    if (exponent & 1U) result = result * base;
    exponent >>= 1U;
    if (exponent > 0) base = base * base;
  }
  return result;
}

bool operator==(const FieldElement& a, const FieldElement& b) {
  if (!(a.field_ == b.field_)) return false;
  switch (a.field_.kind()) {
    case FieldSpec::Kind::Rational: return a.q_ == b.q_;
    case FieldSpec::Kind::Cyclotomic: return a.cyc_ == b.cyc_;
    case FieldSpec::Kind::PrimeField: return a.res_ == b.res_;
  }
  return false;
}

// ---------------------------------------------------------------------------
// Accessors

const mpq_class& FieldElement::rational() const {
  if (!field_.is_rational()) {
    throw Error(ErrorCode::UnsupportedField, "expected a rational scalar, got " + field_.to_string());
  }
  return q_;
}

std::optional<mpq_class> FieldElement::as_rational() const {
  switch (field_.kind()) {
    case FieldSpec::Kind::Rational: return q_;
    case FieldSpec::Kind::Cyclotomic:
      for (std::size_t i = 1; i < cyc_.size(); ++i) {
        if (sgn(cyc_[i]) != 0) return std::nullopt;
      }
      return cyc_[0];
    case FieldSpec::Kind::PrimeField: return std::nullopt;
  }
  return std::nullopt;
}

std::span<const mpq_class> FieldElement::cyclotomic_coefficients() const {
  if (!field_.is_cyclotomic()) {
    throw Error(ErrorCode::UnsupportedField, "expected a cyclotomic scalar, got " + field_.to_string());
  }
  return cyc_;
}

std::uint64_t FieldElement::residue() const {
  if (!field_.is_prime_field()) {
    throw Error(ErrorCode::UnsupportedField, "expected a prime-field scalar, got " + field_.to_string());
  }
  return res_;
}

int FieldElement::compare(const FieldElement& other) const {
  require_same_field(*this, other);
  switch (field_.kind()) {
    case FieldSpec::Kind::Rational: return cmp(q_, other.q_) < 0 ? -1 : (cmp(q_, other.q_) > 0 ? 1 : 0);
    case FieldSpec::Kind::Cyclotomic:
      for (std::size_t i = 0; i < cyc_.size(); ++i) {
        const int c = cmp(cyc_[i], other.cyc_[i]);
        if (c != 0) return c < 0 ? -1 : 1;
      }
      return 0;
    case FieldSpec::Kind::PrimeField: return res_ < other.res_ ? -1 : (res_ > other.res_ ? 1 : 0);
  }
  return 0;
}

std::size_t FieldElement::hash() const noexcept {
  std::size_t seed = static_cast<std::size_t>(field_.kind()) * 31U + field_.order();
  switch (field_.kind()) {
    case FieldSpec::Kind::Rational: combine_hash(seed, hash_mpq(q_)); break;
    case FieldSpec::Kind::Cyclotomic:
      for (const auto& c : cyc_) combine_hash(seed, hash_mpq(c));
      break;
    case FieldSpec::Kind::PrimeField: combine_hash(seed, std::hash<std::uint64_t>{}(res_)); break;
  }
  return seed;
}

std::string FieldElement::to_string() const {
  switch (field_.kind()) {
    case FieldSpec::Kind::Rational: return q_.get_str();
    case FieldSpec::Kind::PrimeField: return std::to_string(res_);
    case FieldSpec::Kind::Cyclotomic: {
      std::string out;
      for (std::size_t k = cyc_.size(); k-- > 0;) {
        const mpq_class& c = cyc_[k];
        if (sgn(c) == 0) continue;
        std::string term;
        if (k == 0) {
          term = c.get_str();
        } else {
          const std::string power = k == 1 ? "zeta" : "zeta^" + std::to_string(k);
          if (c == 1) {
            term = power;
          } else if (c == -1) {
            term = "-" + power;
          } else {
            term = c.get_str() + "*" + power;
          }
        }
        append_term(out, term);
      }
      return out.empty() ? "0" : out;
    }
  }
  return "?";
}

std::complex<double> FieldElement::to_complex() const {
  switch (field_.kind()) {
    case FieldSpec::Kind::Rational: return {q_.get_d(), 0.0};
    case FieldSpec::Kind::PrimeField: return {static_cast<double>(res_), 0.0};
    case FieldSpec::Kind::Cyclotomic: {
      std::complex<double> sum{0.0, 0.0};
      const double p = field_.order();
      for (std::size_t k = 0; k < cyc_.size(); ++k) {
        sum += cyc_[k].get_d() * std::polar(1.0, 2.0 * std::numbers::pi * static_cast<double>(k) / p);
      }
      return sum;
    }
  }
  return {};
}

// ---------------------------------------------------------------------------
// Roots

namespace {

// Prime factorization by trial division; throws when a cofactor would need a
// divisor above the bound.
std::vector<std::pair<mpz_class, unsigned>> trial_factor(mpz_class m, std::uint64_t bound) {
  std::vector<std::pair<mpz_class, unsigned>> factors;
  for (std::uint64_t d = 2; mpz_class(d) * d <= m; d += (d == 2 ? 1 : 2)) {
    if (d > bound) {
      throw Error(ErrorCode::FactorizationLimitExceeded,
                  "cofactor " + m.get_str() + " needs trial divisors above " + std::to_string(bound));
    }
    if (mpz_divisible_ui_p(m.get_mpz_t(), d) == 0) continue;
    unsigned e = 0;
    while (mpz_divisible_ui_p(m.get_mpz_t(), d) != 0) {
      mpz_divexact_ui(m.get_mpz_t(), m.get_mpz_t(), d);
      ++e;
    }
    factors.emplace_back(mpz_class(d), e);
  }
  if (m > 1) factors.emplace_back(m, 1U);
  return factors;
}

std::optional<mpz_class> integer_kth_root(const mpz_class& m, unsigned k, std::uint64_t bound) {
  mpz_class root = 1;
  for (const auto& [prime, e] : trial_factor(m, bound)) {
    if (e % k != 0) return std::nullopt;
    mpz_class power;
    mpz_pow_ui(power.get_mpz_t(), prime.get_mpz_t(), e / k);
    root *= power;
  }
  return root;
}

}  // namespace

std::optional<mpq_class> kth_root_in_rationals(const mpq_class& r, unsigned k, std::uint64_t factor_bound) {
  if (sgn(r) == 0) throw Error(ErrorCode::ZeroInput, "k-th root of zero requested");
  if (k == 0) throw Error(ErrorCode::InvalidArgument, "root index must be positive");
  if (k == 1) return r;
  const bool negative = sgn(r) < 0;
  if (negative && k % 2 == 0) return std::nullopt;
  const mpz_class num = abs(r.get_num());
  auto num_root = integer_kth_root(num, k, factor_bound);
  if (!num_root) return std::nullopt;
  auto den_root = integer_kth_root(r.get_den(), k, factor_bound);
  if (!den_root) return std::nullopt;
  mpq_class root(negative ? mpz_class(-*num_root) : *num_root, *den_root);
  root.canonicalize();
  return root;
}

std::optional<std::pair<unsigned, mpq_class>> cyclotomic_root_of_unity_part(const FieldElement& a) {
  const auto coeffs = a.cyclotomic_coefficients();
  if (a.is_zero()) throw Error(ErrorCode::ZeroInput, "root-of-unity part of zero requested");
  std::size_t nonzero = 0;
  std::size_t index = 0;
  for (std::size_t i = 0; i < coeffs.size(); ++i) {
    if (sgn(coeffs[i]) != 0) {
      ++nonzero;
      index = i;
    }
  }
  if (nonzero == 1) return std::pair<unsigned, mpq_class>(static_cast<unsigned>(index), coeffs[index]);
  // zeta^{p-1} = -(1 + zeta + ... + zeta^{p-2}) has all coefficients equal.
  const bool all_equal = std::all_of(coeffs.begin(), coeffs.end(),
                                     [&](const mpq_class& c) { return c == coeffs[0]; });
  if (all_equal) {
    return std::pair<unsigned, mpq_class>(static_cast<unsigned>(coeffs.size()), mpq_class(-coeffs[0]));
  }
  return std::nullopt;
}

std::string_view to_string(RootVerdict verdict) noexcept {
  switch (verdict) {
    case RootVerdict::Exists: return "exists";
    case RootVerdict::DoesNotExist: return "does-not-exist";
    case RootVerdict::Undecided: return "undecided";
  }
  return "?";
}

RootCheck kth_root_in_field(const FieldElement& a, unsigned k, std::uint64_t factor_bound) {
  if (a.is_zero()) throw Error(ErrorCode::ZeroInput, "k-th root of zero requested");
  if (k == 0) throw Error(ErrorCode::InvalidArgument, "root index must be positive");
  const FieldSpec& field = a.field();
  RootCheck check;
  switch (field.kind()) {
    case FieldSpec::Kind::Rational: {
      check.method = "rational-factorization";
      if (auto root = kth_root_in_rationals(a.rational(), k, factor_bound)) {
        check.verdict = RootVerdict::Exists;
        check.witness = FieldElement::from_rational(field, *root);
      } else {
        check.verdict = RootVerdict::DoesNotExist;
      }
      return check;
    }
    case FieldSpec::Kind::PrimeField: {
      check.method = "euler-criterion";
      const std::uint64_t p = field.order();
      const std::uint64_t g = std::gcd<std::uint64_t>(k, p - 1);
      const bool power = pow_mod(a.residue(), (p - 1) / g, p) == 1;
      check.verdict = power ? RootVerdict::Exists : RootVerdict::DoesNotExist;
      if (power && p <= 1'000'000) {
        for (std::uint64_t s = 1; s < p; ++s) {
          if (pow_mod(s, k, p) == a.residue()) {
            check.witness = FieldElement::from_integer(field, static_cast<long>(s));
            break;
          }
        }
      }
      return check;
    }
    case FieldSpec::Kind::Cyclotomic: break;
  }

  const std::uint32_t p = field.order();
  if (p == 2) {
    // Q(zeta_2) = Q.
    check = kth_root_in_field(FieldElement::from_rational(FieldSpec::rationals(), *a.as_rational()), k,
                              factor_bound);
    if (check.witness) check.witness = FieldElement::from_rational(field, check.witness->rational());
    return check;
  }
  const auto shape = cyclotomic_root_of_unity_part(a);
  if (!shape) {
    check.method = "general-element";
    check.verdict = RootVerdict::Undecided;
    return check;
  }
  const auto& [e, q] = *shape;
  // N(q * zeta^e) = q^(p-1) must be a k-th power of the rational N(s).
  mpq_class norm;
  mpz_class norm_num;
  mpz_class norm_den;
  mpz_pow_ui(norm_num.get_mpz_t(), q.get_num().get_mpz_t(), p - 1);
  mpz_pow_ui(norm_den.get_mpz_t(), q.get_den().get_mpz_t(), p - 1);
  norm = mpq_class(norm_num, norm_den);
  norm.canonicalize();
  if (!kth_root_in_rationals(norm, k, factor_bound)) {
    check.method = "norm-obstruction";
    check.verdict = RootVerdict::DoesNotExist;
    return check;
  }
  if (k % p != 0) {
    if (auto root = kth_root_in_rationals(q, k, factor_bound)) {
      // zeta^e = (zeta^{e * k^{-1} mod p})^k.
      const std::uint64_t k_inv = pow_mod(k % p, p - 2, p);
      const auto exponent = static_cast<long>(mul_mod(e, k_inv, p));
      check.method = "rational-root-times-zeta-power";
      check.verdict = RootVerdict::Exists;
      check.witness = FieldElement::from_rational(field, *root) * FieldElement::zeta(field, exponent);
      return check;
    }
  }
  check.method = "shape-test-inconclusive";
  check.verdict = RootVerdict::Undecided;
  return check;
}

}  // namespace comdyn
