#pragma once

// Sparse multivariate polynomials over a generic coefficient ring. The ring
// may be a field (FieldElement) or itself a polynomial ring, which is how
// symbolic-coefficient maps are composed.

#include <algorithm>
#include <compare>
#include <concepts>
#include <cstdint>
#include <map>
#include <numeric>
#include <span>
#include <utility>
#include <vector>

#include "comdyn/error.hpp"

namespace comdyn {

class Monomial {
 public:
  Monomial() = default;
  explicit Monomial(std::size_t nvars) : exponents_(nvars, 0) {}
  explicit Monomial(std::vector<std::uint32_t> exponents)
      : exponents_(std::move(exponents)),
        degree_(std::accumulate(exponents_.begin(), exponents_.end(), 0U)) {}

  static Monomial variable(std::size_t nvars, std::size_t index, std::uint32_t power = 1) {
    std::vector<std::uint32_t> e(nvars, 0);
    e.at(index) = power;
    return Monomial(std::move(e));
  }

  std::size_t nvars() const noexcept { return exponents_.size(); }
  std::uint32_t degree() const noexcept { return degree_; }
  std::uint32_t operator[](std::size_t i) const { return exponents_[i]; }
  const std::vector<std::uint32_t>& exponents() const noexcept { return exponents_; }
  bool is_one() const noexcept { return degree_ == 0; }

  Monomial operator*(const Monomial& other) const {
    std::vector<std::uint32_t> e(exponents_);
    for (std::size_t i = 0; i < e.size(); ++i) e[i] += other.exponents_[i];
    return Monomial(std::move(e));
  }

  friend bool operator==(const Monomial& a, const Monomial& b) { return a.exponents_ == b.exponents_; }

 private:
  std::vector<std::uint32_t> exponents_;
  std::uint32_t degree_ = 0;
};

/// Graded lexicographic order, largest first: higher total degree wins, ties
/// broken lexicographically with x1 > x2 > ... . Polynomial terms iterate in
/// this order.
struct GrlexGreater {
  bool operator()(const Monomial& a, const Monomial& b) const {
    if (a.degree() != b.degree()) return a.degree() > b.degree();
    return a.exponents() > b.exponents();
  }
};

/// All monomials in n variables of total degree at most d: ascending degree,
/// descending lex inside a degree, i.e. 1, x, y, x^2, xy, y^2, ...
std::vector<Monomial> monomials_up_to(std::size_t nvars, unsigned degree);
/// Monomials of total degree exactly d, descending lex.
std::vector<Monomial> monomials_of_degree(std::size_t nvars, unsigned degree);

template <class C>
concept CoefficientRing = requires(const C& a, const C& b) {
  { a + b } -> std::convertible_to<C>;
  { a - b } -> std::convertible_to<C>;
  { a * b } -> std::convertible_to<C>;
  { -a } -> std::convertible_to<C>;
  { a == b } -> std::convertible_to<bool>;
  { a.is_zero() } -> std::convertible_to<bool>;
};

template <CoefficientRing C>
class Polynomial {
 public:
  using Coefficient = C;
  using Terms = std::map<Monomial, C, GrlexGreater>;

  Polynomial() = default;
  explicit Polynomial(std::size_t nvars) : nvars_(nvars) {}

  static Polynomial constant(std::size_t nvars, const C& c) {
    Polynomial p(nvars);
    p.add_term(Monomial(nvars), c);
    return p;
  }
  static Polynomial term(const Monomial& m, const C& c) {
    Polynomial p(m.nvars());
    p.add_term(m, c);
    return p;
  }

  std::size_t nvars() const noexcept { return nvars_; }
  const Terms& terms() const noexcept { return terms_; }
  std::size_t size() const noexcept { return terms_.size(); }
  bool is_zero() const noexcept { return terms_.empty(); }

  /// Total degree; -1 stands for the zero polynomial.
  int degree() const noexcept {
    return terms_.empty() ? -1 : static_cast<int>(terms_.begin()->first.degree());
  }

  bool is_homogeneous() const noexcept {
    return std::all_of(terms_.begin(), terms_.end(), [&](const auto& t) {
      return static_cast<int>(t.first.degree()) == degree();
    });
  }

  /// Pointer to the stored coefficient, or nullptr when it is zero.
  const C* coefficient(const Monomial& m) const {
    auto it = terms_.find(m);
    return it == terms_.end() ? nullptr : &it->second;
  }

  /// Adds c*m, merging with an existing term and dropping zeros.
  void add_term(const Monomial& m, const C& c) {
    if (m.nvars() != nvars_) {
      throw Error(ErrorCode::DimensionMismatch, "monomial arity does not match polynomial");
    }
    if (c.is_zero()) return;
    auto it = terms_.find(m);
    if (it == terms_.end()) {
      terms_.emplace(m, c);
      return;
    }
    C sum = it->second + c;
    if (sum.is_zero()) {
      terms_.erase(it);
    } else {
      it->second = std::move(sum);
    }
  }

  Polynomial operator-() const {
    Polynomial r(nvars_);
    for (const auto& [m, c] : terms_) r.terms_.emplace_hint(r.terms_.end(), m, -c);
    return r;
  }

  Polynomial& operator+=(const Polynomial& other) {
    check_arity(other);
    for (const auto& [m, c] : other.terms_) add_term(m, c);
    return *this;
  }
  Polynomial& operator-=(const Polynomial& other) {
    check_arity(other);
    for (const auto& [m, c] : other.terms_) add_term(m, -c);
    return *this;
  }
  friend Polynomial operator+(Polynomial a, const Polynomial& b) { return a += b; }
  friend Polynomial operator-(Polynomial a, const Polynomial& b) { return a -= b; }

  friend Polynomial operator*(const Polynomial& a, const Polynomial& b) {
    a.check_arity(b);
    Polynomial r(a.nvars_);
    for (const auto& [ma, ca] : a.terms_) {
      for (const auto& [mb, cb] : b.terms_) r.add_term(ma * mb, ca * cb);
    }
    return r;
  }

  Polynomial scaled(const C& s) const {
    Polynomial r(nvars_);
    if (s.is_zero()) return r;
    for (const auto& [m, c] : terms_) r.add_term(m, c * s);
    return r;
  }

  /// p^e for e >= 1.
  Polynomial pow(unsigned e) const {
    if (e == 0) throw Error(ErrorCode::InvalidArgument, "Polynomial::pow needs a positive exponent");
    Polynomial result = *this;
    Polynomial base = *this;
    --e;
    while (e > 0) {
      if (e & 1U) result = result * base;
      e >>= 1U;
      if (e > 0) base = base * base;
    }
    return result;
  }

  template <class F>
  auto map_coefficients(F&& fn) const {
    using D = std::decay_t<decltype(fn(std::declval<const C&>()))>;
    Polynomial<D> r(nvars_);
    for (const auto& [m, c] : terms_) r.add_term(m, fn(c));
    return r;
  }

  friend bool operator==(const Polynomial& a, const Polynomial& b) {
    return a.nvars_ == b.nvars_ && a.terms_ == b.terms_;
  }

 private:
  void check_arity(const Polynomial& other) const {
    if (other.nvars_ != nvars_) {
      throw Error(ErrorCode::DimensionMismatch, "polynomials live in different numbers of variables");
    }
  }

  std::size_t nvars_ = 0;
  Terms terms_;
};

/// p(values[0], ..., values[n-1]); every value must share one arity, which
/// becomes the arity of the result. Powers of each value are cached.
template <CoefficientRing C>
Polynomial<C> substitute(const Polynomial<C>& p, std::span<const Polynomial<C>> values,
                         std::size_t result_nvars) {
  if (values.size() != p.nvars()) {
    throw Error(ErrorCode::DimensionMismatch, "substitution needs one value per variable");
  }
  for (const auto& v : values) {
    if (v.nvars() != result_nvars) {
      throw Error(ErrorCode::DimensionMismatch, "substituted values disagree on arity");
    }
  }
  std::vector<std::vector<Polynomial<C>>> powers(values.size());
  auto power = [&](std::size_t var, std::uint32_t e) -> const Polynomial<C>& {
    auto& cache = powers[var];
    if (cache.empty()) cache.push_back(values[var]);
    while (cache.size() < e) cache.push_back(cache.back() * values[var]);
    return cache[e - 1];
  };
  Polynomial<C> result(result_nvars);
  for (const auto& [m, c] : p.terms()) {
    Polynomial<C> acc = Polynomial<C>::constant(result_nvars, c);
    for (std::size_t var = 0; var < m.nvars() && !acc.is_zero(); ++var) {
      if (m[var] > 0) acc = acc * power(var, m[var]);
    }
    result += acc;
  }
  return result;
}

/// Composition of coordinate tuples: (outer o inner)_i = outer_i(inner).
template <CoefficientRing C>
std::vector<Polynomial<C>> compose_components(std::span<const Polynomial<C>> outer,
                                              std::span<const Polynomial<C>> inner) {
  if (inner.empty()) throw Error(ErrorCode::DimensionMismatch, "empty inner map");
  const std::size_t nvars = inner.front().nvars();
  std::vector<Polynomial<C>> out;
  out.reserve(outer.size());
  for (const auto& component : outer) out.push_back(substitute<C>(component, inner, nvars));
  return out;
}

}  // namespace comdyn
