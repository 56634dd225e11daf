#pragma once

#include <optional>
#include <span>
#include <string>
#include <vector>

#include "comdyn/field.hpp"
#include "comdyn/polynomial.hpp"

namespace comdyn {

using Poly = Polynomial<FieldElement>;
using Point = std::vector<FieldElement>;

struct PointHash {
  std::size_t operator()(const Point& p) const noexcept;
};

/// Lexicographic order on coordinates using FieldElement::compare.
struct PointLess {
  bool operator()(const Point& a, const Point& b) const;
};

/// Value of p at x, in `field` (needed when p is the zero polynomial).
FieldElement evaluate(const Poly& p, std::span<const FieldElement> x, const FieldSpec& field);

/// Formal partial derivative with respect to variable `var`.
Poly partial_derivative(const Poly& p, std::size_t var, const FieldSpec& field);

/// A polynomial self-map of affine n-space: n components in n variables.
class PolyMap {
 public:
  PolyMap() = default;
  PolyMap(const FieldSpec& field, std::vector<Poly> components);

  static PolyMap identity(const FieldSpec& field, std::size_t n);

  const FieldSpec& field() const noexcept { return field_; }
  std::size_t dimension() const noexcept { return components_.size(); }
  const std::vector<Poly>& components() const noexcept { return components_; }
  const Poly& operator[](std::size_t i) const { return components_[i]; }
  /// Max component degree; the zero map has degree -1.
  int degree() const noexcept;

  Point operator()(std::span<const FieldElement> point) const;

  friend bool operator==(const PolyMap& a, const PolyMap& b) {
    return a.field_ == b.field_ && a.components_ == b.components_;
  }

 private:
  FieldSpec field_;
  std::vector<Poly> components_;
};

/// A degree-d self-map of P^n: n+1 homogeneous components of degree d in
/// n+1 variables, not all zero. Coordinate 0 is the homogenizing variable.
class ProjMap {
 public:
  ProjMap() = default;
  ProjMap(const FieldSpec& field, std::vector<Poly> components);

  const FieldSpec& field() const noexcept { return field_; }
  /// n, the dimension of the projective space (components - 1).
  std::size_t dimension() const noexcept { return components_.size() - 1; }
  const std::vector<Poly>& components() const noexcept { return components_; }
  const Poly& operator[](std::size_t i) const { return components_[i]; }
  unsigned degree() const noexcept { return degree_; }

  /// Scales so that the first nonzero coefficient (component order, then
  /// graded-lex term order) is 1.
  ProjMap normalized() const;

  Point operator()(std::span<const FieldElement> point) const;

  friend bool operator==(const ProjMap& a, const ProjMap& b) {
    return a.field_ == b.field_ && a.components_ == b.components_;
  }

 private:
  FieldSpec field_;
  std::vector<Poly> components_;
  unsigned degree_ = 0;
};

Point evaluate(const PolyMap& f, std::span<const FieldElement> point);

/// f o g.
PolyMap compose(const PolyMap& f, const PolyMap& g);
ProjMap compose(const ProjMap& f, const ProjMap& g);

/// f o f o ... o f (k times); k = 0 gives the identity.
PolyMap iterate(const PolyMap& f, unsigned k);

/// Point image under f^k.
Point iterate_point(const PolyMap& f, Point point, std::size_t k);

/// Jacobian matrix entries (d f_i / d x_j) as polynomials.
std::vector<std::vector<Poly>> jacobian(const PolyMap& f);

/// det of the Jacobian of f at P.
FieldElement jacobian_det_at(const PolyMap& f, std::span<const FieldElement> point);

/// [X0^d, X0^d f_1(X1/X0, ...), ..., X0^d f_n(...)], with d >= deg f.
ProjMap homogenize(const PolyMap& f, unsigned d);

/// Restriction to the affine chart X_chart = 1. Needs the chart component to
/// be a nonzero constant times X_chart^d, otherwise the restriction is not a
/// polynomial map (NotPolynomialOnChart).
PolyMap dehomogenize(const ProjMap& phi, std::size_t chart);

}  // namespace comdyn
