#include "comdyn/poly_map.hpp"

#include <algorithm>

#include "comdyn/linalg.hpp"

namespace comdyn {

std::size_t PointHash::operator()(const Point& p) const noexcept {
  std::size_t seed = p.size();
  for (const auto& x : p) seed ^= x.hash() + 0x9e3779b97f4a7c15ULL + (seed << 6U) + (seed >> 2U);
  return seed;
}

bool PointLess::operator()(const Point& a, const Point& b) const {
  const std::size_t n = std::min(a.size(), b.size());
  for (std::size_t i = 0; i < n; ++i) {
    const int c = a[i].compare(b[i]);
    if (c != 0) return c < 0;
  }
  return a.size() < b.size();
}

namespace {

void check_point_field(std::span<const FieldElement> x, const FieldSpec& field) {
  for (const auto& v : x) {
    if (!(v.field() == field)) {
      throw Error(ErrorCode::MixedFields,
                  "point coordinate in " + v.field().to_string() + ", map over " + field.to_string());
    }
  }
}

void check_coefficients(const Poly& p, const FieldSpec& field) {
  for (const auto& [m, c] : p.terms()) {
    if (!(c.field() == field)) {
      throw Error(ErrorCode::MixedFields,
                  "coefficient in " + c.field().to_string() + ", map over " + field.to_string());
    }
  }
}

}  // namespace

FieldElement evaluate(const Poly& p, std::span<const FieldElement> x, const FieldSpec& field) {
  if (x.size() != p.nvars()) {
    throw Error(ErrorCode::DimensionMismatch, "point has " + std::to_string(x.size()) +
                                                  " coordinates, polynomial has " +
                                                  std::to_string(p.nvars()) + " variables");
  }
  check_point_field(x, field);
  std::vector<std::vector<FieldElement>> powers(x.size());
  auto power = [&](std::size_t var, std::uint32_t e) -> const FieldElement& {
    auto& cache = powers[var];
    if (cache.empty()) cache.push_back(x[var]);
    while (cache.size() < e) cache.push_back(cache.back() * x[var]);
    return cache[e - 1];
  };
  FieldElement sum = FieldElement::zero(field);
  for (const auto& [m, c] : p.terms()) {
    FieldElement term = c;
    for (std::size_t var = 0; var < m.nvars() && !term.is_zero(); ++var) {
      if (m[var] > 0) term *= power(var, m[var]);
    }
    sum += term;
  }
  return sum;
}

Poly partial_derivative(const Poly& p, std::size_t var, const FieldSpec& field) {
  Poly out(p.nvars());
  for (const auto& [m, c] : p.terms()) {
    if (m[var] == 0) continue;
    std::vector<std::uint32_t> e = m.exponents();
    const auto k = e[var];
    e[var] -= 1;
    out.add_term(Monomial(std::move(e)), c * FieldElement::from_integer(field, static_cast<long>(k)));
  }
  return out;
}

// ---------------------------------------------------------------------------
// PolyMap

PolyMap::PolyMap(const FieldSpec& field, std::vector<Poly> components)
    : field_(field), components_(std::move(components)) {
  if (components_.empty()) throw Error(ErrorCode::DimensionMismatch, "a map needs at least one component");
  for (const auto& c : components_) {
    if (c.nvars() != components_.size()) {
      throw Error(ErrorCode::DimensionMismatch, "affine map components must use " +
                                                    std::to_string(components_.size()) + " variables");
    }
    check_coefficients(c, field_);
  }
}

PolyMap PolyMap::identity(const FieldSpec& field, std::size_t n) {
  std::vector<Poly> comps;
  for (std::size_t i = 0; i < n; ++i) comps.push_back(Poly::term(Monomial::variable(n, i), FieldElement::one(field)));
  return PolyMap(field, std::move(comps));
}

int PolyMap::degree() const noexcept {
  int d = -1;
  for (const auto& c : components_) d = std::max(d, c.degree());
  return d;
}

Point PolyMap::operator()(std::span<const FieldElement> point) const { return evaluate(*this, point); }

Point evaluate(const PolyMap& f, std::span<const FieldElement> point) {
  if (point.size() != f.dimension()) {
    throw Error(ErrorCode::DimensionMismatch, "point dimension " + std::to_string(point.size()) +
                                                  " does not match map dimension " +
                                                  std::to_string(f.dimension()));
  }
  Point out;
  out.reserve(f.dimension());
  for (const auto& c : f.components()) out.push_back(evaluate(c, point, f.field()));
  return out;
}

PolyMap compose(const PolyMap& f, const PolyMap& g) {
  if (f.dimension() != g.dimension()) throw Error(ErrorCode::DimensionMismatch, "composing maps of different dimension");
  if (!(f.field() == g.field())) throw Error(ErrorCode::MixedFields, "composing maps over different fields");
  return PolyMap(f.field(), compose_components<FieldElement>(f.components(), g.components()));
}

PolyMap iterate(const PolyMap& f, unsigned k) {
  PolyMap result = PolyMap::identity(f.field(), f.dimension());
  for (unsigned i = 0; i < k; ++i) result = compose(f, result);
  return result;
}

Point iterate_point(const PolyMap& f, Point point, std::size_t k) {
  for (std::size_t i = 0; i < k; ++i) point = evaluate(f, point);
  return point;
}

std::vector<std::vector<Poly>> jacobian(const PolyMap& f) {
  std::vector<std::vector<Poly>> j;
  for (const auto& comp : f.components()) {
    std::vector<Poly> row;
    for (std::size_t var = 0; var < f.dimension(); ++var) row.push_back(partial_derivative(comp, var, f.field()));
    j.push_back(std::move(row));
  }
  return j;
}

FieldElement jacobian_det_at(const PolyMap& f, std::span<const FieldElement> point) {
  if (point.size() != f.dimension()) throw Error(ErrorCode::DimensionMismatch, "jacobian point dimension mismatch");
  const auto j = jacobian(f);
  Matrix m(f.field(), f.dimension(), f.dimension());
  for (std::size_t r = 0; r < f.dimension(); ++r) {
    for (std::size_t c = 0; c < f.dimension(); ++c) m(r, c) = evaluate(j[r][c], point, f.field());
  }
  return determinant(m);
}

// ---------------------------------------------------------------------------
// ProjMap

ProjMap::ProjMap(const FieldSpec& field, std::vector<Poly> components)
    : field_(field), components_(std::move(components)) {
  if (components_.size() < 2) throw Error(ErrorCode::DimensionMismatch, "a projective map needs n+1 >= 2 components");
  int d = -1;
  for (const auto& c : components_) {
    if (c.nvars() != components_.size()) {
      throw Error(ErrorCode::DimensionMismatch, "projective components must use " +
                                                    std::to_string(components_.size()) + " variables");
    }
    check_coefficients(c, field_);
    if (c.is_zero()) continue;
    if (!c.is_homogeneous()) throw Error(ErrorCode::NotHomogeneous, "projective component is not homogeneous");
    if (d >= 0 && c.degree() != d) throw Error(ErrorCode::NotHomogeneous, "projective components differ in degree");
    d = c.degree();
  }
  if (d < 0) throw Error(ErrorCode::InvalidArgument, "all components of a projective map vanish");
  degree_ = static_cast<unsigned>(d);
}

ProjMap ProjMap::normalized() const {
  for (const auto& comp : components_) {
    if (comp.is_zero()) continue;
    const FieldElement lead = comp.terms().begin()->second;
    if (lead.is_one()) return *this;
    const FieldElement inv = lead.inverse();
    std::vector<Poly> scaled;
    for (const auto& c : components_) scaled.push_back(c.scaled(inv));
    return ProjMap(field_, std::move(scaled));
  }
  return *this;
}

Point ProjMap::operator()(std::span<const FieldElement> point) const {
  if (point.size() != components_.size()) throw Error(ErrorCode::DimensionMismatch, "projective point dimension mismatch");
  Point out;
  for (const auto& c : components_) out.push_back(evaluate(c, point, field_));
  return out;
}

ProjMap compose(const ProjMap& f, const ProjMap& g) {
  if (f.components().size() != g.components().size()) {
    throw Error(ErrorCode::DimensionMismatch, "composing projective maps of different dimension");
  }
  if (!(f.field() == g.field())) throw Error(ErrorCode::MixedFields, "composing maps over different fields");
  auto comps = compose_components<FieldElement>(f.components(), g.components());
  if (std::all_of(comps.begin(), comps.end(), [](const Poly& p) { return p.is_zero(); })) {
    throw Error(ErrorCode::InvalidArgument, "composition vanishes identically");
  }
  return ProjMap(f.field(), std::move(comps));
}

ProjMap homogenize(const PolyMap& f, unsigned d) {
  if (f.degree() > static_cast<int>(d)) {
    throw Error(ErrorCode::DegreeTooSmall, "homogenizing degree " + std::to_string(d) +
                                               " is below the map degree " + std::to_string(f.degree()));
  }
  const std::size_t n = f.dimension();
  auto lift = [&](const Poly& p) {
    Poly out(n + 1);
    for (const auto& [m, c] : p.terms()) {
      std::vector<std::uint32_t> e(n + 1, 0);
      e[0] = d - m.degree();
      for (std::size_t i = 0; i < n; ++i) e[i + 1] = m[i];
      out.add_term(Monomial(std::move(e)), c);
    }
    return out;
  };
  std::vector<Poly> comps;
  comps.push_back(Poly::term(Monomial::variable(n + 1, 0, d), FieldElement::one(f.field())));
  for (const auto& c : f.components()) comps.push_back(lift(c));
  return ProjMap(f.field(), std::move(comps));
}

PolyMap dehomogenize(const ProjMap& phi, std::size_t chart) {
  const std::size_t total = phi.components().size();
  if (chart >= total) {
    throw Error(ErrorCode::InvalidChart, "chart index " + std::to_string(chart) + " outside [0, " +
                                             std::to_string(total - 1) + "]");
  }
  const Poly& denom = phi[chart];
  const Monomial chart_power = Monomial::variable(total, chart, phi.degree());
  if (denom.size() != 1 || !(denom.terms().begin()->first == chart_power)) {
    throw Error(ErrorCode::NotPolynomialOnChart,
                "component " + std::to_string(chart) + " is not a constant multiple of the chart variable power");
  }
  const FieldElement scale = denom.terms().begin()->second.inverse();
  const std::size_t n = total - 1;
  std::vector<Poly> comps;
  for (std::size_t i = 0; i < total; ++i) {
    if (i == chart) continue;
    Poly out(n);
    for (const auto& [m, c] : phi[i].terms()) {
      std::vector<std::uint32_t> e;
      for (std::size_t v = 0; v < total; ++v) {
        if (v != chart) e.push_back(m[v]);
      }
      out.add_term(Monomial(std::move(e)), c * scale);
    }
    comps.push_back(std::move(out));
  }
  return PolyMap(phi.field(), std::move(comps));
}

}  // namespace comdyn
