#include "comdyn/veronese.hpp"

#include <algorithm>

#include "comdyn/dynamics.hpp"

namespace comdyn {

std::size_t veronese_size(std::size_t n, unsigned degree) {
  // C(n + d, d) built incrementally; every prefix product is itself binomial.
  std::size_t c = 1;
  for (unsigned k = 1; k <= degree; ++k) c = c * (n + k) / k;
  return c;
}

std::vector<FieldElement> veronese_vector(std::span<const FieldElement> point, unsigned degree) {
  if (point.empty()) throw Error(ErrorCode::DimensionMismatch, "Veronese vector of a 0-dimensional point");
  const FieldSpec& field = point.front().field();
  const auto basis = monomials_up_to(point.size(), degree);
  // powers[i][e] = x_i^e
  std::vector<std::vector<FieldElement>> powers(point.size());
  for (std::size_t i = 0; i < point.size(); ++i) {
    if (!(point[i].field() == field)) throw Error(ErrorCode::MixedFields, "point coordinates in different fields");
    powers[i].push_back(FieldElement::one(field));
    for (unsigned e = 1; e <= degree; ++e) powers[i].push_back(powers[i].back() * point[i]);
  }
  std::vector<FieldElement> out;
  out.reserve(basis.size());
  for (const auto& m : basis) {
    FieldElement v = FieldElement::one(field);
    for (std::size_t i = 0; i < m.nvars(); ++i) {
      if (m[i] > 0) v *= powers[i][m[i]];
    }
    out.push_back(std::move(v));
  }
  return out;
}

VeroneseFrame::VeroneseFrame(const FieldSpec& field, std::size_t n, unsigned degree, std::vector<Point> points)
    : field_(field), n_(n), degree_(degree), basis_(monomials_up_to(n, degree)), points_(std::move(points)) {
  const std::size_t size = basis_.size();
  if (points_.size() != size) {
    throw Error(ErrorCode::DimensionMismatch, "a degree-" + std::to_string(degree) + " frame in dimension " +
                                                  std::to_string(n) + " needs " + std::to_string(size) + " points");
  }
  tau_ = Matrix(field, size, size);
  for (std::size_t r = 0; r < size; ++r) {
    if (points_[r].size() != n) throw Error(ErrorCode::DimensionMismatch, "frame point dimension mismatch");
    const auto v = veronese_vector(points_[r], degree);
    for (std::size_t c = 0; c < size; ++c) {
      require_same_field(tau_(r, c), v[c]);
      tau_(r, c) = v[c];
    }
  }
  auto inv = inverse(tau_);
  if (!inv) throw Error(ErrorCode::SingularFrame, "frame points are not in general position");
  tau_inv_ = std::move(*inv);
  consumed_ = size;
}

VeroneseFrame find_general_position(const PointSource& source, const FieldSpec& field, std::size_t n,
                                    unsigned degree) {
  const std::size_t size = veronese_size(n, degree);
  RankAccumulator acc(field, size);
  std::vector<Point> chosen;
  std::size_t consumed = 0;
  while (acc.rank() < size) {
    auto p = source();
    if (!p) throw StreamExhausted(acc.rank(), size);
    ++consumed;
    if (p->size() != n) throw Error(ErrorCode::DimensionMismatch, "stream point dimension mismatch");
    const auto v = veronese_vector(*p, degree);
    for (const auto& x : v) {
      if (!(x.field() == field)) throw Error(ErrorCode::MixedFields, "stream point outside " + field.to_string());
    }
    if (acc.try_add(v)) chosen.push_back(std::move(*p));
  }
  VeroneseFrame frame(field, n, degree, std::move(chosen));
  frame.set_consumed(consumed);
  return frame;
}

VeroneseFrame find_general_position(std::span<const Point> points, const FieldSpec& field, std::size_t n,
                                    unsigned degree) {
  std::size_t next = 0;
  return find_general_position(
      [&]() -> std::optional<Point> {
        if (next == points.size()) return std::nullopt;
        return points[next++];
      },
      field, n, degree);
}

std::vector<std::vector<FieldElement>> interpolate_coefficients(const VeroneseFrame& frame,
                                                                std::span<const Point> images) {
  const std::size_t size = frame.size();
  const std::size_t n = frame.dimension();
  if (images.size() != size) {
    throw Error(ErrorCode::DimensionMismatch, "need " + std::to_string(size) + " images, got " +
                                                  std::to_string(images.size()));
  }
  std::vector<std::vector<FieldElement>> coeffs;
  coeffs.reserve(n);
  std::vector<FieldElement> column(size, FieldElement::zero(frame.field()));
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t k = 0; k < size; ++k) {
      if (images[k].size() != n) throw Error(ErrorCode::DimensionMismatch, "image dimension mismatch");
      require_same_field(images[k][i], column[k]);
      column[k] = images[k][i];
    }
    coeffs.push_back(frame.inverse_matrix() * std::span<const FieldElement>(column));
  }
  return coeffs;
}

Poly polynomial_from_basis(const std::vector<Monomial>& basis, std::span<const FieldElement> coefficients) {
  Poly p(basis.empty() ? 0 : basis.front().nvars());
  for (std::size_t j = 0; j < basis.size(); ++j) p.add_term(basis[j], coefficients[j]);
  return p;
}

std::optional<Point> point_off_hypersurfaces(std::span<const Poly> polys, const FieldSpec& field, std::size_t n,
                                             long bound) {
  if (bound < 1) throw Error(ErrorCode::InvalidArgument, "search bound must be positive");
  for (const auto& q : bounded_height_points(n, HeightValue{mpz_class(bound)})) {
    Point x;
    for (const auto& c : q) x.push_back(FieldElement::from_rational(field, c.rational()));
    const bool off = std::all_of(polys.begin(), polys.end(), [&](const Poly& p) {
      return !evaluate(p, x, field).is_zero();
    });
    if (off) return x;
  }
  return std::nullopt;
}

PolyMap interpolate_map(const VeroneseFrame& frame, std::span<const Point> images) {
  const auto coeffs = interpolate_coefficients(frame, images);
  std::vector<Poly> comps;
  for (const auto& c : coeffs) comps.push_back(polynomial_from_basis(frame.basis(), c));
  PolyMap g(frame.field(), std::move(comps));
  for (std::size_t k = 0; k < frame.size(); ++k) {
    if (!(evaluate(g, frame.points()[k]) == images[k])) {
      throw Error(ErrorCode::SingularFrame, "interpolated map misses frame image " + std::to_string(k));
    }
  }
  return g;
}

}  // namespace comdyn
