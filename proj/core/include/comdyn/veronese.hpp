#pragma once

// Veronese vectors, general-position frames and exact interpolation of
// degree <= d maps from their values on a frame.

#include <functional>
#include <optional>
#include <span>
#include <vector>

#include "comdyn/linalg.hpp"
#include "comdyn/poly_map.hpp"

namespace comdyn {

/// Monomial values of degree <= d at P in monomials_up_to order; first entry 1.
std::vector<FieldElement> veronese_vector(std::span<const FieldElement> point, unsigned degree);

/// Binomial(n + d, d).
std::size_t veronese_size(std::size_t n, unsigned degree);

class VeroneseFrame {
 public:
  VeroneseFrame() = default;
  /// Builds tau(S) for exactly N points; throws SingularFrame if not invertible.
  VeroneseFrame(const FieldSpec& field, std::size_t n, unsigned degree, std::vector<Point> points);

  const FieldSpec& field() const noexcept { return field_; }
  std::size_t dimension() const noexcept { return n_; }
  unsigned degree() const noexcept { return degree_; }
  std::size_t size() const noexcept { return basis_.size(); }
  const std::vector<Monomial>& basis() const noexcept { return basis_; }
  const std::vector<Point>& points() const noexcept { return points_; }
  const Matrix& matrix() const noexcept { return tau_; }
  const Matrix& inverse_matrix() const noexcept { return tau_inv_; }
  /// Stream items read before the frame was complete.
  std::size_t consumed() const noexcept { return consumed_; }
  void set_consumed(std::size_t c) noexcept { consumed_ = c; }

 private:
  FieldSpec field_;
  std::size_t n_ = 0;
  unsigned degree_ = 0;
  std::vector<Monomial> basis_;
  std::vector<Point> points_;
  Matrix tau_{FieldSpec::rationals(), 0, 0};
  Matrix tau_inv_{FieldSpec::rationals(), 0, 0};
  std::size_t consumed_ = 0;
};

/// Yields the next point, or nullopt at the end of the stream.
using PointSource = std::function<std::optional<Point>()>;

/// Greedy rank extension over the stream; stops as soon as N independent
/// Veronese vectors are found. Throws StreamExhausted(rank, N).
VeroneseFrame find_general_position(const PointSource& source, const FieldSpec& field, std::size_t n,
                                    unsigned degree);
VeroneseFrame find_general_position(std::span<const Point> points, const FieldSpec& field, std::size_t n,
                                    unsigned degree);

/// Coefficient vectors (one per component, basis order) of the unique
/// degree <= d map taking frame point k to images[k].
std::vector<std::vector<FieldElement>> interpolate_coefficients(const VeroneseFrame& frame,
                                                                std::span<const Point> images);

/// The map from interpolate_coefficients, checked against every image.
PolyMap interpolate_map(const VeroneseFrame& frame, std::span<const Point> images);

/// First point of the integer box [-bound, bound]^n, in bounded-height order,
/// where none of the given polynomials vanishes.
std::optional<Point> point_off_hypersurfaces(std::span<const Poly> polys, const FieldSpec& field, std::size_t n,
                                             long bound);

/// Polynomial with the given coefficients on the frame basis.
Poly polynomial_from_basis(const std::vector<Monomial>& basis, std::span<const FieldElement> coefficients);

}  // namespace comdyn
