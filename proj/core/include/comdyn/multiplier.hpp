#pragma once

// Multipliers of periodic points and the period-preservation certificate.

#include <optional>
#include <vector>

#include "comdyn/poly_map.hpp"

namespace comdyn {

struct RootCertificate {
  unsigned k = 0;
  RootCheck check;
};

struct CompanionReport {
  Point image;                 // g(P)
  std::size_t image_period = 0;
  std::size_t l0 = 0;          // period(P) / period(g(P))
  bool g_critical = false;     // det J_g(P) == 0
  FieldElement image_multiplier;  // lambda_f(g(P))
  bool image_critical = false;
  /// Set when P is non-critical for g: lambda_f(P) == lambda_f(g(P))^{l0}.
  std::optional<bool> relation_holds;
  /// k-th root tests of lambda_f(P) for every divisor k > 1 of the period.
  std::vector<RootCertificate> roots;
  /// Certificate: g non-critical at P, lambda_f(P) != 0 and no root exists.
  bool certified = false;
  bool preserved = false;      // image_period == period, by direct orbit
};

struct MultiplierReport {
  Point point;
  std::size_t period = 0;
  std::vector<Point> cycle;
  std::vector<FieldElement> factors;  // det J_f along the cycle
  FieldElement lambda;
  bool critical = false;
  std::optional<CompanionReport> companion;
};

inline constexpr std::size_t kDefaultStepLimit = 10'000;

/// lambda_f(P) over the exact cycle of P. Throws NotPeriodic when P is not
/// periodic within the step limit, NotCommuting for a non-commuting companion.
MultiplierReport multiplier(const PolyMap& f, const Point& p, const std::optional<PolyMap>& companion = std::nullopt,
                            std::size_t step_limit = kDefaultStepLimit);

}  // namespace comdyn
