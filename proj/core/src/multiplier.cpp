#include "comdyn/multiplier.hpp"

#include "comdyn/commutant.hpp"
#include "comdyn/dynamics.hpp"

namespace comdyn {

namespace {

struct Cycle {
  std::vector<Point> points;
  std::vector<FieldElement> factors;
  FieldElement lambda;
  bool critical = false;
};

Cycle cycle_of(const PolyMap& f, const Point& p, std::size_t step_limit) {
  const OrbitRecord rec = orbit(f, p, step_limit);
  if (rec.status != OrbitStatus::Preperiodic || rec.l != 0) {
    throw Error(ErrorCode::NotPeriodic, rec.status == OrbitStatus::Preperiodic
                                            ? "point is strictly preperiodic (tail length " + std::to_string(rec.l) + ")"
                                            : "no return to the point within " + std::to_string(step_limit) + " steps");
  }
  Cycle c;
  c.points = rec.points;
  c.lambda = FieldElement::one(f.field());
  for (const auto& q : c.points) {
    c.factors.push_back(jacobian_det_at(f, q));
    c.lambda *= c.factors.back();
    c.critical = c.critical || c.factors.back().is_zero();
  }
  return c;
}

}  // namespace

MultiplierReport multiplier(const PolyMap& f, const Point& p, const std::optional<PolyMap>& companion,
                            std::size_t step_limit) {
  if (companion && !commutes_affine(f, *companion)) {
    throw Error(ErrorCode::NotCommuting, "companion map does not commute with f");
  }
  Cycle c = cycle_of(f, p, step_limit);
  MultiplierReport report;
  report.point = p;
  report.period = c.points.size();
  report.cycle = c.points;
  report.factors = c.factors;
  report.lambda = c.lambda;
  report.critical = c.critical;
  if (!companion) return report;

  const PolyMap& g = *companion;
  CompanionReport comp;
  comp.image = evaluate(g, p);
  const Cycle image_cycle = cycle_of(f, comp.image, step_limit);
  comp.image_period = image_cycle.points.size();
  comp.l0 = report.period / comp.image_period;
  comp.image_multiplier = image_cycle.lambda;
  comp.image_critical = image_cycle.critical;
  comp.g_critical = jacobian_det_at(g, p).is_zero();
  if (!comp.g_critical) comp.relation_holds = report.lambda == comp.image_multiplier.pow(comp.l0);
  // Period 1 has no proper divisor to rule out.
  bool all_absent = !report.critical || report.period == 1;
  for (unsigned k = 2; k <= report.period; ++k) {
    if (report.period % k != 0) continue;
    RootCertificate cert{k, {}};
    if (report.critical) {
      cert.check.method = "critical";
    } else {
      cert.check = kth_root_in_field(report.lambda, k);
    }
    all_absent = all_absent && cert.check.verdict == RootVerdict::DoesNotExist;
    comp.roots.push_back(std::move(cert));
  }
  comp.certified = !comp.g_critical && all_absent;
  comp.preserved = comp.image_period == report.period;
  report.companion = std::move(comp);
  return report;
}

}  // namespace comdyn
