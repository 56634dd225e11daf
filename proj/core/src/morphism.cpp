#include "comdyn/morphism.hpp"

#include <algorithm>

#include "comdyn/linalg.hpp"

namespace comdyn {

std::string_view to_string(MorphismVerdict v) noexcept {
  switch (v) {
    case MorphismVerdict::Morphism: return "Morphism";
    case MorphismVerdict::NotMorphism: return "NotMorphism";
    case MorphismVerdict::ProbablyMorphism: return "ProbablyMorphism";
    case MorphismVerdict::Inconclusive: return "Inconclusive";
  }
  return "?";
}

FieldElement binary_resultant(const Poly& a, const Poly& b, unsigned degree) {
  if (a.nvars() != 2 || b.nvars() != 2) throw Error(ErrorCode::DimensionMismatch, "binary forms need 2 variables");
  const FieldSpec field = !a.is_zero() ? a.terms().begin()->second.field() : b.terms().begin()->second.field();
  auto coeffs = [&](const Poly& p) {
    std::vector<FieldElement> c;
    for (unsigned k = 0; k <= degree; ++k) {
      const FieldElement* v = p.coefficient(Monomial(std::vector<std::uint32_t>{degree - k, k}));
      c.push_back(v != nullptr ? *v : FieldElement::zero(field));
    }
    return c;
  };
  if (degree == 0) return FieldElement::one(field);
  const auto ca = coeffs(a);
  const auto cb = coeffs(b);
  const std::size_t size = 2 * degree;
  Matrix s(field, size, size);
  for (std::size_t r = 0; r < degree; ++r) {
    for (std::size_t k = 0; k <= degree; ++k) {
      s(r, r + k) = ca[k];
      s(degree + r, r + k) = cb[k];
    }
  }
  return determinant(s);
}

namespace {

bool all_vanish(const ProjMap& phi, const Point& x) {
  return std::all_of(phi.components().begin(), phi.components().end(),
                     [&](const Poly& c) { return evaluate(c, x, phi.field()).is_zero(); });
}

// Calls visit(point) for each point of P^n(F_p) with first nonzero coordinate 1;
// stops early when visit returns true.
template <class Visit>
void for_each_projective_point(const FieldSpec& fp, std::size_t k, Visit visit) {
  const std::uint32_t p = fp.order();
  for (std::size_t lead = 0; lead < k; ++lead) {
    std::vector<std::uint32_t> tail(k - lead - 1, 0);
    while (true) {
      Point x;
      for (std::size_t i = 0; i < lead; ++i) x.push_back(FieldElement::zero(fp));
      x.push_back(FieldElement::one(fp));
      for (auto v : tail) x.push_back(FieldElement::from_integer(fp, static_cast<long>(v)));
      if (visit(x)) return;
      std::size_t i = tail.size();
      while (i > 0 && tail[i - 1] + 1 == p) tail[--i] = 0;
      if (i == 0) break;
      ++tail[i - 1];
    }
  }
}

std::optional<ProjMap> reduce(const ProjMap& phi, const FieldSpec& fp) {
  std::vector<Poly> comps;
  for (const auto& c : phi.components()) {
    Poly r(c.nvars());
    for (const auto& [m, a] : c.terms()) {
      const mpq_class& q = a.rational();
      if (mpz_divisible_ui_p(q.get_den_mpz_t(), fp.order()) != 0) return std::nullopt;
      r.add_term(m, FieldElement::from_rational(fp, q));
    }
    // Bad reduction: a component collapses.
    if (r.is_zero() != c.is_zero()) return std::nullopt;
    comps.push_back(std::move(r));
  }
  return ProjMap(fp, std::move(comps));
}

}  // namespace

MorphismReport is_morphism(const ProjMap& phi, const std::vector<std::uint32_t>& primes) {
  const FieldSpec& field = phi.field();
  const std::size_t k = phi.components().size();
  MorphismReport report;

  if (k == 2) {
    report.method = "sylvester-resultant";
    report.resultant = binary_resultant(phi[0], phi[1], phi.degree());
    report.verdict = report.resultant->is_zero() ? MorphismVerdict::NotMorphism : MorphismVerdict::Morphism;
    return report;
  }
  if (field.is_cyclotomic()) {
    throw Error(ErrorCode::UnsupportedField, "morphism check for n >= 2 needs Q or F_p coefficients");
  }
  if (field.is_prime_field()) {
    report.method = "full-enumeration-Fp";
    for_each_projective_point(field, k, [&](const Point& x) {
      if (!all_vanish(phi, x)) return false;
      report.witness = x;
      return true;
    });
    if (report.witness) {
      report.verdict = MorphismVerdict::NotMorphism;
    } else {
      report.verdict = MorphismVerdict::ProbablyMorphism;
      report.primes_clean.push_back(field.order());
    }
    return report;
  }

  report.method = "integer-witness+Fp-enumeration";
  // Primitive integer points with entries in [-2, 2], first nonzero positive.
  {
    std::vector<long> v(k, -2);
    while (true) {
      const auto first = std::find_if(v.begin(), v.end(), [](long x) { return x != 0; });
      if (first != v.end() && *first > 0) {
        Point x;
        for (long e : v) x.push_back(FieldElement::from_integer(field, e));
        if (all_vanish(phi, x)) {
          report.witness = std::move(x);
          report.verdict = MorphismVerdict::NotMorphism;
          return report;
        }
      }
      std::size_t i = k;
      while (i > 0 && v[i - 1] == 2) v[--i] = -2;
      if (i == 0) break;
      ++v[i - 1];
    }
  }
  for (const auto p : primes) {
    if (!is_prime(p)) throw Error(ErrorCode::InvalidArgument, std::to_string(p) + " is not prime");
    const FieldSpec fp = FieldSpec::prime_field(p);
    const auto reduced = reduce(phi, fp);
    if (!reduced) {
      report.primes_skipped.push_back(p);
      continue;
    }
    bool zero_found = false;
    for_each_projective_point(fp, k, [&](const Point& x) {
      if (!all_vanish(*reduced, x)) return false;
      zero_found = true;
      // Lift through symmetric representatives and test exactly.
      Point lifted;
      for (const auto& c : x) {
        long r = static_cast<long>(c.residue());
        if (r > static_cast<long>(p / 2)) r -= static_cast<long>(p);
        lifted.push_back(FieldElement::from_integer(field, r));
      }
      if (all_vanish(phi, lifted)) {
        report.witness = std::move(lifted);
        return true;
      }
      return false;
    });
    if (report.witness) {
      report.verdict = MorphismVerdict::NotMorphism;
      return report;
    }
    (zero_found ? report.primes_with_zeros : report.primes_clean).push_back(p);
  }
  if (!report.primes_clean.empty()) {
    report.verdict = MorphismVerdict::ProbablyMorphism;
  } else if (!report.primes_with_zeros.empty()) {
    report.verdict = MorphismVerdict::Inconclusive;
  } else {
    throw Error(ErrorCode::NoGoodPrime, "every sampled prime has bad reduction");
  }
  return report;
}

}  // namespace comdyn
