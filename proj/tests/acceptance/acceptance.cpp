// One PASS/FAIL line per acceptance criterion; exit status is the number of
// failures.

#include <chrono>
#include <cstdio>
#include <functional>
#include <iostream>
#include <set>
#include <string>

#include "cli.hpp"
#include "comdyn/commutant.hpp"
#include "comdyn/ideal.hpp"
#include "comdyn/multiplier.hpp"
#include "comdyn/parse.hpp"
#include "test_support.hpp"

namespace comdyn {
namespace {

// Wall-clock limits per criterion, in seconds.
constexpr double kLimit1 = 1.0;
constexpr double kLimit2 = 5.0;
constexpr double kLimit3 = 60.0;
constexpr double kLimit4 = 120.0;
constexpr double kLimit5 = 1.0;
constexpr double kLimit6 = 60.0;
constexpr double kLimit7 = 120.0;
constexpr double kLimit8 = 120.0;

constexpr int kRoundTripMaps = 100;
constexpr int kMonomialPairs = 50;
constexpr int kConjugations = 20;
constexpr std::size_t kMinFamily = 10;

const FieldSpec kQ = FieldSpec::rationals();

struct Outcome {
  bool ok = true;
  std::string detail;
};

void require(Outcome& o, bool cond, const std::string& what) {
  if (!cond && o.ok) {
    o.ok = false;
    o.detail = what;
  }
}

Outcome criterion1() {
  Outcome o;
  const PolyMap f = parse_poly_map("(x^2, y^2)", kQ);
  const PolyMap g = parse_poly_map("(x, x*y)", kQ);
  require(o, commutes_affine(f, g), "f and g do not commute");
  const Point p01 = parse_point("0,1", kQ);
  require(o, orbit(f, p01, 100).status == OrbitStatus::Preperiodic, "(0,1) not f-preperiodic");
  const auto catalog = build_catalog(f, CatalogStrategy::parse("bounded:0"));
  const auto rep = verify_invariance(g, catalog);
  bool hit = false;
  for (const auto& p : catalog.stream()) hit = hit || evaluate(g, p) == p01;
  require(o, !hit, "(0,1) lies in g(Pre(f) on {0,+-1}^2)");
  require(o, !rep.surjective && rep.containment, "invariance report mismatch");
  const Point p02 = parse_point("0,2", kQ);
  require(o, orbit(g, p02, 100).status == OrbitStatus::Preperiodic, "(0,2) not g-preperiodic");
  const auto esc = orbit(f, p02, 100, HeightValue::parse("0"));
  require(o, esc.status == OrbitStatus::EscapedHeightBound, "(0,2) did not escape height bound 0");
  o.detail = o.ok ? "commute, (0,1) missed by g, (0,2) escapes at (0, 4)" : o.detail;
  return o;
}

Outcome criterion2() {
  Outcome o;
  const FieldSpec k = FieldSpec::cyclotomic(7);
  const PolyMap f = parse_poly_map("(y^2, x^2)", k);
  const PolyMap g = parse_poly_map("(x^2*y, x*y^2)", k);
  const Point p = parse_point("zeta, zeta^2", k);
  require(o, commutes_affine(f, g), "f and g do not commute");
  const auto og = orbit(g, p, 100);
  bool listed = false;
  for (const auto& q : og.points) listed = listed || q == parse_point("zeta^4, zeta^5", k);
  require(o, listed, "(zeta^4, zeta^5) not in the g-orbit");
  const auto rep = multiplier(f, p, g);
  // Independent recomputation along the orbit.
  FieldElement lambda = FieldElement::one(k);
  Point q = p;
  std::size_t period = 0;
  do {
    lambda *= jacobian_det_at(f, q);
    q = evaluate(f, q);
    ++period;
  } while (!(q == p));
  require(o, rep.period == period && rep.lambda == lambda, "multiplier engine disagrees with direct product");
  // The scripted reproduction must report the comparison without failing.
  const auto rows = cli::paper_examples();
  bool flagged = false;
  for (const auto& r : rows) {
    require(o, r.status != "fail", "paper-examples row failed: " + r.id);
    if (r.id == "mono-period" || r.id == "mono-multiplier") flagged = flagged || r.status == "discrepancy";
  }
  require(o, flagged || (rep.period == 3), "period comparison neither agrees nor is flagged");
  if (o.ok) {
    o.detail = "period " + std::to_string(rep.period) + ", lambda " + rep.lambda.to_string() +
               (flagged ? "; discrepancy flagged against period 3 / -64*zeta^6" : "");
  }
  return o;
}

Outcome criterion3() {
  Outcome o;
  int recovered = 0;
  for (int trial = 0; trial < kRoundTripMaps; ++trial) {
    const std::size_t n = static_cast<std::size_t>(testing::uniform(1, 3));
    const unsigned d = static_cast<unsigned>(testing::uniform(1, 4));
    const PolyMap g = testing::random_map(kQ, n, d, 10);
    auto source = [n]() -> std::optional<Point> { return testing::random_point(FieldSpec::rationals(), n, 50, 7); };
    const auto frame = find_general_position(source, kQ, n, d);
    require(o, frame.size() == veronese_size(n, d), "frame size differs from C(n+d, d)");
    std::vector<Point> images;
    for (const auto& p : frame.points()) images.push_back(evaluate(g, p));
    const bool same = interpolate_map(frame, images) == g;
    require(o, same, "interpolation did not recover " + to_string(g));
    recovered += same;
  }
  if (o.ok) o.detail = std::to_string(recovered) + "/" + std::to_string(kRoundTripMaps) + " maps recovered";
  return o;
}

std::vector<std::string> texts(const std::vector<PolyMap>& maps) {
  std::vector<std::string> out;
  for (const auto& m : maps) out.push_back(to_string(m));
  return out;
}

Outcome criterion4() {
  Outcome o;
  const PolyMap f = parse_poly_map("(x^2, y^2)", kQ);
  const auto catalog = build_catalog(f, CatalogStrategy::parse("bounded:0"));
  GridSpec grid;
  grid.coeff_bound = 1;
  std::size_t counts[3] = {0, 0, 0};
  for (unsigned d : {1U, 2U}) {
    const auto cat = commutant_search(f, d, catalog);
    const auto brute = brute_force_commutant(f, d, grid);
    require(o, texts(cat.maps) == texts(brute.maps), "catalog and grid lists differ at d=" + std::to_string(d));
    counts[d] = cat.maps.size();
    if (d == 2) {
      const auto names = texts(cat.maps);
      const std::set<std::string> found(names.begin(), names.end());
      for (const char* a : {"x^2", "x*y", "y^2"})
        for (const char* b : {"x^2", "x*y", "y^2"})
          require(o, found.count(std::string("(") + a + ", " + b + ")") == 1, "missing one-monomial map");
    }
  }
  const auto aut = automorphisms(f, grid, &catalog);
  require(o, texts(aut.invertible) == std::vector<std::string>{"(x, y)", "(y, x)"}, "Aut is not {id, swap}");
  if (o.ok) {
    o.detail = "|Com(f,1)| = " + std::to_string(counts[1]) + ", |Com(f,2)| = " + std::to_string(counts[2]) +
               ", Aut = {(x, y), (y, x)}";
  }
  return o;
}

Outcome criterion5() {
  Outcome o;
  const auto ideal = commutation_ideal(parse_poly_map("(x^2)", kQ), 1);
  std::vector<std::string> degree_one;
  std::size_t degenerate = 0;
  for (const auto& v : ideal_grid_solutions(ideal, 2, 2)) {
    const PolyMap g(kQ, ideal.components_from(v));
    if (g.degree() == 1) degree_one.push_back(to_string(g));
    else ++degenerate;
  }
  require(o, degree_one == std::vector<std::string>{"(x)"}, "degree-1 solutions are not {x}");
  require(o, degenerate == 2, "expected the two constant solutions 0 and 1");
  if (o.ok) o.detail = "degree-1 solutions {x}; constants 0, 1 excluded by degree";
  return o;
}

Outcome criterion6() {
  Outcome o;
  const FieldSpec k = FieldSpec::cyclotomic(7);
  int pairs = 0;
  int relation = 0;
  for (int trial = 0; pairs < kMonomialPairs && trial < 10 * kMonomialPairs; ++trial) {
    const auto [a, b] = testing::commuting_exponents(2);
    const PolyMap f = testing::monomial_map(k, a);
    const PolyMap g = testing::monomial_map(k, b);
    // Invariance on the exact torus catalog.
    const auto catalog = build_catalog(f, CatalogStrategy::monomial_exact(7));
    require(o, verify_invariance(g, catalog).containment, "g does not preserve the strata of f");
    // Multiplier relation at a periodic torus point.
    const Point p{FieldElement::zeta(k, testing::uniform(0, 6)), FieldElement::zeta(k, testing::uniform(0, 6))};
    const auto rec = orbit(f, p, 1000);
    if (rec.status != OrbitStatus::Preperiodic || rec.l != 0) continue;
    const auto rep = multiplier(f, p, g);
    ++pairs;
    if (rep.companion->g_critical) continue;
    const auto img = multiplier(f, rep.companion->image);
    require(o, rep.lambda == img.lambda.pow(rep.period / img.period), "multiplier relation fails");
    ++relation;
  }
  require(o, pairs == kMonomialPairs, "too few commuting pairs generated");
  int conj = 0;
  while (conj < kConjugations) {
    std::vector<Poly> rows;
    for (int i = 0; i < 2; ++i) {
      Poly r(2);
      r.add_term(Monomial({1, 0}), FieldElement::from_integer(k, testing::uniform(-2, 2)));
      r.add_term(Monomial({0, 1}), FieldElement::from_integer(k, testing::uniform(-2, 2)));
      rows.push_back(r);
    }
    const PolyMap sigma(k, rows);
    const auto inv = inverse_affine(sigma);
    if (!inv) continue;
    const PolyMap f = testing::monomial_map(k, testing::random_exponent_matrix(2, 2));
    const Point p{FieldElement::zeta(k, testing::uniform(0, 6)), FieldElement::zeta(k, testing::uniform(0, 6))};
    const auto rec = orbit(f, p, 1000);
    if (rec.status != OrbitStatus::Preperiodic || rec.l != 0) continue;
    const auto base = multiplier(f, p);
    const auto moved = multiplier(compose(sigma, compose(f, *inv)), evaluate(sigma, p));
    require(o, base.lambda == moved.lambda, "multiplier changed under linear conjugation");
    ++conj;
  }
  if (o.ok) {
    o.detail = std::to_string(pairs) + " invariance pairs, " + std::to_string(relation) + " multiplier relations, " +
               std::to_string(conj) + " conjugations";
  }
  return o;
}

Outcome criterion7() {
  Outcome o;
  const PolyMap f = parse_poly_map("(y, x, z^2)", kQ);
  GridSpec grid;
  grid.coeff_bound = 1;
  const std::vector<Monomial> planar{Monomial({2, 0, 0}), Monomial({1, 1, 0}), Monomial({0, 2, 0})};
  grid.supports = std::vector<std::vector<Monomial>>{planar, planar, {Monomial({0, 0, 2})}};
  const auto res = brute_force_commutant(f, 2, grid);
  const PolyMap swap = parse_poly_map("(y, x, z)", kQ);
  std::size_t family = 0;
  for (const auto& g : res.maps) {
    // g_P: second component is the first with x and y exchanged.
    if (compose(g, swap)[0] == g[1] && g[2] == parse_polynomial("z^2", kQ, 3)) ++family;
  }
  require(o, family > kMinFamily, "g_P family has only " + std::to_string(family) + " members");
  // Height witness: (k, k+1, 0) is periodic for every k with growing height.
  mpz_class last = 0;
  for (long kk = 1; kk <= 1000; kk *= 10) {
    const Point p{FieldElement::from_integer(kQ, kk), FieldElement::from_integer(kQ, kk + 1), FieldElement::zero(kQ)};
    require(o, orbit(f, p, 10).status == OrbitStatus::Preperiodic, "witness point not periodic");
    const auto h = weil_height(p).max_abs;
    require(o, h > last, "witness heights not increasing");
    last = h;
  }
  if (o.ok) {
    o.detail = std::to_string(res.maps.size()) + " commuting maps, " + std::to_string(family) +
               " in the g_P family; Pre(f) has unbounded height (bounded-height hypothesis fails)";
  }
  return o;
}

Outcome criterion8() {
  Outcome o;
  const PolyMap f = parse_poly_map("(x^2, y^2)", kQ);
  const auto catalog = build_catalog(f, CatalogStrategy::parse("bounded:0"));
  const auto res = commutant_search(f, 2, catalog);
  // Recompute the bound from the catalog: strata (m, l) with m <= m_d,
  // M = number of catalog points with f^m = f^l.
  mpz_class bound = 1;
  for (const auto& s : catalog.strata()) {
    if (s.m > res.m_d) continue;
    const std::size_t big_m = catalog.points_satisfying(s.m, s.l).size();
    mpz_class term;
    mpz_ui_pow_ui(term.get_mpz_t(), big_m, big_m);
    bound *= term;
  }
  require(o, bound == res.counting_bound, "reported bound differs from recomputation");
  require(o, res.explored <= bound, "explored exceeds the bound");
  require(o, mpz_class(res.maps.size()) <= bound, "|Com| exceeds the bound");
  if (o.ok) {
    o.detail = "explored " + res.explored.get_str() + " <= bound " + bound.get_str() + ", |Com| = " +
               std::to_string(res.maps.size());
  }
  return o;
}

}  // namespace
}  // namespace comdyn

int main() {
  using Clock = std::chrono::steady_clock;
  struct Criterion {
    int id;
    double limit;
    std::function<comdyn::Outcome()> fn;
  };
  const Criterion criteria[] = {
      {1, comdyn::kLimit1, comdyn::criterion1}, {2, comdyn::kLimit2, comdyn::criterion2},
      {3, comdyn::kLimit3, comdyn::criterion3}, {4, comdyn::kLimit4, comdyn::criterion4},
      {5, comdyn::kLimit5, comdyn::criterion5}, {6, comdyn::kLimit6, comdyn::criterion6},
      {7, comdyn::kLimit7, comdyn::criterion7}, {8, comdyn::kLimit8, comdyn::criterion8},
  };
  int failures = 0;
  for (const auto& c : criteria) {
    const auto start = Clock::now();
    comdyn::Outcome out;
    try {
      out = c.fn();
    } catch (const std::exception& e) {
      out = {false, std::string("exception: ") + e.what()};
    }
    const double secs = std::chrono::duration<double>(Clock::now() - start).count();
    if (out.ok && secs > c.limit) {
      out.ok = false;
      out.detail += " (time limit exceeded)";
    }
    failures += !out.ok;
    std::printf("criterion %d: %s [%.3fs / %.0fs] %s\n", c.id, out.ok ? "PASS" : "FAIL", secs, c.limit,
                out.detail.c_str());
  }
  return failures;
}
