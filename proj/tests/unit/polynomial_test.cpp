#include <gtest/gtest.h>

#include "comdyn/parse.hpp"
#include "comdyn/poly_map.hpp"
#include "test_support.hpp"

namespace comdyn {
namespace {

using testing::random_map;
using testing::random_point;

const FieldSpec kQ = FieldSpec::rationals();

PolyMap map(const char* text, const FieldSpec& field = kQ) { return parse_poly_map(text, field); }

TEST(Evaluate, WorkedValues) {
  EXPECT_EQ(evaluate(map("(x^2, y^2)"), parse_point("0,1", kQ)), parse_point("0,1", kQ));
  const Point p = random_point(kQ, 3);
  EXPECT_EQ(evaluate(PolyMap::identity(kQ, 3), p), p);
  const FieldSpec k = FieldSpec::cyclotomic(7);
  EXPECT_EQ(evaluate(map("(y^2, x^2)", k), parse_point("zeta, zeta^2", k)), parse_point("zeta^4, zeta^2", k));
}

TEST(Compose, WorkedValues) {
  const PolyMap f = map("(x^2, y^2)");
  const PolyMap g = map("(x, x*y)");
  EXPECT_EQ(compose(f, g), map("(x^2, x^2*y^2)"));
  EXPECT_EQ(compose(g, f), map("(x^2, x^2*y^2)"));
  EXPECT_EQ(compose(f, PolyMap::identity(kQ, 2)), f);
  EXPECT_EQ(compose(PolyMap::identity(kQ, 2), f), f);
}

TEST(Compose, DimensionMismatch) {
  EXPECT_THROW(compose(map("(x^2, y^2)"), map("(x, y, z)")), Error);
}

TEST(Compose, MatchesNaiveSubstitution) {
  for (int trial = 0; trial < 60; ++trial) {
    const PolyMap f = random_map(kQ, 2, static_cast<unsigned>(testing::uniform(1, 3)), 5);
    const PolyMap g = random_map(kQ, 2, static_cast<unsigned>(testing::uniform(1, 3)), 5);
    const PolyMap fg = compose(f, g);
    std::vector<testing::NaivePoly> inner;
    for (const auto& c : g.components()) inner.push_back(testing::naive_from(c));
    for (std::size_t i = 0; i < 2; ++i) {
      ASSERT_EQ(testing::naive_from(fg[i]), testing::naive_substitute(testing::naive_from(f[i]), inner, 2))
          << to_string(f) << " o " << to_string(g);
    }
  }
}

TEST(Compose, Associative) {
  for (int trial = 0; trial < 200; ++trial) {
    const auto d = [] { return static_cast<unsigned>(testing::uniform(1, 2)); };
    const PolyMap f = random_map(kQ, 2, d(), 4);
    const PolyMap g = random_map(kQ, 2, d(), 4);
    const PolyMap h = random_map(kQ, 2, d(), 4);
    ASSERT_EQ(compose(compose(f, g), h), compose(f, compose(g, h)));
  }
}

TEST(Compose, DegreeIsSubmultiplicative) {
  for (int trial = 0; trial < 100; ++trial) {
    const PolyMap f = random_map(kQ, 2, static_cast<unsigned>(testing::uniform(1, 3)), 4);
    const PolyMap g = random_map(kQ, 2, static_cast<unsigned>(testing::uniform(1, 3)), 4);
    ASSERT_LE(compose(f, g).degree(), f.degree() * g.degree());
  }
  // Monomial maps with positive exponents: equality.
  for (int trial = 0; trial < 50; ++trial) {
    const auto a = testing::random_exponent_matrix(2, 3);
    const auto b = testing::random_exponent_matrix(2, 3);
    const PolyMap f = testing::monomial_map(kQ, a);
    const PolyMap g = testing::monomial_map(kQ, b);
    // deg(f o g) = max_i sum_j (A B)_ij, while deg f deg g bounds it.
    const auto ab = testing::mat_mul(a, b);
    int expected = 0;
    for (const auto& row : ab) {
      int s = 0;
      for (auto x : row) s += static_cast<int>(x);
      expected = std::max(expected, s);
    }
    ASSERT_EQ(compose(f, g).degree(), expected);
    ASSERT_LE(expected, f.degree() * g.degree());
  }
  // Pure powers: deg(x^a, y^a) o (x^b, y^b) = ab.
  EXPECT_EQ(compose(map("(x^3, y^3)"), map("(x^2, y^2)")).degree(), 6);
}

TEST(Jacobian, WorkedValues) {
  const FieldSpec k = FieldSpec::cyclotomic(7);
  const Point p = parse_point("zeta^2, zeta^3", k);
  EXPECT_EQ(jacobian_det_at(map("(y^2, x^2)", k), p), FieldElement::from_integer(k, -4) * p[0] * p[1]);
  EXPECT_TRUE(jacobian_det_at(PolyMap::identity(kQ, 3), random_point(kQ, 3)).is_one());
  EXPECT_EQ(jacobian_det_at(map("(x^3 + y, x + y^2)"), parse_point("1,1", kQ)), FieldElement::from_integer(kQ, 5));
}

// Finite differences in double precision as an independent check of the
// symbolic Jacobian.
TEST(Jacobian, MatchesFiniteDifferences) {
  constexpr double kStep = 1e-5;
  constexpr double kTolerance = 1e-3;
  const PolyMap f = map("(x^3 + y, x + y^2)");
  auto eval = [&](double x, double y) {
    Point p{FieldElement::from_rational(kQ, mpq_class(x)), FieldElement::from_rational(kQ, mpq_class(y))};
    const Point v = evaluate(f, p);
    return std::pair{v[0].rational().get_d(), v[1].rational().get_d()};
  };
  for (double x : {1.0, -0.5, 2.0}) {
    for (double y : {1.0, 0.25, -3.0}) {
      const auto [fx1, fy1] = eval(x + kStep, y);
      const auto [fx0, fy0] = eval(x - kStep, y);
      const auto [gx1, gy1] = eval(x, y + kStep);
      const auto [gx0, gy0] = eval(x, y - kStep);
      const double det = ((fx1 - fx0) * (gy1 - gy0) - (fy1 - fy0) * (gx1 - gx0)) / (4 * kStep * kStep);
      const Point p{FieldElement::from_rational(kQ, mpq_class(x)), FieldElement::from_rational(kQ, mpq_class(y))};
      EXPECT_NEAR(jacobian_det_at(f, p).rational().get_d(), det, kTolerance);
    }
  }
}

TEST(Jacobian, ChainRuleAtDeterminantLevel) {
  for (int trial = 0; trial < 100; ++trial) {
    const std::size_t n = static_cast<std::size_t>(testing::uniform(1, 3));
    const PolyMap f = random_map(kQ, n, static_cast<unsigned>(testing::uniform(1, 2)), 4);
    const PolyMap g = random_map(kQ, n, static_cast<unsigned>(testing::uniform(1, 2)), 4);
    const Point p = random_point(kQ, n, 5, 3);
    ASSERT_EQ(jacobian_det_at(compose(f, g), p), jacobian_det_at(f, evaluate(g, p)) * jacobian_det_at(g, p));
  }
}

TEST(Homogenize, WorkedValues) {
  const ProjMap phi = homogenize(map("(x^2, y^2)"), 2);
  EXPECT_EQ(to_string(phi), "[x^2, y^2, z^2]");
  EXPECT_EQ(to_string(homogenize(map("(x + 1)"), 1)), "[x, x + y]");
  EXPECT_EQ(dehomogenize(phi, 0), map("(x^2, y^2)"));
  EXPECT_THROW(homogenize(map("(x^3, y)"), 2), Error);
}

TEST(Homogenize, RoundTripOnDenseChart) {
  for (int trial = 0; trial < 100; ++trial) {
    const std::size_t n = static_cast<std::size_t>(testing::uniform(1, 3));
    const unsigned d = static_cast<unsigned>(testing::uniform(1, 3));
    const PolyMap f = random_map(kQ, n, d, 6);
    const unsigned e = d + static_cast<unsigned>(testing::uniform(0, 1));
    const ProjMap phi = homogenize(f, e);
    ASSERT_EQ(phi.degree(), e);
    for (const auto& c : phi.components()) ASSERT_TRUE(c.is_zero() || c.is_homogeneous());
    ASSERT_EQ(dehomogenize(phi, 0), f);
  }
}

TEST(Homogenize, NonPolynomialChartRejected) {
  const ProjMap phi = parse_proj_map("[x^2, y^2, x*z]", kQ);
  EXPECT_THROW(dehomogenize(phi, 2), Error);
}

TEST(ProjMap, RejectsInhomogeneous) {
  EXPECT_THROW(parse_proj_map("[x^2, y]", kQ), Error);
  EXPECT_THROW(parse_proj_map("[0, 0]", kQ), Error);
}

}  // namespace
}  // namespace comdyn
