#include <gtest/gtest.h>

#include "comdyn/morphism.hpp"
#include "comdyn/parse.hpp"
#include "test_support.hpp"

namespace comdyn {
namespace {

const FieldSpec kQ = FieldSpec::rationals();

TEST(Morphism, WorkedValues) {
  const auto line = is_morphism(parse_proj_map("[x^2, y^2]", kQ));
  EXPECT_EQ(line.verdict, MorphismVerdict::Morphism);
  EXPECT_EQ(line.resultant, FieldElement::one(kQ));

  const auto bad = is_morphism(parse_proj_map("[x*y, y^2, z^2]", kQ));
  EXPECT_EQ(bad.verdict, MorphismVerdict::NotMorphism);
  EXPECT_EQ(bad.witness, parse_point("1, 0, 0", kQ));

  const auto good = is_morphism(parse_proj_map("[x^2, y^2, z^2]", kQ));
  EXPECT_EQ(good.verdict, MorphismVerdict::ProbablyMorphism);
  EXPECT_EQ(good.primes_clean.size(), kDefaultMorphismPrimes.size());
}

// Res(prod (x - a_i y), prod (x - b_j y)) = prod (a_i - b_j).
TEST(Morphism, ResultantMatchesRootProduct) {
  for (int trial = 0; trial < 50; ++trial) {
    const unsigned d = static_cast<unsigned>(testing::uniform(1, 3));
    std::vector<long> ra;
    std::vector<long> rb;
    Poly a = Poly::constant(2, FieldElement::one(kQ));
    Poly b = Poly::constant(2, FieldElement::one(kQ));
    for (unsigned i = 0; i < d; ++i) {
      ra.push_back(testing::uniform(-4, 4));
      rb.push_back(testing::uniform(-4, 4));
      a = a * parse_polynomial("x - (" + std::to_string(ra.back()) + ")*y", kQ, 2);
      b = b * parse_polynomial("x - (" + std::to_string(rb.back()) + ")*y", kQ, 2);
    }
    mpz_class expected = 1;
    for (long s : ra)
      for (long t : rb) expected *= s - t;
    ASSERT_EQ(binary_resultant(a, b, d), FieldElement::from_integer(kQ, expected));
    const auto rep = is_morphism(ProjMap(kQ, {a, b}));
    ASSERT_EQ(rep.verdict, expected == 0 ? MorphismVerdict::NotMorphism : MorphismVerdict::Morphism);
  }
}

TEST(Morphism, FiniteFieldEnumeration) {
  const FieldSpec f5 = FieldSpec::prime_field(5);
  EXPECT_EQ(is_morphism(parse_proj_map("[x^2, y^2, z^2]", f5)).verdict, MorphismVerdict::ProbablyMorphism);
  // z = 0 and x^2 + y^2 = 0 meet at [1 : 2 : 0] since 4 = -1 mod 5.
  const auto rep = is_morphism(parse_proj_map("[x^2 + y^2, z^2, x*z]", f5));
  EXPECT_EQ(rep.verdict, MorphismVerdict::NotMorphism);
  EXPECT_EQ(rep.witness, parse_point("1, 2, 0", f5));
}

TEST(Morphism, NoLiftedZero) {
  // Sums of squares have no nontrivial rational zero, though they may vanish mod p.
  const auto rep = is_morphism(parse_proj_map("[x^2 + y^2, y^2 + z^2, x^2 - 2*z^2]", kQ));
  EXPECT_NE(rep.verdict, MorphismVerdict::NotMorphism);
}

TEST(Morphism, Errors) {
  EXPECT_THROW(is_morphism(parse_proj_map("[2431*x^2, y^2, z^2]", kQ), {11, 13, 17}), Error);
  EXPECT_THROW(is_morphism(parse_proj_map("[x^2, y^2, z^2]", FieldSpec::cyclotomic(5))), Error);
  EXPECT_THROW(is_morphism(parse_proj_map("[x^2, y^2, z^2]", kQ), {4}), Error);
}

}  // namespace
}  // namespace comdyn
