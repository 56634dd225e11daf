#include <gtest/gtest.h>

#include <complex>
#include <numeric>

#include "comdyn/field.hpp"
#include "test_support.hpp"

namespace comdyn {
namespace {

using testing::random_rational;
using testing::uniform;

const FieldSpec kQ = FieldSpec::rationals();

TEST(FieldArith, WorkedValues) {
  EXPECT_EQ((FieldElement::from_rational(kQ, mpq_class(1, 2)) + FieldElement::from_rational(kQ, mpq_class(1, 3)))
                .to_string(),
            "5/6");
  const FieldSpec k7 = FieldSpec::cyclotomic(7);
  EXPECT_EQ(FieldElement::zeta(k7, 3) * FieldElement::zeta(k7, 5), FieldElement::zeta(k7, 1));
  const FieldSpec f31 = FieldSpec::prime_field(31);
  EXPECT_TRUE((FieldElement::from_integer(f31, 17) * FieldElement::from_integer(f31, 11)).is_one());
}

// Fractions over plain 64-bit integers, small enough that nothing overflows.
struct SmallFraction {
  long num;
  long den;
};

mpq_class as_mpq(SmallFraction f) {
  mpq_class q(f.num, f.den);
  q.canonicalize();
  return q;
}

TEST(FieldArith, RationalPairsAgainstIntegerOracle) {
  for (int trial = 0; trial < 10000; ++trial) {
    const SmallFraction a{uniform(-1000, 1000), uniform(1, 1000)};
    const SmallFraction b{uniform(-1000, 1000), uniform(1, 1000)};
    const FieldElement x = FieldElement::from_rational(kQ, as_mpq(a));
    const FieldElement y = FieldElement::from_rational(kQ, as_mpq(b));

    const SmallFraction sum{a.num * b.den + b.num * a.den, a.den * b.den};
    const SmallFraction prod{a.num * b.num, a.den * b.den};
    ASSERT_EQ((x + y).rational(), as_mpq(sum));
    ASSERT_EQ((x * y).rational(), as_mpq(prod));
    ASSERT_EQ((x + y) - y, x);
    if (!y.is_zero()) ASSERT_EQ((x * y) / y, x);

    // Canonical form is idempotent: rebuilding from the reduced value changes nothing.
    const mpq_class q = (x * y).rational();
    ASSERT_EQ(mpz_class(gcd(q.get_num(), q.get_den())), 1);
    ASSERT_GT(q.get_den(), 0);
    ASSERT_EQ(FieldElement::from_rational(kQ, q), x * y);
  }
}

TEST(FieldArith, DivisionByZeroThrows) {
  EXPECT_THROW(FieldElement::one(kQ) / FieldElement::zero(kQ), Error);
  EXPECT_THROW(FieldElement::zero(FieldSpec::cyclotomic(5)).inverse(), Error);
}

TEST(FieldArith, MixedFieldsRejected) {
  EXPECT_THROW(FieldElement::one(kQ) + FieldElement::one(FieldSpec::cyclotomic(3)), Error);
  EXPECT_THROW(FieldElement::one(FieldSpec::prime_field(5)) * FieldElement::one(FieldSpec::prime_field(7)), Error);
}

TEST(FieldArith, CyclotomicRelations) {
  for (std::uint32_t p : {3U, 5U, 7U, 11U}) {
    const FieldSpec k = FieldSpec::cyclotomic(p);
    const FieldElement z = FieldElement::zeta(k);
    EXPECT_TRUE(z.pow(p).is_one()) << p;
    FieldElement sum = FieldElement::zero(k);
    for (std::uint32_t i = 0; i < p; ++i) sum += z.pow(i);
    EXPECT_TRUE(sum.is_zero()) << p;
    EXPECT_EQ(z.inverse(), z.pow(p - 1));
  }
}

// The complex embedding zeta -> exp(2 pi i / p) is an independent numeric
// check of the reduced arithmetic.
TEST(FieldArith, CyclotomicMatchesComplexEmbedding) {
  constexpr double kTolerance = 1e-6;
  for (std::uint32_t p : {3U, 5U, 7U, 11U}) {
    const FieldSpec k = FieldSpec::cyclotomic(p);
    for (int trial = 0; trial < 200; ++trial) {
      const FieldElement a = testing::random_element(k, 5);
      const FieldElement b = testing::random_element(k, 5);
      ASSERT_LT(std::abs((a * b).to_complex() - a.to_complex() * b.to_complex()), kTolerance);
      ASSERT_LT(std::abs((a + b).to_complex() - (a.to_complex() + b.to_complex())), kTolerance);
      if (!b.is_zero()) {
        const std::complex<double> q = a.to_complex() / b.to_complex();
        ASSERT_LT(std::abs((a / b).to_complex() - q), kTolerance * (1 + std::abs(q)));
        ASSERT_EQ((a / b) * b, a);
      }
    }
  }
}

TEST(FieldArith, PrimeFieldFermat) {
  for (std::uint32_t p : {2U, 3U, 31U, 101U, 65521U}) {
    const FieldSpec f = FieldSpec::prime_field(p);
    for (int trial = 0; trial < 50; ++trial) {
      const FieldElement a = FieldElement::from_integer(f, uniform(1, 1000000));
      if (a.is_zero()) continue;
      ASSERT_TRUE(a.pow(p - 1).is_one());
      ASSERT_TRUE((a * a.inverse()).is_one());
    }
  }
}

TEST(FieldSpecParse, AcceptsAndRejects) {
  EXPECT_EQ(FieldSpec::parse("Q"), kQ);
  EXPECT_EQ(FieldSpec::parse("Qzeta:7"), FieldSpec::cyclotomic(7));
  EXPECT_EQ(FieldSpec::parse("Fp:31"), FieldSpec::prime_field(31));
  for (const char* bad : {"", "R", "Qzeta:6", "Fp:1", "Fp:", "Qzeta:x", "Fp:-3"}) {
    EXPECT_THROW(FieldSpec::parse(bad), Error) << bad;
  }
}

TEST(KthRoot, WorkedValues) {
  EXPECT_EQ(kth_root_in_rationals(mpq_class(8, 27), 3), mpq_class(2, 3));
  EXPECT_FALSE(kth_root_in_rationals(mpq_class(-4), 2).has_value());
  EXPECT_EQ(kth_root_in_rationals(mpq_class(-64), 3), mpq_class(-4));
  EXPECT_THROW(kth_root_in_rationals(mpq_class(0), 2), Error);
}

mpq_class qpow(const mpq_class& s, unsigned k) {
  mpq_class r = 1;
  for (unsigned i = 0; i < k; ++i) r *= s;
  return r;
}

// Brute force: every s = a/b with |a|, b <= 100 and every k <= 5.
TEST(KthRoot, AgreesWithBruteForceOnPowers) {
  for (int trial = 0; trial < 400; ++trial) {
    const mpq_class s = random_rational(100, 100);
    if (s == 0) continue;
    const unsigned k = static_cast<unsigned>(uniform(1, 5));
    const mpq_class r = qpow(s, k);
    const auto root = kth_root_in_rationals(r, k);
    ASSERT_TRUE(root.has_value()) << r << " k=" << k;
    ASSERT_EQ(qpow(*root, k), r);
    // Brute force: the root must be +-s, and the sign is forced for odd k.
    ASSERT_TRUE(*root == s || *root == -s);
    if (k % 2 == 1) ASSERT_EQ(*root, s);
  }
}

TEST(KthRoot, NonPowersHaveNoRoot) {
  // r = s^k * t with t square-free and coprime to s has no k-th root for k >= 2.
  for (int trial = 0; trial < 20; ++trial) {
    const mpq_class s = random_rational(30, 30);
    if (s == 0) continue;
    const unsigned k = static_cast<unsigned>(uniform(2, 5));
    const mpq_class r = qpow(s, k) * 2 * 3 * 5 * 7 * 11 * 13 * 17 * 19 * 23 * 29 * 31;
    // Brute-force oracle over the whole box.
    bool brute = false;
    for (long a = -100; a <= 100 && !brute; ++a) {
      for (long b = 1; b <= 100 && !brute; ++b) {
        mpq_class c(a, b);
        c.canonicalize();
        brute = qpow(c, k) == r;
      }
    }
    ASSERT_FALSE(brute);
    ASSERT_FALSE(kth_root_in_rationals(r, k).has_value());
  }
}

TEST(KthRoot, FactorLimitIsReported) {
  // Product of two primes above the trial-division bound.
  const mpq_class r = mpq_class(mpz_class("1000003") * mpz_class("1000033"));
  EXPECT_THROW(kth_root_in_rationals(r, 2, 1000), Error);
}

TEST(RootOfUnityPart, WorkedValues) {
  const FieldSpec k = FieldSpec::cyclotomic(7);
  const auto a = cyclotomic_root_of_unity_part(FieldElement::from_integer(k, 3) * FieldElement::zeta(k, 2));
  ASSERT_TRUE(a.has_value());
  EXPECT_EQ(a->first, 2U);
  EXPECT_EQ(a->second, 3);
  EXPECT_FALSE(cyclotomic_root_of_unity_part(FieldElement::one(k) + FieldElement::zeta(k)).has_value());
  const auto b = cyclotomic_root_of_unity_part(FieldElement::from_integer(k, -64) * FieldElement::zeta(k, 6));
  ASSERT_TRUE(b.has_value());
  EXPECT_EQ(b->first, 6U);
  EXPECT_EQ(b->second, -64);
}

TEST(RootInField, CyclotomicAndPrime) {
  const FieldSpec k = FieldSpec::cyclotomic(7);
  // -1 = (-1)^3, and -64 zeta^6 = (-4 zeta^2)^3.
  const auto minus_one = kth_root_in_field(FieldElement::from_integer(k, -1), 3);
  EXPECT_EQ(minus_one.verdict, RootVerdict::Exists);
  const FieldElement a = FieldElement::from_integer(k, -64) * FieldElement::zeta(k, 6);
  const auto cube = kth_root_in_field(a, 3);
  ASSERT_EQ(cube.verdict, RootVerdict::Exists);
  EXPECT_EQ(cube.witness->pow(3), a);
  // 3 zeta has norm 3^6, and 3 is not a cube, so no cube root exists.
  const auto no_root = kth_root_in_field(FieldElement::from_integer(k, 3) * FieldElement::zeta(k), 3);
  EXPECT_NE(no_root.verdict, RootVerdict::Exists);

  const FieldSpec f = FieldSpec::prime_field(13);
  for (long v = 1; v < 13; ++v) {
    const FieldElement x = FieldElement::from_integer(f, v);
    bool brute = false;
    for (long s = 0; s < 13; ++s) brute = brute || FieldElement::from_integer(f, s).pow(2) == x;
    EXPECT_EQ(kth_root_in_field(x, 2).verdict == RootVerdict::Exists, brute) << v;
  }
}

}  // namespace
}  // namespace comdyn
