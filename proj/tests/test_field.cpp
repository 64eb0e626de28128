#include <gtest/gtest.h>

#include "oracle.hpp"
#include "test_helpers.hpp"

using namespace dualspace;
using namespace testing_helpers;

TEST(FieldSpec, RejectsNonPrimesAndOutOfRange) {
  EXPECT_NO_THROW(FieldSpec::prime(2));
  EXPECT_NO_THROW(FieldSpec::prime(2147483647));  // 2^31 - 1 is prime
  for (std::uint64_t bad : {0ULL, 1ULL, 4ULL, 91ULL, 2147483648ULL}) {
    EXPECT_THROW(FieldSpec::prime(bad), Error) << bad;
  }
  EXPECT_EQ(FieldSpec::parse("GF(97)"), gf(97));
  EXPECT_EQ(FieldSpec::parse("QQ"), qq());
  EXPECT_THROW(FieldSpec::parse("GF(9)"), Error);
  EXPECT_THROW(FieldSpec::parse("RR"), Error);
}

TEST(Scalar, AddExamples) {
  EXPECT_EQ(scalar_add(s(gf(7), 3), s(gf(7), 5)), s(gf(7), 1));
  EXPECT_EQ(scalar_add(q(1, 2), q(1, 3)), q(5, 6));
  for (auto f : all_fields()) {
    const Scalar a = s(f, 5);
    EXPECT_EQ(a + Scalar::zero(f), a);
  }
}

TEST(Scalar, MulExamples) {
  EXPECT_EQ(scalar_mul(s(gf(7), 3), s(gf(7), 5)), s(gf(7), 1));
  EXPECT_EQ(scalar_mul(q(2, 3), q(3, 4)), q(1, 2));
  EXPECT_EQ(scalar_mul(q(2, 3), q(3, 4)).to_string(), "1/2");
  for (auto f : all_fields()) EXPECT_EQ(s(f, 6) * Scalar::one(f), s(f, 6));
}

TEST(Scalar, InverseMatchesBruteForce) {
  const auto expected = oracle::brute_inverse(3, 7);
  ASSERT_TRUE(expected);
  EXPECT_EQ(*expected, 5);
  EXPECT_EQ(scalar_inv(s(gf(7), 3)), s(gf(7), *expected));
  EXPECT_EQ(scalar_inv(q(2, 3)), q(3, 2));
  for (auto f : all_fields()) EXPECT_EQ(scalar_inv(Scalar::one(f)), Scalar::one(f));

  for (std::int64_t a = 1; a < 97; ++a) {
    EXPECT_EQ(scalar_inv(s(gf(97), a)), s(gf(97), *oracle::brute_inverse(a, 97)));
  }
}

TEST(Scalar, InverseOfZeroThrows) {
  for (auto f : all_fields()) {
    try {
      (void)scalar_inv(Scalar::zero(f));
      FAIL() << "expected DivisionByZero";
    } catch (const Error& e) {
      EXPECT_EQ(e.kind(), ErrorKind::DivisionByZero);
    }
  }
}

TEST(Scalar, FieldMismatchIsReported) {
  try {
    (void)(s(gf(7), 1) + s(gf(5), 1));
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::FieldMismatch);
  }
  EXPECT_THROW((void)(s(gf(7), 1) * q(1, 2)), Error);
}

TEST(Scalar, RationalsAreCanonical) {
  const Scalar a = Scalar::rational(qq(), 6, -4);
  EXPECT_EQ(a.numerator(), -3);
  EXPECT_EQ(a.denominator(), 2);
  EXPECT_EQ(a.to_string(), "-3/2");
  EXPECT_EQ(Scalar::rational(qq(), 0, 5).to_string(), "0");
  EXPECT_EQ(Scalar::rational(qq(), 0, 5).denominator(), 1);
  EXPECT_EQ(Scalar::parse(qq(), "10/4"), q(5, 2));
  EXPECT_EQ(Scalar::parse(qq(), "-7"), q(-7, 1));
  EXPECT_EQ(Scalar::parse(qq(), Scalar::parse(qq(), "-12/18").to_string()), Scalar::parse(qq(), "-12/18"));
  EXPECT_THROW(Scalar::parse(qq(), "1/0"), Error);
  EXPECT_THROW(Scalar::parse(qq(), "1.5"), Error);
  EXPECT_THROW(Scalar::parse(gf(7), "7"), Error);
  EXPECT_THROW(Scalar::parse(gf(7), "-1"), Error);
  EXPECT_EQ(Scalar::parse(gf(7), "6"), s(gf(7), 6));
}

TEST(Scalar, RationalsAreArbitraryPrecision) {
  Scalar big = Scalar::one(qq());
  const Scalar ten = s(qq(), 10);
  for (int k = 0; k < 40; ++k) big *= ten;
  EXPECT_EQ(big.to_string(), "1" + std::string(40, '0'));
  EXPECT_EQ(big * big.inverse(), Scalar::one(qq()));
}

TEST(ScalarProperty, FieldAxiomsOnRandomTriples) {
  for (auto f : all_fields()) {
    Rng rng(split_seed(7, f.modulus(), 0));
    for (int t = 0; t < 500; ++t) {
      const Scalar a = random_scalar(rng, f);
      const Scalar b = random_scalar(rng, f);
      const Scalar c = random_scalar(rng, f);
      ASSERT_EQ((a + b) + c, a + (b + c));
      ASSERT_EQ((a * b) * c, a * (b * c));
      ASSERT_EQ(a + b, b + a);
      ASSERT_EQ(a * b, b * a);
      ASSERT_EQ(a * (b + c), a * b + a * c);
      ASSERT_EQ(a + (-a), Scalar::zero(f));
      if (!a.is_zero()) {
        ASSERT_EQ(a * a.inverse(), Scalar::one(f));
      }
      // canonical text form round-trips
      ASSERT_EQ(Scalar::parse(f, a.to_string()), a);
    }
  }
}

TEST(Gauss, IdentitySystem) {
  const auto f = gf(2);
  DenseMatrix a(f, 2, 2);
  a.at(0, 0) = s(f, 1);
  a.at(1, 1) = s(f, 1);
  const auto x = gauss_solve(a, dense(f, {1, 0}));
  ASSERT_TRUE(x);
  EXPECT_EQ(*x, dense(f, {1, 0}));
}

TEST(Gauss, UpperTriangularMatchesBackSubstitution) {
  const auto f = gf(3);
  const std::vector<std::vector<std::int64_t>> upper{{1, 1}, {0, 1}};
  const auto expected = oracle::back_substitute(upper, {2, 1}, 3);
  EXPECT_EQ(expected, (std::vector<std::int64_t>{1, 1}));

  DenseMatrix a(f, 2, 2);
  for (std::size_t r = 0; r < 2; ++r) {
    for (std::size_t c = 0; c < 2; ++c) a.at(r, c) = s(f, upper[r][c]);
  }
  const auto x = gauss_solve(a, dense(f, {2, 1}));
  ASSERT_TRUE(x);
  EXPECT_EQ(*x, dense(f, {expected[0], expected[1]}));
}

TEST(Gauss, InconsistentSystem) {
  const auto f = gf(5);
  DenseMatrix a(f, 2, 2);
  EXPECT_FALSE(gauss_solve(a, dense(f, {1, 0})));
  EXPECT_EQ(rank(a), 0u);
}

TEST(Gauss, Errors) {
  const auto f = gf(5);
  DenseMatrix a(f, 2, 2);
  EXPECT_THROW(gauss_solve(a, dense(f, {1})), Error);
  EXPECT_THROW(gauss_solve(a, dense(gf(7), {1, 0})), Error);
  EXPECT_THROW(a.set(0, 0, s(gf(7), 1)), Error);
}

TEST(GaussProperty, SolutionsVerifyAndRankMatchesOracle) {
  for (std::int64_t p : {2, 3, 7}) {
    const auto f = gf(static_cast<std::uint64_t>(p));
    Rng rng(split_seed(11, static_cast<std::uint64_t>(p), 0));
    for (int t = 0; t < 300; ++t) {
      const std::size_t r = rng.between(0, 6);
      const std::size_t c = rng.between(0, 6);
      DenseMatrix a(f, r, c);
      std::vector<std::vector<std::int64_t>> ints(r, std::vector<std::int64_t>(c));
      for (std::size_t i = 0; i < r; ++i) {
        for (std::size_t k = 0; k < c; ++k) {
          ints[i][k] = static_cast<std::int64_t>(rng.below(static_cast<std::size_t>(p)));
          a.at(i, k) = s(f, ints[i][k]);
        }
      }
      ASSERT_EQ(rank(a), oracle::rank_mod(ints, p));
      DenseVec b;
      for (std::size_t i = 0; i < r; ++i) b.push_back(random_scalar(rng, f));
      const auto x = gauss_solve(a, b);
      if (x) {
        ASSERT_EQ(a.multiply(*x), b);
      } else {
        DenseMatrix aug(f, r, c + 1);
        for (std::size_t i = 0; i < r; ++i) {
          for (std::size_t k = 0; k < c; ++k) aug.at(i, k) = a.at(i, k);
          aug.at(i, c) = b[i];
        }
        ASSERT_GT(rank(aug), rank(a));
      }
    }
  }
}

TEST(GaussProperty, RationalSolutionsVerify) {
  const auto f = qq();
  Rng rng(99);
  for (int t = 0; t < 100; ++t) {
    const std::size_t n = rng.between(1, 5);
    DenseMatrix a(f, n, n);
    for (std::size_t i = 0; i < n; ++i) {
      for (std::size_t k = 0; k < n; ++k) a.at(i, k) = random_scalar(rng, f);
    }
    DenseVec b;
    for (std::size_t i = 0; i < n; ++i) b.push_back(random_scalar(rng, f));
    if (auto x = gauss_solve(a, b)) {
      ASSERT_EQ(a.multiply(*x), b);
    }
  }
}
