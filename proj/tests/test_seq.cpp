#include <gtest/gtest.h>

#include "oracle.hpp"
#include "test_helpers.hpp"

using namespace dualspace;
using namespace testing_helpers;

namespace {

const Dim w = Dim::omega();

ErrorKind kind_of(const std::function<void()>& f) {
  try {
    f();
  } catch (const Error& e) {
    return e.kind();
  }
  ADD_FAILURE() << "no error raised";
  return ErrorKind::InvalidArgument;
}

}  // namespace

TEST(Dim, ParseAndContains) {
  EXPECT_EQ(Dim::parse("omega"), w);
  EXPECT_EQ(Dim::parse("12"), Dim::finite(12));
  EXPECT_THROW(Dim::parse("-1"), Error);
  EXPECT_TRUE(w.contains(1'000'000));
  EXPECT_FALSE(Dim::finite(3).contains(3));
  EXPECT_TRUE(Dim::finite(3).fits_in(w));
  EXPECT_FALSE(w.fits_in(Dim::finite(3)));
}

TEST(FinSuppVec, AddExamples) {
  const auto f = gf(2);
  const auto d0 = FinSuppVec::basis(f, w, 0);
  EXPECT_TRUE(vec_add(d0, d0).is_zero());
  const auto sum = vec_add(d0, FinSuppVec::basis(f, w, 1));
  ASSERT_EQ(sum.entries().size(), 2u);
  EXPECT_EQ(sum.entries().begin()->first, 0u);
  EXPECT_EQ(sum.entries().rbegin()->first, 1u);
}

TEST(FinSuppVec, ScaleExamples) {
  const auto f = gf(7);
  const auto u = sparse(f, w, {{1, 4}, {5, 2}});
  EXPECT_TRUE(vec_scale(Scalar::zero(f), u).is_zero());
  EXPECT_EQ(vec_scale(Scalar::one(f), u), u);
  const auto v = vec_scale(s(f, 3), FinSuppVec::basis(f, w, 2));
  EXPECT_EQ(v.entries().size(), 1u);
  EXPECT_EQ(v.get(2), s(f, 3));
}

TEST(FinSuppVec, StoresNoZerosAndChecksIndices) {
  const auto f = gf(5);
  const auto v = sparse(f, Dim::finite(4), {{0, 0}, {3, 5}, {2, 1}});
  EXPECT_EQ(v.entries().size(), 1u);
  EXPECT_EQ(kind_of([&] { sparse(f, Dim::finite(4), {{4, 1}}); }), ErrorKind::IndexOutOfRange);
  EXPECT_EQ(kind_of([&] { (void)v.get(4); }), ErrorKind::IndexOutOfRange);
}

TEST(FinSuppVec, MismatchErrors) {
  EXPECT_EQ(kind_of([] { vec_add(FinSuppVec::basis(gf(2), w, 0), FinSuppVec::basis(gf(3), w, 0)); }),
            ErrorKind::FieldMismatch);
  EXPECT_EQ(kind_of([] { vec_add(FinSuppVec::basis(gf(2), w, 0), FinSuppVec::basis(gf(2), Dim::finite(3), 0)); }),
            ErrorKind::DimensionMismatch);
}

TEST(ProdVec, AddPeriodicTailsMatchesCoordinateOracle) {
  const auto f = qq();
  const auto u = prodvec(f, w, {1}, {2});
  const auto v = prodvec(f, w, {}, {1});
  const auto sum = vec_add(u, v);
  for (std::size_t i = 0; i < 16; ++i) {
    EXPECT_EQ(sum.get(i), s(f, oracle::unrolled({1}, {2}, i) + oracle::unrolled({}, {1}, i))) << i;
  }
  EXPECT_EQ(sum.prefix(), dense(f, {2}));
  EXPECT_EQ(std::get<RepeatTail>(sum.tail()).block, dense(f, {3}));
}

TEST(ProdVec, AddAlignsDifferentPeriods) {
  const auto f = gf(97);
  const auto u = prodvec(f, w, {5, 6, 7}, {1, 2});
  const auto v = prodvec(f, w, {9}, {10, 20, 30});
  const auto sum = vec_add(u, v);
  for (std::size_t i = 0; i < 40; ++i) {
    EXPECT_EQ(sum.get(i), s(f, oracle::unrolled({5, 6, 7}, {1, 2}, i) + oracle::unrolled({9}, {10, 20, 30}, i)));
  }
  EXPECT_LE(sum.period(), 6u);
}

TEST(ProdVec, ScaleExamples) {
  const auto f = gf(7);
  const auto y = prodvec(f, w, {1, 2}, {3, 4});
  EXPECT_TRUE(vec_scale(Scalar::zero(f), y).is_zero());
  EXPECT_EQ(vec_scale(Scalar::one(f), y), y);
  const auto z = vec_scale(s(f, 3), y);
  for (std::size_t i = 0; i < 12; ++i) EXPECT_EQ(z.get(i), s(f, 3 * oracle::unrolled({1, 2}, {3, 4}, i)));
}

TEST(ProdVec, GetExamples) {
  const auto f = gf(97);
  EXPECT_EQ(prod_get(prodvec(f, w, {5, 6}), 1), s(f, 6));
  EXPECT_EQ(prod_get(prodvec(f, w, {}, {1, 2}), 3), s(f, oracle::unrolled({}, {1, 2}, 3)));
  EXPECT_EQ(prod_get(prodvec(f, w, {}, {1, 2}), 3), s(f, 2));
  EXPECT_TRUE(prod_get(prodvec(f, w, {5, 6}), 1000).is_zero());
  EXPECT_EQ(kind_of([&] { (void)prodvec(f, Dim::finite(2), {5, 6}).get(2); }), ErrorKind::IndexOutOfRange);
}

TEST(ProdVec, FiniteDimensionInvariants) {
  const auto f = gf(5);
  EXPECT_THROW(prodvec(f, Dim::finite(3), {1}, {2}), Error);
  EXPECT_EQ(kind_of([&] { prodvec(f, Dim::finite(2), {1, 2, 3}); }), ErrorKind::DimensionMismatch);
  // trailing zeros do not count against the dimension
  EXPECT_NO_THROW(prodvec(f, Dim::finite(2), {1, 2, 0, 0}));
  EXPECT_THROW(ProdVec::make(f, w, {}, RepeatTail{}), Error);
}

TEST(ProdVec, CanonicalForm) {
  const auto f = gf(7);
  const auto y = prodvec(f, w, {3, 1, 2, 1, 2}, {1, 2, 1, 2});
  EXPECT_EQ(y.prefix(), dense(f, {3}));
  EXPECT_EQ(std::get<RepeatTail>(y.tail()).block, dense(f, {1, 2}));
  EXPECT_TRUE(prodvec(f, w, {0, 0}, {0, 0}).is_zero());
  EXPECT_EQ(prodvec(f, w, {4, 0, 0}), prodvec(f, w, {4}));
}

TEST(Pair, Examples) {
  const auto f = gf(7);
  const auto y = prodvec(f, w, {1, 4}, {2, 5});
  for (std::size_t i = 0; i < 10; ++i) EXPECT_EQ(pair(FinSuppVec::basis(f, w, i), y), y.get(i));
  EXPECT_TRUE(pair(FinSuppVec(f, w), y).is_zero());
  // 2*1 + 3*1 = 5
  EXPECT_EQ(pair(sparse(f, w, {{0, 2}, {2, 3}}), prodvec(f, w, {1, 1, 1})), s(f, 5));
}

TEST(Pair, Errors) {
  EXPECT_EQ(kind_of([] { pair(FinSuppVec::basis(gf(2), w, 0), ProdVec::zero(gf(3), w)); }), ErrorKind::FieldMismatch);
  EXPECT_EQ(kind_of([] { pair(FinSuppVec::basis(gf(2), w, 0), ProdVec::zero(gf(2), Dim::finite(4))); }),
            ErrorKind::DimensionMismatch);
}

TEST(VecEq, Examples) {
  const auto f = qq();
  EXPECT_TRUE(vec_eq(prodvec(f, w, {0}), prodvec(f, w, {})));
  // coordinate oracle up to the bound |p_u| + |p_v| + lcm = 0 + 1 + 2
  for (std::size_t i = 0; i < 3; ++i) {
    EXPECT_EQ(oracle::unrolled({}, {1, 1}, i), oracle::unrolled({1}, {1}, i));
  }
  EXPECT_TRUE(vec_eq(prodvec(f, w, {}, {1, 1}), prodvec(f, w, {1}, {1})));
  EXPECT_FALSE(vec_eq(FinSuppVec::basis(f, w, 0), FinSuppVec::basis(f, w, 1)));
  EXPECT_FALSE(vec_eq(ProdVec::embed(FinSuppVec::basis(f, w, 0)), ProdVec::embed(FinSuppVec::basis(f, w, 1))));
}

TEST(VecEq, DifferenceOnlyBeyondPrefix) {
  const auto f = gf(97);
  EXPECT_FALSE(vec_eq(prodvec(f, w, {1, 2, 3}, {4, 5}), prodvec(f, w, {1, 2, 3}, {4, 6})));
  EXPECT_FALSE(vec_eq(prodvec(f, w, {1, 2, 3}, {4}), prodvec(f, w, {1, 2, 3})));
}

TEST(SeqProperty, PairIsBilinear) {
  for (auto f : all_fields()) {
    Rng rng(split_seed(3, f.modulus(), 1));
    for (int t = 0; t < 300; ++t) {
      const Dim d = rng.chance(1, 2) ? w : random_finite_dim(rng, 0, 20);
      const auto x = random_finsupp(rng, f, d);
      const auto x2 = random_finsupp(rng, f, d);
      const auto y = random_prodvec(rng, f, d);
      const auto y2 = random_prodvec(rng, f, d);
      const Scalar c = random_scalar(rng, f);
      ASSERT_EQ(pair(vec_add(x, x2), y), pair(x, y) + pair(x2, y));
      ASSERT_EQ(pair(vec_scale(c, x), y), c * pair(x, y));
      ASSERT_EQ(pair(x, vec_add(y, y2)), pair(x, y) + pair(x, y2));
      ASSERT_EQ(pair(x, vec_scale(c, y)), c * pair(x, y));
    }
  }
}

TEST(SeqProperty, EmbedPairsAsDotProduct) {
  for (auto f : all_fields()) {
    Rng rng(split_seed(3, f.modulus(), 2));
    for (int t = 0; t < 200; ++t) {
      const auto x = random_finsupp(rng, f, w);
      const auto x2 = random_finsupp(rng, f, w);
      Scalar dot = Scalar::zero(f);
      for (const auto& [i, v] : x.entries()) dot += v * x2.get(i);
      ASSERT_EQ(pair(x, ProdVec::embed(x2)), dot);
    }
  }
}

TEST(SeqProperty, EqualityAgreesWithCoordinatesAndStructure) {
  for (auto f : {gf(2), gf(7), qq()}) {
    Rng rng(split_seed(3, f.modulus(), 3));
    GenLimits lim;
    lim.max_prefix = 3;
    lim.max_period = 3;
    for (int t = 0; t < 400; ++t) {
      const auto u = random_prodvec(rng, f, w, lim);
      const auto v = random_prodvec(rng, f, w, lim);
      bool coords_equal = true;
      for (std::size_t i = 0; i < 200; ++i) coords_equal = coords_equal && u.get(i) == v.get(i);
      ASSERT_EQ(vec_eq(u, v), coords_equal);
      ASSERT_EQ(vec_eq(u, v), u == v);  // canonical forms are unique
      ASSERT_TRUE(vec_eq(vec_sub(vec_add(u, v), v), u));
    }
  }
}
