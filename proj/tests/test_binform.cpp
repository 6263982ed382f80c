#include "unitred/binform.hpp"

#include "oracles.hpp"

#include <gtest/gtest.h>

#include <random>

using namespace unitred;

namespace {

IntPair v(long x, long y) { return {Int(x), Int(y)}; }

BinaryForm random_form(std::mt19937_64& rng) {
  std::uniform_int_distribution<long> num(-40, 40);
  std::uniform_int_distribution<long> den(1, 6);
  for (;;) {
    BinaryForm f{Rat(num(rng), den(rng)), Rat(num(rng), den(rng)), Rat(num(rng), den(rng))};
    f.f11.canonicalize();
    f.f12.canonicalize();
    f.f22.canonicalize();
    if (f.is_positive_definite()) return f;
  }
}

}  // namespace

TEST(TraceForm, Examples) {
  QuadField F7(7), F2(2), F5(5);
  EXPECT_EQ(trace_form(QuadElem(Rat(42), Rat(15)), F7), (BinaryForm{42, 210, 294}));
  EXPECT_EQ(trace_form(QuadElem(1), F2), (BinaryForm{1, 0, 2}));
  EXPECT_EQ(trace_form(QuadElem(1), F5), (BinaryForm{1, 1, Rat(3, 2)}));
  EXPECT_THROW(trace_form(QuadElem(Rat(1), Rat(-1)), F2), std::invalid_argument);
}

TEST(TraceForm, HalvesTheTrace) {
  std::mt19937_64 rng(11);
  std::uniform_int_distribution<long> c(-9, 9);
  for (std::int64_t d : {2, 3, 5, 7, 13, 21}) {
    QuadField F(d);
    const QuadElem a = F.unit_squared() + QuadElem(3);
    const BinaryForm g = trace_form(a, F);
    for (int i = 0; i < 50; ++i) {
      const long x1 = c(rng), x2 = c(rng);
      const QuadElem x = F.from_basis(x1, x2);
      EXPECT_EQ(trace(F.mul(a, F.sqr(x))), 2 * g(Int(x1), Int(x2)));
    }
  }
}

TEST(GaussReduce, Examples) {
  const auto [g1, U1] = gauss_reduce(BinaryForm{1, 0, 2});
  EXPECT_EQ(g1, (BinaryForm{1, 0, 2}));
  EXPECT_EQ(U1, UniTransform{});

  const auto [g2, U2] = gauss_reduce(BinaryForm{42, 210, 294});
  EXPECT_TRUE(g2.is_reduced());
  EXPECT_EQ(g2.f11, 42);

  const auto [g3, U3] = gauss_reduce(BinaryForm{5, 9, 5});
  EXPECT_EQ(g3, (BinaryForm{1, 1, 5}));
  EXPECT_EQ(compose(BinaryForm{5, 9, 5}, U3), g3);

  EXPECT_THROW(gauss_reduce(BinaryForm{1, 3, 1}), std::invalid_argument);
}

TEST(GaussReduce, RandomFormsAreReducedAndEquivalent) {
  std::mt19937_64 rng(3);
  for (int i = 0; i < 1000; ++i) {
    const BinaryForm f = random_form(rng);
    const auto [g, U] = gauss_reduce(f);
    EXPECT_TRUE(g.is_reduced());
    EXPECT_EQ(abs(U.det()), 1);
    EXPECT_EQ(compose(f, U), g);
    EXPECT_EQ(g.discriminant(), f.discriminant());
  }
}

TEST(MinAndVectors, Examples) {
  const BinaryMinimum a = min_and_vectors(BinaryForm{1, 0, 2});
  EXPECT_EQ(a.value, 1);
  EXPECT_EQ(a.vectors, (std::vector<IntPair>{v(1, 0)}));

  // Hexagonal: three pairs, including (2, -1) next to (1, 0) and (3, -1).
  const BinaryMinimum b = min_and_vectors(BinaryForm{42, 210, 294});
  EXPECT_EQ(b.value, 42);
  EXPECT_EQ(b.vectors, (std::vector<IntPair>{v(1, 0), v(2, -1), v(3, -1)}));

  const BinaryMinimum c = min_and_vectors(BinaryForm{2, 2, 3});
  EXPECT_EQ(c.value, 2);
  EXPECT_EQ(c.vectors, (std::vector<IntPair>{v(1, 0)}));

  const BinaryMinimum d = min_and_vectors(BinaryForm{1, 1, 1});
  EXPECT_EQ(d.vectors, (std::vector<IntPair>{v(0, 1), v(1, -1), v(1, 0)}));
}

TEST(MinAndVectors, ReducedFormsAttainMinimumAtFirstBasisVector) {
  std::mt19937_64 rng(5);
  for (int i = 0; i < 1000; ++i) {
    const BinaryForm g = gauss_reduce(random_form(rng)).first;
    const BinaryMinimum m = min_and_vectors(g);
    EXPECT_EQ(m.value, g.f11);
    EXPECT_EQ(g(Int(1), Int(0)), m.value);
  }
}

TEST(MinAndVectors, InvariantUnderUnimodularChange) {
  std::mt19937_64 rng(9);
  std::uniform_int_distribution<long> e(-4, 4);
  for (int i = 0; i < 300; ++i) {
    const BinaryForm f = random_form(rng);
    UniTransform U{e(rng), e(rng), e(rng), e(rng)};
    if (abs(U.det()) != 1) continue;
    const BinaryMinimum mf = min_and_vectors(f);
    const BinaryMinimum mg = min_and_vectors(compose(f, U));
    EXPECT_EQ(mf.value, mg.value);
    std::vector<IntPair> moved;
    for (const IntPair& w : mg.vectors) moved.push_back(canonical_sign(U.apply(w)));
    std::sort(moved.begin(), moved.end(), lex_less);
    EXPECT_EQ(moved, mf.vectors);
  }
}

TEST(MinAndVectors, MatchesExhaustiveSearch) {
  std::mt19937_64 rng(13);
  int certified = 0;
  for (int i = 0; i < 400; ++i) {
    const BinaryForm f = random_form(rng);
    const BinaryMinimum box = oracle::box_binary_min(f);
    if (!oracle::box_certifies(f, box.value)) continue;
    ++certified;
    const BinaryMinimum m = min_and_vectors(f);
    EXPECT_EQ(m.value, box.value);
    EXPECT_EQ(m.vectors, box.vectors);
  }
  EXPECT_GT(certified, 300);
}

TEST(ShortVectors, ListsEverythingBelowTheBound) {
  const BinaryForm f{3, 1, 4};
  const auto sv = short_vectors(f, Rat(20));
  const BinaryMinimum box = oracle::box_binary_min(f, 10);
  std::size_t expected = 0;
  for (int y = 0; y <= 10; ++y) {
    for (int x = -10; x <= 10; ++x) {
      if ((y > 0 || x > 0) && f(Int(x), Int(y)) <= 20) ++expected;
    }
  }
  EXPECT_EQ(sv.size(), expected);
  EXPECT_EQ(box.value, 3);
}
