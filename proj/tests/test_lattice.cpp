#include "unitred/lattice.hpp"

#include "oracles.hpp"

#include <gtest/gtest.h>

#include <random>

using namespace unitred;

namespace {

IntVector iv(std::initializer_list<long> xs) {
  IntVector out;
  for (long x : xs) out.emplace_back(x);
  return out;
}

// B^T D B with B unimodular-ish random and D positive diagonal: positive definite.
RatMatrix random_gram(std::mt19937_64& rng, std::size_t n) {
  std::uniform_int_distribution<long> e(-3, 3);
  std::uniform_int_distribution<long> dn(1, 20);
  std::uniform_int_distribution<long> dd(1, 4);
  for (;;) {
    std::vector<std::vector<long>> B(n, std::vector<long>(n));
    for (auto& row : B) {
      for (long& x : row) x = e(rng);
    }
    std::vector<Rat> D(n);
    for (Rat& x : D) {
      x = Rat(dn(rng), dd(rng));
      x.canonicalize();
    }
    RatMatrix G(n, std::vector<Rat>(n, Rat(0)));
    for (std::size_t i = 0; i < n; ++i) {
      for (std::size_t j = 0; j < n; ++j) {
        for (std::size_t k = 0; k < n; ++k) G[i][j] += Rat(B[k][i]) * D[k] * Rat(B[k][j]);
      }
    }
    // Singular B gives a degenerate G, rejected by the decomposition.
    try {
      detail::fincke_pohst_coefficients(G);
      return G;
    } catch (const std::invalid_argument&) {
    }
  }
}

}  // namespace

TEST(LatticeMinimum, Identity) {
  const RatMatrix I{{1, 0, 0}, {0, 1, 0}, {0, 0, 1}};
  const LatticeMinimum m = lattice_minimum(I);
  EXPECT_EQ(m.value, 1);
  EXPECT_EQ(m.vectors, (std::vector<IntVector>{iv({0, 0, 1}), iv({0, 1, 0}), iv({1, 0, 0})}));
}

TEST(LatticeMinimum, A3HasSixPairs) {
  const RatMatrix A3{{2, -1, 0}, {-1, 2, -1}, {0, -1, 2}};
  const LatticeMinimum m = lattice_minimum(A3);
  EXPECT_EQ(m.value, 2);
  EXPECT_EQ(m.vectors.size(), 6u);
}

TEST(LatticeMinimum, SkewedBasis) {
  // Z^3 in the basis (1,0,0), (1000,1,0), (377,1000,1).
  const RatMatrix G{{1, 1000, 377}, {1000, 1000001, 378000}, {377, 378000, 1142130}};
  const LatticeMinimum m = lattice_minimum(G);
  EXPECT_EQ(m.value, 1);
  EXPECT_EQ(m.vectors.size(), 3u);
}

TEST(LatticeMinimum, Errors) {
  EXPECT_THROW(lattice_minimum(RatMatrix{}), std::invalid_argument);
  EXPECT_THROW(lattice_minimum(RatMatrix{{1, 2}, {2, 1}}), std::invalid_argument);
  EXPECT_THROW(lattice_minimum(RatMatrix{{1, 0}, {1, 1}}), std::invalid_argument);
}

TEST(LatticeMinimum, MatchesExhaustiveSearch) {
  std::mt19937_64 rng(21);
  int certified = 0;
  for (int i = 0; i < 150; ++i) {
    const std::size_t n = 2 + static_cast<std::size_t>(i % 2);
    const RatMatrix G = random_gram(rng, n);
    const int box = n == 2 ? 25 : 8;
    const LatticeMinimum ref = oracle::box_lattice_min(G, box);
    if (!oracle::box_certifies(G, ref.value, box)) continue;
    ++certified;
    const LatticeMinimum m = lattice_minimum(G);
    EXPECT_EQ(m.value, ref.value);
    EXPECT_EQ(m.vectors, ref.vectors);
  }
  EXPECT_GT(certified, 100);
}

TEST(Lll, ProducesUnimodularBasisWithSameLattice) {
  std::mt19937_64 rng(22);
  for (int i = 0; i < 50; ++i) {
    const RatMatrix G = random_gram(rng, 3);
    const IntMatrix U = detail::lll_gram(G);
    const Int det = U[0][0] * (U[1][1] * U[2][2] - U[1][2] * U[2][1]) -
                    U[0][1] * (U[1][0] * U[2][2] - U[1][2] * U[2][0]) +
                    U[0][2] * (U[1][0] * U[2][1] - U[1][1] * U[2][0]);
    EXPECT_EQ(abs(det), 1);
    const RatMatrix R = detail::transform_gram(G, U);
    EXPECT_EQ(lattice_minimum(R).value, lattice_minimum(G).value);
  }
}
