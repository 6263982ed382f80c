#pragma once

// Exact shortest vectors of positive definite rational quadratic forms in a
// few variables. The Gram matrix is LLL-reduced over Q first, then the
// Fincke-Pohst recursion enumerates every vector below the bound.

#include "unitred/rational.hpp"

#include <algorithm>
#include <cstddef>
#include <stdexcept>
#include <utility>
#include <vector>

namespace unitred {

using RatMatrix = std::vector<std::vector<Rat>>;
using IntVector = std::vector<Int>;
using IntMatrix = std::vector<IntVector>;

inline Rat quadratic_value(const RatMatrix& G, const IntVector& x) {
  Rat s = 0;
  const std::size_t n = G.size();
  for (std::size_t i = 0; i < n; ++i) {
    if (x[i] == 0) continue;
    Rat row = 0;
    for (std::size_t j = 0; j < n; ++j) row += G[i][j] * Rat(x[j]);
    s += Rat(x[i]) * row;
  }
  return s;
}

// Sign convention: first nonzero coordinate positive.
inline IntVector canonical_sign(IntVector v) {
  for (const Int& c : v) {
    if (c == 0) continue;
    if (c < 0) {
      for (Int& e : v) e = -e;
    }
    break;
  }
  return v;
}

namespace detail {

// Upper-triangular decomposition Q(x) = sum_i q[i][i] (x_i + sum_{j>i} q[i][j] x_j)^2.
inline RatMatrix fincke_pohst_coefficients(const RatMatrix& G) {
  const std::size_t n = G.size();
  RatMatrix q = G;
  for (std::size_t i = 0; i < n; ++i) {
    if (q[i][i] <= 0) throw std::invalid_argument("Gram matrix is not positive definite");
    for (std::size_t j = i + 1; j < n; ++j) {
      q[j][i] = q[i][j];
      q[i][j] /= q[i][i];
    }
    for (std::size_t k = i + 1; k < n; ++k) {
      for (std::size_t l = k; l < n; ++l) q[k][l] -= q[k][i] * q[i][l];
    }
  }
  return q;
}

// Gram matrix of the basis U (columns) under G: U^T G U.
inline RatMatrix transform_gram(const RatMatrix& G, const IntMatrix& U) {
  const std::size_t n = G.size();
  RatMatrix out(n, std::vector<Rat>(n, Rat(0)));
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      Rat s = 0;
      for (std::size_t k = 0; k < n; ++k) {
        if (U[k][i] == 0) continue;
        for (std::size_t l = 0; l < n; ++l) {
          if (U[l][j] != 0) s += Rat(U[k][i]) * G[k][l] * Rat(U[l][j]);
        }
      }
      out[i][j] = s;
    }
  }
  return out;
}

// LLL with delta = 3/4 on the Gram matrix; returns the unimodular change of
// basis U (columns are the new basis vectors in old coordinates).
inline IntMatrix lll_gram(const RatMatrix& G0) {
  const std::size_t n = G0.size();
  IntMatrix U(n, IntVector(n, Int(0)));
  for (std::size_t i = 0; i < n; ++i) U[i][i] = 1;
  if (n < 2) return U;
  const Rat delta(3, 4);
  RatMatrix G = G0;

  auto gram_schmidt = [&](RatMatrix& mu, std::vector<Rat>& B) {
    mu.assign(n, std::vector<Rat>(n, Rat(0)));
    B.assign(n, Rat(0));
    for (std::size_t i = 0; i < n; ++i) {
      for (std::size_t j = 0; j < i; ++j) {
        Rat s = G[i][j];
        for (std::size_t k = 0; k < j; ++k) s -= mu[j][k] * mu[i][k] * B[k];
        mu[i][j] = s / B[j];
      }
      Rat s = G[i][i];
      for (std::size_t k = 0; k < i; ++k) s -= mu[i][k] * mu[i][k] * B[k];
      if (s <= 0) throw std::invalid_argument("Gram matrix is not positive definite");
      B[i] = s;
    }
  };
  // b_k <- b_k - r b_j
  auto add_multiple = [&](std::size_t k, std::size_t j, const Int& r) {
    const Rat rr(r);
    for (std::size_t i = 0; i < n; ++i) U[i][k] -= r * U[i][j];
    const Rat gkk = G[k][k] - 2 * rr * G[j][k] + rr * rr * G[j][j];
    for (std::size_t i = 0; i < n; ++i) {
      if (i != k) {
        G[k][i] -= rr * G[j][i];
        G[i][k] = G[k][i];
      }
    }
    G[k][k] = gkk;
  };
  auto swap_vectors = [&](std::size_t a, std::size_t b) {
    for (std::size_t i = 0; i < n; ++i) std::swap(U[i][a], U[i][b]);
    std::swap(G[a], G[b]);
    for (std::size_t i = 0; i < n; ++i) std::swap(G[i][a], G[i][b]);
  };

  RatMatrix mu;
  std::vector<Rat> B;
  std::size_t k = 1;
  for (int guard = 0; guard < 100000 && k < n; ++guard) {
    gram_schmidt(mu, B);
    for (std::size_t jj = k; jj-- > 0;) {
      const Int r = round_half_even(mu[k][jj]);
      if (r != 0) {
        add_multiple(k, jj, r);
        gram_schmidt(mu, B);
      }
    }
    if (B[k] >= (delta - mu[k][k - 1] * mu[k][k - 1]) * B[k - 1]) {
      ++k;
    } else {
      swap_vectors(k, k - 1);
      k = std::max<std::size_t>(k - 1, 1);
    }
  }
  if (k < n) throw std::runtime_error("LLL did not terminate");
  return U;
}

// Calls visit(x) for every integer x != 0 with Q(x) <= bound (both signs).
template <class Visit>
void enumerate_below(const RatMatrix& G, const Rat& bound, Visit&& visit) {
  const std::size_t n = G.size();
  const RatMatrix q = fincke_pohst_coefficients(G);
  IntVector x(n, Int(0));
  // remaining[i]: bound minus the contribution of coordinates i+1..n-1.
  std::vector<Rat> remaining(n + 1);
  remaining[n] = bound;
  auto centre = [&](std::size_t i) {
    Rat c = 0;
    for (std::size_t j = i + 1; j < n; ++j) c += q[i][j] * Rat(x[j]);
    return c;
  };
  auto recurse = [&](auto&& self, std::size_t level) -> void {
    const std::size_t i = level - 1;
    const Rat c = centre(i);
    const Rat room = remaining[level] / q[i][i];
    if (room < 0) return;
    const Int s = floor_sqrt(room) + 1;
    const Int lo = floor(Rat(-c)) - s;
    const Int hi = ceil(Rat(-c)) + s;
    for (Int v = lo; v <= hi; ++v) {
      const Rat shifted = Rat(v) + c;
      const Rat used = q[i][i] * shifted * shifted;
      if (used > remaining[level]) continue;
      x[i] = v;
      remaining[i] = remaining[level] - used;
      if (i == 0) {
        bool zero = true;
        for (const Int& e : x) zero = zero && e == 0;
        if (!zero) visit(static_cast<const IntVector&>(x));
      } else {
        self(self, i);
      }
    }
    x[i] = 0;
  };
  if (n > 0) recurse(recurse, n);
}

}  // namespace detail

struct LatticeMinimum {
  Rat value;
  std::vector<IntVector> vectors;  // one per +- pair, canonical sign, lexicographic
};

inline LatticeMinimum lattice_minimum(const RatMatrix& G) {
  const std::size_t n = G.size();
  if (n == 0) throw std::invalid_argument("lattice_minimum: empty Gram matrix");
  for (std::size_t i = 0; i < n; ++i) {
    if (G[i].size() != n) throw std::invalid_argument("lattice_minimum: Gram matrix not square");
    for (std::size_t j = 0; j < i; ++j) {
      if (G[i][j] != G[j][i]) throw std::invalid_argument("lattice_minimum: Gram matrix not symmetric");
    }
  }
  const IntMatrix U = detail::lll_gram(G);
  const RatMatrix R = detail::transform_gram(G, U);
  Rat bound = R[0][0];
  for (std::size_t i = 1; i < n; ++i) bound = std::min(bound, R[i][i]);

  LatticeMinimum out{bound, {}};
  std::vector<IntVector> found;
  detail::enumerate_below(R, bound, [&](const IntVector& y) {
    const Rat v = quadratic_value(R, y);
    if (v < out.value) {
      out.value = v;
      found.clear();
    }
    if (v == out.value) found.push_back(y);
  });
  for (const IntVector& y : found) {
    IntVector x(n, Int(0));
    for (std::size_t i = 0; i < n; ++i) {
      for (std::size_t j = 0; j < n; ++j) x[i] += U[i][j] * y[j];
    }
    out.vectors.push_back(canonical_sign(std::move(x)));
  }
  std::sort(out.vectors.begin(), out.vectors.end());
  out.vectors.erase(std::unique(out.vectors.begin(), out.vectors.end()), out.vectors.end());
  return out;
}

}  // namespace unitred
