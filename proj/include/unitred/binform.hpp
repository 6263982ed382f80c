#pragma once

// Positive definite binary quadratic forms with rational coefficients
//   f(x, y) = f11*x^2 + f12*x*y + f22*y^2.

#include "unitred/qfield.hpp"
#include "unitred/rational.hpp"

#include <algorithm>
#include <array>
#include <stdexcept>
#include <utility>
#include <vector>

namespace unitred {

using IntPair = std::array<Int, 2>;

struct BinaryForm {
  Rat f11;
  Rat f12;
  Rat f22;

  Rat discriminant() const { return 4 * f11 * f22 - f12 * f12; }
  bool is_positive_definite() const { return f11 > 0 && discriminant() > 0; }
  bool is_reduced() const { return abs(f12) <= std::min(f11, f22); }

  Rat operator()(const Int& x, const Int& y) const {
    return f11 * Rat(x * x) + f12 * Rat(x * y) + f22 * Rat(y * y);
  }

  friend bool operator==(const BinaryForm&, const BinaryForm&) = default;
};

// Integer 2x2 matrix [[a, b], [c, d]] acting on column vectors.
struct UniTransform {
  Int a = 1, b = 0, c = 0, d = 1;

  Int det() const { return a * d - b * c; }
  IntPair apply(const IntPair& v) const { return {a * v[0] + b * v[1], c * v[0] + d * v[1]}; }
  friend UniTransform operator*(const UniTransform& l, const UniTransform& r) {
    return {l.a * r.a + l.b * r.c, l.a * r.b + l.b * r.d, l.c * r.a + l.d * r.c,
            l.c * r.b + l.d * r.d};
  }
  friend bool operator==(const UniTransform&, const UniTransform&) = default;
};

// (f o U)(v) = f(U v).
inline BinaryForm compose(const BinaryForm& f, const UniTransform& U) {
  const Rat a(U.a), b(U.b), c(U.c), d(U.d);
  return {f.f11 * a * a + f.f12 * a * c + f.f22 * c * c,
          2 * f.f11 * a * b + f.f12 * (a * d + b * c) + 2 * f.f22 * c * d,
          f.f11 * b * b + f.f12 * b * d + f.f22 * d * d};
}

// Half of the trace form: Tr(a * (x1 + x2*omega)^2) = 2 * g(x1, x2).
inline BinaryForm trace_form(const QuadElem& a, const QuadField& F) {
  if (!F.is_totally_positive(a)) throw std::invalid_argument("trace_form: a is not totally positive");
  const Rat d(F.d_int());
  if (!F.omega_is_half()) return {a.x1, 2 * d * a.x2, d * a.x1};
  return {a.x1, a.x1 + d * a.x2, (1 + d) / 4 * a.x1 + d / 2 * a.x2};
}

// Alternates x1 -> x1 - k*x2 (k nearest to f12/(2 f11), ties to even) with the
// swap (x1, x2) -> (-x2, x1) until |f12| <= f11 <= f22.
inline std::pair<BinaryForm, UniTransform> gauss_reduce(const BinaryForm& f) {
  if (!f.is_positive_definite()) throw std::invalid_argument("gauss_reduce: form is not positive definite");
  BinaryForm g = f;
  UniTransform U;
  for (;;) {
    const Int k = round_half_even(g.f12 / (2 * g.f11));
    if (k != 0) {
      const UniTransform shift{1, -k, 0, 1};
      g = compose(g, shift);
      U = U * shift;
    }
    if (g.f11 > g.f22) {
      const UniTransform swap{0, -1, 1, 0};
      g = compose(g, swap);
      U = U * swap;
      continue;
    }
    break;
  }
  return {g, U};
}

// Sign convention for reported vectors: first nonzero coordinate positive.
inline IntPair canonical_sign(IntPair v) {
  if (v[0] < 0 || (v[0] == 0 && v[1] < 0)) {
    v[0] = -v[0];
    v[1] = -v[1];
  }
  return v;
}

inline bool lex_less(const IntPair& a, const IntPair& b) {
  if (a[0] != b[0]) return a[0] < b[0];
  return a[1] < b[1];
}

// All nonzero integer vectors with f(v) <= bound, one per +- pair (canonical
// sign), sorted lexicographically.
inline std::vector<IntPair> short_vectors(const BinaryForm& f, const Rat& bound) {
  if (!f.is_positive_definite()) throw std::invalid_argument("short_vectors: form is not positive definite");
  std::vector<IntPair> out;
  if (bound <= 0) return out;
  const Rat delta = f.discriminant();
  // f = f11 (x + f12 y / (2 f11))^2 + delta/(4 f11) y^2
  const Int ymax = floor_sqrt(Rat(4 * f.f11 * bound / delta));
  for (Int y = 0; y <= ymax; ++y) {
    const Rat rest = bound - delta / (4 * f.f11) * Rat(y * y);
    if (rest < 0) continue;
    const Rat centre = -f.f12 * Rat(y) / (2 * f.f11);
    const Int width = floor_sqrt(Rat(rest / f.f11)) + 1;
    const Int lo = floor(centre) - width;
    const Int hi = ceil(centre) + width;
    for (Int x = lo; x <= hi; ++x) {
      if (x == 0 && y == 0) continue;
      if (y == 0 && x < 0) continue;
      if (f(x, y) <= bound) out.push_back(canonical_sign(IntPair{x, y}));
    }
  }
  std::sort(out.begin(), out.end(), lex_less);
  return out;
}

struct BinaryMinimum {
  Rat value;
  std::vector<IntPair> vectors;  // one per +- pair, canonical sign, lexicographic
};

inline BinaryMinimum min_and_vectors(const BinaryForm& f) {
  auto [g, U] = gauss_reduce(f);
  // For a reduced form the minimum is g.f11, attained at (1, 0).
  BinaryMinimum result{g.f11, {}};
  for (const IntPair& v : short_vectors(g, g.f11)) {
    if (g(v[0], v[1]) == g.f11) result.vectors.push_back(canonical_sign(U.apply(v)));
  }
  std::sort(result.vectors.begin(), result.vectors.end(), lex_less);
  return result;
}

}  // namespace unitred
