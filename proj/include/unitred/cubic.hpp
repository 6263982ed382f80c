#pragma once

// Simplest cubic fields K_t = Q(theta), theta a root of
//   P_t(x) = x^3 - t x^2 - (t+3) x - 1,  t >= 0.
//
// Elements are written c0 + c1*theta + c2*sigma2(theta) where sigma is the
// generator of the Galois group with sigma(theta) = sigma2(theta) =
// -(1+theta)/theta. Multiplication goes through the power basis using
// sigma2(theta) = (t+2) + t*theta - theta^2.

#include "unitred/lattice.hpp"
#include "unitred/rational.hpp"
#include "unitred/voronoi.hpp"

#include <algorithm>
#include <array>
#include <cstddef>
#include <cstdint>
#include <deque>
#include <map>
#include <optional>
#include <ostream>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace unitred {

struct CubicElem {
  Rat c0;
  Rat c1;
  Rat c2;

  CubicElem() = default;
  CubicElem(Rat a, Rat b, Rat c) : c0(std::move(a)), c1(std::move(b)), c2(std::move(c)) {}
  CubicElem(long a) : c0(a), c1(0), c2(0) {}  // NOLINT: integers embed implicitly

  bool is_zero() const { return c0 == 0 && c1 == 0 && c2 == 0; }

  friend bool operator==(const CubicElem& a, const CubicElem& b) {
    return a.c0 == b.c0 && a.c1 == b.c1 && a.c2 == b.c2;
  }
  friend CubicElem operator+(const CubicElem& a, const CubicElem& b) {
    return {a.c0 + b.c0, a.c1 + b.c1, a.c2 + b.c2};
  }
  friend CubicElem operator-(const CubicElem& a, const CubicElem& b) {
    return {a.c0 - b.c0, a.c1 - b.c1, a.c2 - b.c2};
  }
  friend CubicElem operator-(const CubicElem& a) { return {-a.c0, -a.c1, -a.c2}; }
  friend CubicElem operator*(const Rat& s, const CubicElem& a) {
    return {s * a.c0, s * a.c1, s * a.c2};
  }
};

inline std::string to_string(const CubicElem& a) {
  return to_fraction_string(a.c0) + " + " + to_fraction_string(a.c1) + "*theta + " +
         to_fraction_string(a.c2) + "*sigma2(theta)";
}

inline std::ostream& operator<<(std::ostream& os, const CubicElem& a) { return os << to_string(a); }

class SimplestCubicField {
 public:
  explicit SimplestCubicField(std::int64_t t) : t_(t) {
    if (t < 0) throw std::invalid_argument("SimplestCubicField: t must be >= 0");
    const Int T(static_cast<long>(t));
    delta_root_ = T * T + 3 * T + 9;
  }

  std::int64_t t() const { return t_; }
  Int t_int() const { return Int(static_cast<long>(t_)); }
  // t^2 + 3t + 9; disc(P_t) is its square.
  const Int& delta_root() const { return delta_root_; }

  CubicElem theta() const { return {0, 1, 0}; }
  CubicElem sigma2_theta() const { return {0, 0, 1}; }
  CubicElem sigma3_theta() const { return sigma(sigma2_theta()); }
  std::array<CubicElem, 3> basis() const { return {CubicElem(1), theta(), sigma2_theta()}; }

  CubicElem from_power_basis(const Rat& p0, const Rat& p1, const Rat& p2) const {
    const Rat T(t_int());
    return {p0 + (T + 2) * p2, p1 + T * p2, -p2};
  }

  CubicElem mul(const CubicElem& a, const CubicElem& b) const {
    const Rat T(t_int());
    const std::array<Rat, 3> x{a.c0 + (T + 2) * a.c2, a.c1 + T * a.c2, -a.c2};
    const std::array<Rat, 3> y{b.c0 + (T + 2) * b.c2, b.c1 + T * b.c2, -b.c2};
    std::array<Rat, 5> p{0, 0, 0, 0, 0};
    for (std::size_t i = 0; i < 3; ++i) {
      for (std::size_t j = 0; j < 3; ++j) p[i + j] += x[i] * y[j];
    }
    // theta^3 = t theta^2 + (t+3) theta + 1
    // theta^4 = (t^2+t+3) theta^2 + (t^2+3t+1) theta + t
    const Rat q0 = p[0] + p[3] + T * p[4];
    const Rat q1 = p[1] + (T + 3) * p[3] + (T * T + 3 * T + 1) * p[4];
    const Rat q2 = p[2] + T * p[3] + (T * T + T + 3) * p[4];
    return from_power_basis(q0, q1, q2);
  }
  CubicElem sqr(const CubicElem& a) const { return mul(a, a); }

  // theta -> sigma2(theta) -> sigma3(theta) = t - theta - sigma2(theta).
  CubicElem sigma(const CubicElem& a) const {
    const Rat T(t_int());
    return {a.c0 + T * a.c2, -a.c2, a.c1 - a.c2};
  }

  Rat trace(const CubicElem& a) const {
    const Rat T(t_int());
    return 3 * a.c0 + T * (a.c1 + a.c2);
  }

  Rat norm(const CubicElem& a) const {
    const CubicElem s1 = sigma(a);
    const CubicElem s2 = sigma(s1);
    return mul(mul(a, s1), s2).c0;
  }

  CubicElem inverse(const CubicElem& a) const {
    if (a.is_zero()) throw std::domain_error("inverse of zero in a cubic field");
    const CubicElem s1 = sigma(a);
    const CubicElem s2 = sigma(s1);
    return Rat(1 / norm(a)) * mul(s1, s2);
  }

  CubicElem pow(const CubicElem& a, long e) const {
    CubicElem base = e < 0 ? inverse(a) : a;
    unsigned long k = e < 0 ? static_cast<unsigned long>(-e) : static_cast<unsigned long>(e);
    CubicElem r(1);
    while (k > 0) {
      if (k & 1UL) r = mul(r, base);
      base = mul(base, base);
      k >>= 1;
    }
    return r;
  }

  // All conjugates are real, so total positivity is positivity of the
  // elementary symmetric functions.
  bool is_totally_positive(const CubicElem& a) const {
    const Rat e1 = trace(a);
    if (e1 <= 0) return false;
    const Rat e2 = (e1 * e1 - trace(sqr(a))) / 2;
    if (e2 <= 0) return false;
    return norm(a) > 0;
  }

  bool is_integral(const CubicElem& a) const {
    return is_integer(a.c0) && is_integer(a.c1) && is_integer(a.c2);
  }

  bool is_unit(const CubicElem& a) const {
    if (!is_integral(a)) return false;
    const Rat n = norm(a);
    return n == 1 || n == -1;
  }

  friend bool operator==(const SimplestCubicField& a, const SimplestCubicField& b) { return a.t_ == b.t_; }

 private:
  std::int64_t t_;
  Int delta_root_;
};

inline CubicElem cubic_mul(const CubicElem& a, const CubicElem& b, const SimplestCubicField& F) {
  return F.mul(a, b);
}
inline Rat cubic_trace(const CubicElem& a, const SimplestCubicField& F) { return F.trace(a); }

// ---------------------------------------------------------------------------
// Monogenicity

namespace detail {

using IntPoly = std::vector<Int>;  // coefficients, lowest degree first

inline Int mod_p(const Int& x, const Int& p) {
  Int r = x % p;
  if (r < 0) r += p;
  return r;
}

inline Int eval_mod(const IntPoly& f, const Int& x, const Int& p) {
  Int r = 0;
  for (std::size_t i = f.size(); i-- > 0;) r = mod_p(r * x + f[i], p);
  return r;
}

// f / (x - a) over Z/p, f(a) = 0 mod p assumed.
inline IntPoly divide_linear_mod(const IntPoly& f, const Int& a, const Int& p) {
  IntPoly q(f.size() - 1, Int(0));
  Int carry = 0;
  for (std::size_t i = f.size(); i-- > 1;) {
    carry = mod_p(f[i] + carry * a, p);
    q[i - 1] = carry;
  }
  return q;
}

inline IntPoly poly_mul(const IntPoly& a, const IntPoly& b) {
  IntPoly r(a.size() + b.size() - 1, Int(0));
  for (std::size_t i = 0; i < a.size(); ++i) {
    for (std::size_t j = 0; j < b.size(); ++j) r[i + j] += a[i] * b[j];
  }
  return r;
}

inline std::vector<Int> prime_divisors(Int n) {
  std::vector<Int> out;
  for (Int p = 2; p * p <= n; ++p) {
    if (n % p == 0) {
      out.push_back(p);
      while (n % p == 0) n /= p;
    }
  }
  if (n > 1) out.push_back(n);
  return out;
}

// Dedekind: p divides [O_K : Z[theta]] iff some repeated root alpha of P_t
// mod p is also a root of F = (P_t - g*h)/p, where g is the product of the
// distinct factors and h = P_t/g mod p. In degree 3 every repeated factor
// mod p is linear.
inline bool prime_divides_index(const IntPoly& f, const Int& p) {
  std::map<Int, int> mult;
  IntPoly rest = f;
  for (auto& c : rest) c = mod_p(c, p);
  for (Int a = 0; a < p && rest.size() > 1; ++a) {
    while (rest.size() > 1 && eval_mod(rest, a, p) == 0) {
      rest = divide_linear_mod(rest, a, p);
      ++mult[a];
    }
  }
  bool repeated = false;
  for (const auto& [a, e] : mult) repeated = repeated || e >= 2;
  if (!repeated) return false;
  IntPoly g{Int(1)};
  IntPoly h{Int(1)};
  for (const auto& [a, e] : mult) {
    g = poly_mul(g, IntPoly{Int(-a), Int(1)});
    for (int k = 1; k < e; ++k) h = poly_mul(h, IntPoly{Int(-a), Int(1)});
  }
  g = poly_mul(g, rest);  // leftover factor (degree <= 1 here)
  const IntPoly gh = poly_mul(g, h);
  IntPoly F(f.size(), Int(0));
  for (std::size_t i = 0; i < f.size(); ++i) {
    const Int diff = f[i] - (i < gh.size() ? gh[i] : Int(0));
    if (diff % p != 0) throw std::logic_error("Dedekind criterion: g*h does not lift P_t");
    F[i] = diff / p;
  }
  for (const auto& [a, e] : mult) {
    if (e >= 2 && eval_mod(F, a, p) == 0) return true;
  }
  return false;
}

}  // namespace detail

// O_K = Z[theta] iff no prime divides the index; only primes dividing
// disc(P_t) = (t^2+3t+9)^2 can.
inline bool is_monogenic(const SimplestCubicField& F) {
  const Int D = F.delta_root();
  const auto primes = detail::prime_divisors(D);
  bool squarefree = true;
  for (const Int& p : primes) squarefree = squarefree && (D % (p * p) != 0);
  if (squarefree) return true;
  const Int T = F.t_int();
  const detail::IntPoly f{Int(-1), Int(-(T + 3)), Int(-T), Int(1)};
  for (const Int& p : primes) {
    if (detail::prime_divides_index(f, p)) return false;
  }
  return true;
}

// ---------------------------------------------------------------------------
// Reduction domain and rays

// Row k holds the coefficients of Tr(a u_k^2) - Tr(a) >= 0 in (a0, a1, a2) for
// u_k = theta, sigma2(theta), sigma3(theta), sigma3(theta)^-1, theta^-1,
// sigma2(theta)^-1.
inline std::array<std::array<Int, 3>, 6> reduction_domain_inequalities(const SimplestCubicField& F) {
  const Int t = F.t_int();
  const Int A = t * t + 2 * t + 3;
  const Int B = t * t * t + 3 * t * t + 8 * t + 3;
  const Int C = -(t * t + 4 * t + 6);
  const Int D = 3 - t;
  const Int E = t * t + 4 * t + 6;
  const Int G = t * t * t + 5 * t * t + 13 * t + 15;
  const Int H = -(t * t + 5 * t + 12);
  const Int J = -(2 * t + 3);
  return {{{A, B, C}, {A, D, B}, {A, C, D}, {E, G, H}, {E, J, G}, {E, H, J}}};
}

inline std::array<CubicElem, 6> reduction_domain_units(const SimplestCubicField& F) {
  const CubicElem th = F.theta();
  const CubicElem s2 = F.sigma2_theta();
  const CubicElem s3 = F.sigma3_theta();
  return {th, s2, s3, F.inverse(s3), F.inverse(th), F.inverse(s2)};
}

inline bool in_reduction_domain_cubic(const CubicElem& a, const SimplestCubicField& F) {
  if (!F.is_totally_positive(a)) throw std::invalid_argument("in_reduction_domain_cubic: a is not totally positive");
  for (const auto& row : reduction_domain_inequalities(F)) {
    if (Rat(row[0]) * a.c0 + Rat(row[1]) * a.c1 + Rat(row[2]) * a.c2 < 0) return false;
  }
  return true;
}

struct Rays {
  CubicElem r1, r2, r3, s1, s2, s3;
};

inline Rays rays(const SimplestCubicField& F) {
  const Int t = F.t_int();
  const auto R = [](const Int& a, const Int& b, const Int& c) { return CubicElem(Rat(a), Rat(b), Rat(c)); };
  Rays r{R(3, 1, t + 2),
         R(t * t + 2 * t + 3, -(t + 2), -(t + 1)),
         R(t + 3, t + 1, -1),
         R(t * t + t + 6, -t, 3),
         R(t * t + 4 * t + 6, -3, -(t + 3)),
         R(t + 6, t + 3, t)};
  const CubicElem th2 = F.sqr(F.theta());
  const CubicElem s22 = F.sqr(F.sigma2_theta());
  const bool ok = r.r2 == F.mul(r.r1, F.inverse(s22)) && r.r3 == F.mul(r.r1, th2) &&
                  r.s2 == F.mul(r.s1, th2) && r.s3 == F.mul(F.mul(r.s1, th2), s22);
  if (!ok) throw std::logic_error("rays: unit relations between the rays do not hold");
  return r;
}

// ---------------------------------------------------------------------------
// Ternary trace forms

// G[i][j] = Tr(a b_i b_j) for the basis b = (1, theta, sigma2(theta)).
inline RatMatrix ternary_trace_form(const CubicElem& a, const SimplestCubicField& F) {
  if (!F.is_totally_positive(a)) throw std::invalid_argument("ternary_trace_form: a is not totally positive");
  const auto b = F.basis();
  RatMatrix G(3, std::vector<Rat>(3));
  for (std::size_t i = 0; i < 3; ++i) {
    for (std::size_t j = i; j < 3; ++j) {
      G[i][j] = F.trace(F.mul(a, F.mul(b[i], b[j])));
      G[j][i] = G[i][j];
    }
  }
  return G;
}

inline CubicElem elem_from_coords(const IntVector& x) { return {Rat(x[0]), Rat(x[1]), Rat(x[2])}; }

struct CubicMinimum {
  Rat value;
  std::vector<IntVector> vectors;  // one per +- pair, canonical sign, lexicographic
  bool all_units = true;
};

inline CubicMinimum ternary_min(const CubicElem& a, const SimplestCubicField& F) {
  LatticeMinimum lm = lattice_minimum(ternary_trace_form(a, F));
  CubicMinimum out{lm.value, std::move(lm.vectors), true};
  for (const IntVector& v : out.vectors) out.all_units = out.all_units && F.is_unit(elem_from_coords(v));
  return out;
}

// (Tr(b_k v^2))_k; Tr(psi v^2) is the dot product of psi's coordinates with it.
inline std::array<Rat, 3> pairing_row(const CubicElem& v, const SimplestCubicField& F) {
  const CubicElem w = F.sqr(v);
  const auto b = F.basis();
  return {F.trace(F.mul(b[0], w)), F.trace(F.mul(b[1], w)), F.trace(F.mul(b[2], w))};
}

inline Rat pairing(const CubicElem& psi, const CubicElem& v, const SimplestCubicField& F) {
  return F.trace(F.mul(psi, F.sqr(v)));
}

inline bool is_perfect_cubic(const std::vector<IntVector>& minimal, const SimplestCubicField& F) {
  std::vector<std::array<Rat, 3>> rows;
  for (const IntVector& v : minimal) rows.push_back(pairing_row(elem_from_coords(v), F));
  for (std::size_t i = 0; i < rows.size(); ++i) {
    for (std::size_t j = i + 1; j < rows.size(); ++j) {
      for (std::size_t k = j + 1; k < rows.size(); ++k) {
        const auto& x = rows[i];
        const auto& y = rows[j];
        const auto& z = rows[k];
        const Rat det = x[0] * (y[1] * z[2] - y[2] * z[1]) - x[1] * (y[0] * z[2] - y[2] * z[0]) +
                        x[2] * (y[0] * z[1] - y[1] * z[0]);
        if (det != 0) return true;
      }
    }
  }
  return false;
}

// Positive rational multiple with coprime integer coordinates.
inline CubicElem primitive_multiple(const CubicElem& a) {
  const Int L = lcm(lcm(a.c0.get_den(), a.c1.get_den()), a.c2.get_den());
  const Int x = a.c0.get_num() * (L / a.c0.get_den());
  const Int y = a.c1.get_num() * (L / a.c1.get_den());
  const Int z = a.c2.get_num() * (L / a.c2.get_den());
  const Int g = gcd(gcd(x, y), z);
  if (g == 0) return a;
  return {Rat(Int(x / g)), Rat(Int(y / g)), Rat(Int(z / g))};
}

namespace detail {

inline std::array<Rat, 3> cross(const std::array<Rat, 3>& u, const std::array<Rat, 3>& v) {
  return {u[1] * v[2] - u[2] * v[1], u[2] * v[0] - u[0] * v[2], u[0] * v[1] - u[1] * v[0]};
}

inline Rat dot(const std::array<Rat, 3>& u, const std::array<Rat, 3>& v) {
  return u[0] * v[0] + u[1] * v[1] + u[2] * v[2];
}

}  // namespace detail

// Solves Tr(psi k^2) = 0 for the two kept vectors, primitive integral, signed
// so that Tr(psi drop^2) > 0.
inline CubicElem facet_vector(const CubicElem& kept1, const CubicElem& kept2, const CubicElem& dropped,
                              const SimplestCubicField& F) {
  const auto n = detail::cross(pairing_row(kept1, F), pairing_row(kept2, F));
  CubicElem psi(n[0], n[1], n[2]);
  if (psi.is_zero()) throw std::invalid_argument("facet_vector: kept vectors give a system of rank < 2");
  const Rat s = pairing(psi, dropped, F);
  if (s == 0) throw std::invalid_argument("facet_vector: dropped vector lies on the facet");
  if (s < 0) psi = -psi;
  return primitive_multiple(psi);
}

struct CubicFacet {
  CubicElem psi;                  // primitive, >= 0 on all minimal vectors
  std::vector<std::size_t> kept;  // indices of minimal vectors with Tr(psi v^2) = 0
};

// Facets of the cone spanned by the rows (Tr(b_k v^2))_k of the minimal vectors.
inline std::vector<CubicFacet> cone_facets(const std::vector<IntVector>& minimal, const SimplestCubicField& F) {
  std::vector<std::array<Rat, 3>> rows;
  for (const IntVector& v : minimal) rows.push_back(pairing_row(elem_from_coords(v), F));
  std::vector<CubicFacet> out;
  for (std::size_t i = 0; i < rows.size(); ++i) {
    for (std::size_t j = i + 1; j < rows.size(); ++j) {
      const auto n = detail::cross(rows[i], rows[j]);
      if (n[0] == 0 && n[1] == 0 && n[2] == 0) continue;
      int pos = 0, neg = 0;
      std::vector<std::size_t> zero;
      for (std::size_t k = 0; k < rows.size(); ++k) {
        const int s = sign(detail::dot(n, rows[k]));
        pos += s > 0;
        neg += s < 0;
        if (s == 0) zero.push_back(k);
      }
      if (pos > 0 && neg > 0) continue;
      if (pos == 0 && neg == 0) continue;
      CubicElem psi(n[0], n[1], n[2]);
      if (neg > 0) psi = -psi;
      psi = primitive_multiple(psi);
      if (std::none_of(out.begin(), out.end(), [&](const CubicFacet& f) { return f.psi == psi; })) {
        out.push_back({psi, zero});
      }
    }
  }
  return out;
}

struct CubicFormSpace {
  using Elem = CubicElem;
  using Vec = CubicElem;
  struct Minimum {
    Rat value;
    std::vector<CubicElem> vectors;
  };

  const SimplestCubicField& F;

  bool is_totally_positive(const Elem& e) const { return F.is_totally_positive(e); }
  Rat evaluate(const Elem& e, const Vec& x) const { return pairing(e, x, F); }
  Elem axpy(const Elem& a, const Rat& rho, const Elem& psi) const { return a + rho * psi; }
  Minimum minimum(const Elem& e) const {
    const CubicMinimum m = ternary_min(e, F);
    Minimum out{m.value, {}};
    for (const IntVector& v : m.vectors) out.vectors.push_back(elem_from_coords(v));
    return out;
  }
};

// ---------------------------------------------------------------------------
// Equivalence and the class walk

// Greedy descent of Tr along a -> a*u^2 for the six units of the reduction
// domain; returns the reduced generator and the accumulated unit v with
// result = a * v^2.
inline std::pair<CubicElem, CubicElem> reduce_cubic(const CubicElem& a, const SimplestCubicField& F) {
  if (!F.is_totally_positive(a)) throw std::invalid_argument("reduce_cubic: a is not totally positive");
  const auto units = reduction_domain_units(F);
  std::array<CubicElem, 6> squares;
  for (std::size_t i = 0; i < 6; ++i) squares[i] = F.sqr(units[i]);
  CubicElem cur = a;
  CubicElem acc(1);
  for (;;) {
    std::size_t best = 6;
    Rat best_trace = F.trace(cur);
    for (std::size_t i = 0; i < 6; ++i) {
      const Rat tr = F.trace(F.mul(cur, squares[i]));
      if (tr < best_trace) {
        best_trace = tr;
        best = i;
      }
    }
    if (best == 6) break;
    cur = F.mul(cur, squares[best]);
    acc = F.mul(acc, units[best]);
  }
  return {cur, acc};
}

struct CubicEquivalenceOptions {
  int orbit_bound = 2;  // |k|, |l| <= bound around the reduced generator
};

// Lexicographically least primitive multiple among minimal-trace members of
// the orbit a * theta^(2k) * sigma2(theta)^(2l).
inline CubicElem canonical_cubic(const CubicElem& a, const SimplestCubicField& F,
                                 const CubicEquivalenceOptions& opts = {}) {
  const CubicElem red = reduce_cubic(a, F).first;
  const CubicElem th2 = F.sqr(F.theta());
  const CubicElem s22 = F.sqr(F.sigma2_theta());
  const int B = opts.orbit_bound;
  std::vector<CubicElem> members;
  Rat best_trace = F.trace(red);
  const auto lex_less = [](const CubicElem& x, const CubicElem& y) {
    if (x.c0 != y.c0) return x.c0 < y.c0;
    if (x.c1 != y.c1) return x.c1 < y.c1;
    return x.c2 < y.c2;
  };
  CubicElem row = F.mul(red, F.mul(F.pow(th2, -B), F.pow(s22, -B)));
  for (int k = -B; k <= B; ++k) {
    CubicElem cur = row;
    for (int l = -B; l <= B; ++l) {
      const Rat tr = F.trace(cur);
      if (tr < best_trace) {
        best_trace = tr;
        members.clear();
      }
      if (tr == best_trace) members.push_back(primitive_multiple(cur));
      cur = F.mul(cur, s22);
    }
    row = F.mul(row, th2);
  }
  return *std::min_element(members.begin(), members.end(), lex_less);
}

inline bool cubic_equivalent(const CubicElem& a, const CubicElem& b, const SimplestCubicField& F) {
  return canonical_cubic(a, F) == canonical_cubic(b, F);
}

struct CubicClass {
  CubicElem representative;  // canonical generator
  CubicMinimum min_data;
  std::vector<std::size_t> neighbors;
};

struct CubicClassGraph {
  std::size_t n_K = 0;
  std::vector<CubicClass> classes;
};

struct CubicEnumerateOptions {
  std::size_t node_budget = 1000;
};

inline CubicClassGraph enumerate_cubic_classes(const SimplestCubicField& F, const CubicEnumerateOptions& opts = {}) {
  if (!is_monogenic(F)) throw std::invalid_argument("enumerate_cubic_classes: field is not monogenic");
  CubicClassGraph g;
  std::map<std::array<Rat, 3>, std::size_t> index;
  auto intern = [&](const CubicElem& a) -> std::pair<std::size_t, bool> {
    const CubicElem c = canonical_cubic(a, F);
    std::array<Rat, 3> key{c.c0, c.c1, c.c2};
    if (auto it = index.find(key); it != index.end()) return {it->second, false};
    if (g.classes.size() >= opts.node_budget) {
      throw std::runtime_error("enumerate_cubic_classes: node budget exceeded for t = " + std::to_string(F.t()));
    }
    CubicMinimum md = ternary_min(c, F);
    if (!is_perfect_cubic(md.vectors, F)) throw voronoi::WalkError("cubic walk produced a non-perfect form");
    g.classes.push_back({c, std::move(md), {}});
    index.emplace(std::move(key), g.classes.size() - 1);
    return {g.classes.size() - 1, true};
  };

  std::deque<std::size_t> work{intern(rays(F).r1).first};
  while (!work.empty()) {
    const std::size_t id = work.front();
    work.pop_front();
    const CubicElem rep = g.classes[id].representative;
    const CubicMinimum md = g.classes[id].min_data;
    for (const CubicFacet& facet : cone_facets(md.vectors, F)) {
      const auto step = voronoi::advance(CubicFormSpace{F}, rep, md.value, facet.psi);
      const auto [nb, fresh] = intern(step.form);
      g.classes[id].neighbors.push_back(nb);
      if (fresh) work.push_back(nb);
    }
  }
  g.n_K = g.classes.size();
  return g;
}

// r1 and s1 are inequivalent: s1/2 is not integral, so s1 is not a rational
// multiple of an integral r1*u^2 with matching content, and the canonical
// generators differ.
inline bool nonequivalence_check(const SimplestCubicField& F) {
  const Rays r = rays(F);
  const CubicElem half_s1 = Rat(1, 2) * r.s1;
  if (F.is_integral(half_s1)) return false;
  const CubicElem th = F.theta();
  const CubicElem s2 = F.sigma2_theta();
  for (int k = -2; k <= 2; ++k) {
    for (int l = -2; l <= 2; ++l) {
      const CubicElem u = F.mul(F.pow(th, k), F.pow(s2, l));
      if (!F.is_integral(F.mul(r.r1, F.sqr(u)))) return false;
    }
  }
  return !cubic_equivalent(r.r1, r.s1, F);
}

// ---------------------------------------------------------------------------
// Verification of the Voronoi computation for r1 and s1

struct IdentityCheck {
  std::string name;
  std::string lhs;
  std::string rhs;
  bool pass = false;
};

struct AppendixReport {
  std::int64_t t = 0;
  bool monogenic = false;
  std::vector<IdentityCheck> identities;
  std::size_t n_K = 0;

  bool all_pass() const {
    return std::all_of(identities.begin(), identities.end(), [](const IdentityCheck& c) { return c.pass; });
  }
};

struct FacetClosedForms {
  CubicElem psi1, psi2, psi3, psi4, psi5;
};

inline FacetClosedForms facet_closed_forms(const SimplestCubicField& F) {
  const Int t = F.t_int();
  const auto R = [](const Int& a, const Int& b, const Int& c) { return CubicElem(Rat(a), Rat(b), Rat(c)); };
  return {R(2 * t * t + 7 * t + 9, t * t + 3 * t + 4, t * t * t + 5 * t * t + 12 * t + 11),
          R(t, t + 1, -(t + 4)),
          R(t * t + t, -(t + 2), -(2 * t + 1)),
          R(t * t + 3 * t, -(t + 4), -(2 * t + 5)),
          R(t * t - t + 6, 2 - t, 7)};
}

// Minimal vectors of r1 and s1 in the labelling of the facet computation:
// v1 = -(t+1) + theta + sigma2(theta), v2 = 1, v3 = theta, v4 = 1 + theta.
struct LabelledVectors {
  CubicElem v1, v2, v3, v4;
};

inline LabelledVectors labelled_vectors(const SimplestCubicField& F) {
  const Rat t(F.t_int());
  return {CubicElem(-(t + 1), 1, 1), CubicElem(1), F.theta(), CubicElem(1, 1, 0)};
}

inline AppendixReport verify_appendix(std::int64_t t) {
  const SimplestCubicField F(t);
  AppendixReport rep;
  rep.t = t;
  rep.monogenic = is_monogenic(F);
  if (!rep.monogenic) throw std::invalid_argument("verify_appendix: t = " + std::to_string(t) + " is not monogenic");

  auto check_elem = [&](std::string name, const CubicElem& lhs, const CubicElem& rhs) {
    rep.identities.push_back({std::move(name), to_string(lhs), to_string(rhs), lhs == rhs});
  };
  auto check_rat = [&](std::string name, const Rat& lhs, const Rat& rhs) {
    rep.identities.push_back({std::move(name), to_fraction_string(lhs), to_fraction_string(rhs), lhs == rhs});
  };

  const Rays r = rays(F);
  const CubicElem th2 = F.sqr(F.theta());
  const CubicElem s22 = F.sqr(F.sigma2_theta());
  check_elem("r2 = r1*sigma2(theta)^-2", r.r2, F.mul(r.r1, F.inverse(s22)));
  check_elem("r3 = r1*theta^2", r.r3, F.mul(r.r1, th2));
  check_elem("s2 = s1*theta^2", r.s2, F.mul(r.s1, th2));
  check_elem("s3 = s1*theta^2*sigma2(theta)^2", r.s3, F.mul(F.mul(r.s1, th2), s22));

  const LabelledVectors v = labelled_vectors(F);
  const FacetClosedForms psi = facet_closed_forms(F);
  const Int D = F.delta_root();
  const Int T = F.t_int();

  check_elem("psi1 from kept {v1, v3}, dropped v2", facet_vector(v.v1, v.v3, v.v2, F), primitive_multiple(psi.psi1));
  check_elem("psi2 from kept {v1, v2}, dropped v3", facet_vector(v.v1, v.v2, v.v3, F), primitive_multiple(psi.psi2));
  check_elem("psi3 from kept {v2, v3}, dropped v1", facet_vector(v.v2, v.v3, v.v1, F), primitive_multiple(psi.psi3));
  check_elem("psi4 from kept {v2, v4}, dropped v3", facet_vector(v.v2, v.v4, v.v3, F), primitive_multiple(psi.psi4));
  check_elem("psi5 from kept {v3, v4}, dropped v2", facet_vector(v.v3, v.v4, v.v2, F), primitive_multiple(psi.psi5));

  const Rat quartic(T * T * T * T + 6 * T * T * T + 21 * T * T + 36 * T + 27);
  const Rat twice_delta(2 * D);
  check_rat("Tr(psi1 v2^2) = t^4+6t^3+21t^2+36t+27", pairing(psi.psi1, v.v2, F), quartic);
  check_rat("Tr(psi2 v3^2) = t^4+6t^3+21t^2+36t+27", pairing(psi.psi2, v.v3, F), quartic);
  check_rat("Tr(psi3 v1^2) = t^4+6t^3+21t^2+36t+27", pairing(psi.psi3, v.v1, F), quartic);
  check_rat("Tr(psi4 v3^2) = 2(t^2+3t+9)", pairing(psi.psi4, v.v3, F), twice_delta);
  check_rat("Tr(psi5 v2^2) = 2(t^2+3t+9)", pairing(psi.psi5, v.v2, F), twice_delta);

  const Rat half(1, 2);
  const CubicElem two_r1 = Rat(2) * r.r1;
  struct Step {
    const char* name;
    const CubicElem& from;
    const CubicElem& psi;
    Rat rho;
    CubicElem target;
  };
  const std::vector<Step> steps{
      {"N1 = r1 + 1/2 psi1 = 1/2 s1 sigma2(theta)^2", r.r1, psi.psi1, half, half * F.mul(r.s1, s22)},
      {"N2 = r1 + 1/2 psi2 = 1/2 s3", r.r1, psi.psi2, half, half * r.s3},
      {"N3 = r1 + 1/2 psi3 = 1/2 s1", r.r1, psi.psi3, half, half * r.s1},
      {"N4 = s1 + psi4 = 2 r1 sigma2(theta)^-2", r.s1, psi.psi4, Rat(1), F.mul(two_r1, F.inverse(s22))},
      {"N5 = s1 + psi5 = theta^-2 sigma2(theta)^-2 2 r1", r.s1, psi.psi5, Rat(1),
       F.mul(F.mul(F.inverse(th2), F.inverse(s22)), two_r1)},
  };
  const CubicFormSpace space{F};
  for (const Step& s : steps) {
    check_elem(s.name, s.from + s.rho * s.psi, s.target);
    const Rat mu = ternary_min(s.from, F).value;
    const auto walked = voronoi::advance(space, s.from, mu, s.psi);
    const std::string base = std::string(s.name).substr(0, 2);
    check_rat(base + " step length recovered by the walk", walked.rho, s.rho);
    check_elem(base + " neighbour reached by the walk", walked.form, s.target);
  }

  rep.identities.push_back({"r1 and s1 inequivalent", "true", nonequivalence_check(F) ? "true" : "false",
                            nonequivalence_check(F)});
  rep.n_K = enumerate_cubic_classes(F).n_K;
  rep.identities.push_back({"n_K = 2", std::to_string(rep.n_K), "2", rep.n_K == 2});
  return rep;
}

}  // namespace unitred
