#pragma once

// Exact integer and rational helpers on top of GMP's C++ interface.

#include <gmpxx.h>

#include <compare>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <string_view>

namespace unitred {

using Int = mpz_class;
using Rat = mpq_class;

inline Rat make_rat(Int num, Int den) {
  if (den == 0) throw std::domain_error("rational with zero denominator");
  Rat r(num, den);
  r.canonicalize();
  return r;
}

inline int sign(const Int& x) { return sgn(x); }
inline int sign(const Rat& x) { return sgn(x); }

inline Int floor_sqrt(const Int& x) {
  if (x < 0) throw std::domain_error("square root of a negative integer");
  Int r;
  mpz_sqrt(r.get_mpz_t(), x.get_mpz_t());
  return r;
}

inline bool is_square(const Int& x) {
  return x >= 0 && mpz_perfect_square_p(x.get_mpz_t()) != 0;
}

inline Int floor(const Rat& q) {
  Int r;
  mpz_fdiv_q(r.get_mpz_t(), q.get_num_mpz_t(), q.get_den_mpz_t());
  return r;
}

inline Int ceil(const Rat& q) {
  Int r;
  mpz_cdiv_q(r.get_mpz_t(), q.get_num_mpz_t(), q.get_den_mpz_t());
  return r;
}

inline bool is_integer(const Rat& q) { return q.get_den() == 1; }

// floor(sqrt(q)) for q >= 0; floor(sqrt(q)) == floor(sqrt(floor(q))).
inline Int floor_sqrt(const Rat& q) { return floor_sqrt(floor(q)); }

// Nearest integer; ties go to the even neighbour.
inline Int round_half_even(const Rat& q) {
  Int fl = floor(q);
  Rat frac = q - Rat(fl);
  const Rat half(1, 2);
  if (frac < half) return fl;
  if (frac > half) return fl + 1;
  return (fl % 2 == 0) ? fl : Int(fl + 1);
}

inline Int gcd(const Int& a, const Int& b) {
  Int g;
  mpz_gcd(g.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
  return g;
}

inline Int lcm(const Int& a, const Int& b) {
  Int l;
  mpz_lcm(l.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
  return l;
}

inline Int abs(const Int& x) { return x < 0 ? Int(-x) : x; }
inline Rat abs(const Rat& x) { return x < 0 ? Rat(-x) : x; }

inline Rat pow(const Rat& base, unsigned e) {
  Rat r = 1;
  for (unsigned i = 0; i < e; ++i) r *= base;
  return r;
}

// Always "p/q", also for integers, so certificates have one exact shape.
inline std::string to_fraction_string(const Rat& q) {
  return q.get_num().get_str() + "/" + q.get_den().get_str();
}

inline Rat parse_fraction(std::string_view s) {
  std::string str(s);
  auto slash = str.find('/');
  try {
    if (slash == std::string::npos) return Rat(Int(str));
    return make_rat(Int(str.substr(0, slash)), Int(str.substr(slash + 1)));
  } catch (const std::invalid_argument&) {
    throw std::invalid_argument("not a rational number: " + str);
  }
}

inline std::int64_t to_int64(const Int& x) {
  if (!x.fits_slong_p()) throw std::overflow_error("integer does not fit 64 bits");
  return x.get_si();
}

}  // namespace unitred
