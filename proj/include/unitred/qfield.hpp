#pragma once

// Exact arithmetic in real quadratic fields Q(sqrt(d)).
//
// Elements are stored as x1 + x2*sqrt(d) with rational coordinates. Every sign
// and order decision reduces to integer comparisons; nothing here touches
// floating point.

#include "unitred/rational.hpp"

#include <cstdint>
#include <optional>
#include <ostream>
#include <stdexcept>
#include <string>
#include <utility>

namespace unitred {

inline bool is_squarefree(std::int64_t d) {
  if (d < 1) throw std::invalid_argument("is_squarefree expects d >= 1");
  for (std::int64_t p = 2; p * p <= d; ++p) {
    if (d % (p * p) == 0) return false;
  }
  return true;
}

struct QuadElem {
  Rat x1;
  Rat x2;

  QuadElem() = default;
  QuadElem(Rat a, Rat b) : x1(std::move(a)), x2(std::move(b)) {}
  QuadElem(long a) : x1(a), x2(0) {}  // NOLINT: integers embed implicitly

  bool is_zero() const { return x1 == 0 && x2 == 0; }

  friend bool operator==(const QuadElem& a, const QuadElem& b) {
    return a.x1 == b.x1 && a.x2 == b.x2;
  }
  friend QuadElem operator+(const QuadElem& a, const QuadElem& b) {
    return {a.x1 + b.x1, a.x2 + b.x2};
  }
  friend QuadElem operator-(const QuadElem& a, const QuadElem& b) {
    return {a.x1 - b.x1, a.x2 - b.x2};
  }
  friend QuadElem operator-(const QuadElem& a) { return {-a.x1, -a.x2}; }
  friend QuadElem operator*(const Rat& s, const QuadElem& a) {
    return {s * a.x1, s * a.x2};
  }
};

inline Rat trace(const QuadElem& a) { return 2 * a.x1; }

inline QuadElem conj(const QuadElem& a) { return {a.x1, -a.x2}; }

// Sign of x1 + x2*sqrt(d), decided by comparing x1^2 with d*x2^2.
inline int sign_of(const Rat& x1, const Rat& x2, const Int& d) {
  const int s1 = sign(x1);
  const int s2 = sign(x2);
  if (s2 == 0) return s1;
  if (s1 == 0) return s2;
  if (s1 == s2) return s1;
  const int cmp = sign(Rat(x1 * x1 - Rat(d) * x2 * x2));
  return s1 > 0 ? cmp : -cmp;
}

enum class FieldTag { T1, T2, T3, T4, None };

inline const char* tag_name(FieldTag t) {
  switch (t) {
    case FieldTag::T1: return "T1";
    case FieldTag::T2: return "T2";
    case FieldTag::T3: return "T3";
    case FieldTag::T4: return "T4";
    case FieldTag::None: return "None";
  }
  return "None";
}

struct FieldType {
  FieldTag tag = FieldTag::None;
  std::int64_t m = 0;  // 0 when tag == None

  friend bool operator==(const FieldType&, const FieldType&) = default;
};

class QuadField;
QuadElem fundamental_unit(const QuadField& F);

class QuadField {
 public:
  explicit QuadField(std::int64_t d) : d_(d) {
    if (d < 2) throw std::invalid_argument("QuadField: d must be >= 2");
    if (!is_squarefree(d)) {
      throw std::invalid_argument("QuadField: d = " + std::to_string(d) + " is not square-free");
    }
    omega_is_half_ = (d % 4 == 1);
    disc_ = omega_is_half_ ? d : 4 * d;
    unit_ = compute_unit();
  }

  std::int64_t d() const { return d_; }
  std::int64_t disc() const { return disc_; }
  bool omega_is_half() const { return omega_is_half_; }
  Int d_int() const { return Int(static_cast<long>(d_)); }

  // Integral basis 1, omega with omega = sqrt(d) or (1+sqrt(d))/2.
  QuadElem omega() const {
    return omega_is_half_ ? QuadElem(Rat(1, 2), Rat(1, 2)) : QuadElem(0, 1);
  }
  QuadElem from_basis(const Int& c0, const Int& c1) const {
    return QuadElem(Rat(c0), 0) + Rat(c1) * omega();
  }
  // Inverse of from_basis; only meaningful for integral elements.
  std::pair<Rat, Rat> to_basis(const QuadElem& a) const {
    if (!omega_is_half_) return {a.x1, a.x2};
    return {a.x1 - a.x2, 2 * a.x2};
  }

  QuadElem mul(const QuadElem& a, const QuadElem& b) const {
    const Rat dd(d_int());
    return {a.x1 * b.x1 + dd * a.x2 * b.x2, a.x1 * b.x2 + a.x2 * b.x1};
  }
  QuadElem sqr(const QuadElem& a) const { return mul(a, a); }

  Rat norm(const QuadElem& a) const { return a.x1 * a.x1 - Rat(d_int()) * a.x2 * a.x2; }

  QuadElem inverse(const QuadElem& a) const {
    if (a.is_zero()) throw std::domain_error("inverse of zero in Q(sqrt d)");
    const Rat n = norm(a);
    return {a.x1 / n, -a.x2 / n};
  }

  QuadElem pow(const QuadElem& a, long e) const {
    QuadElem base = e < 0 ? inverse(a) : a;
    unsigned long k = e < 0 ? static_cast<unsigned long>(-e) : static_cast<unsigned long>(e);
    QuadElem r(1);
    while (k > 0) {
      if (k & 1UL) r = mul(r, base);
      base = mul(base, base);
      k >>= 1;
    }
    return r;
  }

  int sign1(const QuadElem& a) const { return sign_of(a.x1, a.x2, d_int()); }
  int sign2(const QuadElem& a) const { return sign_of(a.x1, -a.x2, d_int()); }

  // Compares the real values sigma_1(a) and sigma_1(b).
  int compare(const QuadElem& a, const QuadElem& b) const { return sign1(a - b); }

  bool is_totally_positive(const QuadElem& a) const { return sign1(a) > 0 && sign2(a) > 0; }

  bool is_integral(const QuadElem& a) const {
    if (!omega_is_half_) return is_integer(a.x1) && is_integer(a.x2);
    const Rat t1 = 2 * a.x1;
    const Rat t2 = 2 * a.x2;
    if (!is_integer(t1) || !is_integer(t2)) return false;
    Int diff = t1.get_num() - t2.get_num();
    return diff % 2 == 0;
  }

  bool is_unit(const QuadElem& a) const {
    if (!is_integral(a)) return false;
    const Rat n = norm(a);
    return n == 1 || n == -1;
  }

  const QuadElem& unit() const { return unit_; }

  // u^2 = u1 + u2*sqrt(d); totally positive and > 1.
  QuadElem unit_squared() const { return sqr(unit_); }

  friend bool operator==(const QuadField& a, const QuadField& b) { return a.d_ == b.d_; }

 private:
  QuadElem compute_unit() const;

  std::int64_t d_;
  std::int64_t disc_ = 0;
  bool omega_is_half_ = false;
  QuadElem unit_;
};

// Continued fraction of omega = (P + sqrt(N))/Q. The first convergent p/q with
// p - q*omega of norm +-1 yields the fundamental unit as 1/|p - q*omega|.
inline QuadElem QuadField::compute_unit() const {
  const Int N = d_int();
  const Int s = floor_sqrt(N);
  Int P = omega_is_half_ ? 1 : 0;
  Int Q = omega_is_half_ ? 2 : 1;
  // Convergent recurrences seeded with p_{-1}/q_{-1} = 1/0 and p_{-2}/q_{-2} = 0/1.
  Int p = 1, p_prev = 0;
  Int q = 0, q_prev = 1;
  for (int iter = 0; iter < 1000000; ++iter) {
    Int a;
    mpz_fdiv_q(a.get_mpz_t(), Int(P + s).get_mpz_t(), Q.get_mpz_t());
    Int pn = a * p + p_prev;
    Int qn = a * q + q_prev;
    p_prev = p;
    p = pn;
    q_prev = q;
    q = qn;
    const QuadElem v = from_basis(p, -q);
    const Rat nv = norm(v);
    if (nv == 1 || nv == -1) {
      QuadElem u = inverse(v);
      if (sign1(u) < 0) u = -u;
      return u;
    }
    P = a * Q - P;
    Q = (N - P * P) / Q;
  }
  throw std::runtime_error("fundamental unit: continued fraction did not close");
}

inline QuadElem fundamental_unit(const QuadField& F) { return F.unit(); }

inline Rat norm(const QuadElem& a, const QuadField& F) { return F.norm(a); }
inline QuadElem quad_mul(const QuadElem& a, const QuadElem& b, const QuadField& F) {
  return F.mul(a, b);
}
inline bool is_totally_positive(const QuadElem& a, const QuadField& F) {
  return F.is_totally_positive(a);
}
inline bool is_integral(const QuadElem& a, const QuadField& F) { return F.is_integral(a); }

// First match in the fixed order T1, T2, T3, T4.
inline FieldType classify_type(std::int64_t d) {
  if (d < 2 || !is_squarefree(d)) {
    throw std::invalid_argument("classify_type: d = " + std::to_string(d) +
                                " is not a square-free integer >= 2");
  }
  auto exact_root = [](std::int64_t v) -> std::int64_t {
    if (v < 1) return 0;
    const Int r = floor_sqrt(Int(static_cast<long>(v)));
    return r * r == v ? r.get_si() : 0;
  };
  if (std::int64_t m = exact_root(d - 1); m > 0 && m % 2 == 1) return {FieldTag::T1, m};
  if (std::int64_t m = exact_root(d + 1); m > 0 && m % 2 == 0) return {FieldTag::T2, m};
  if (std::int64_t m = exact_root(d - 4); m > 0 && m % 2 == 1) return {FieldTag::T3, m};
  if (std::int64_t m = exact_root(d + 4); m > 3 && m % 2 == 1) return {FieldTag::T4, m};
  return {};
}

struct RdParameters {
  std::int64_t m;
  std::int64_t r;
  friend bool operator==(const RdParameters&, const RdParameters&) = default;
};

// d = m^2 + r with -m < r <= m; returns (m, r) when additionally r | 4m.
inline std::optional<RdParameters> rd_parameters(std::int64_t d) {
  if (d < 2 || !is_squarefree(d)) throw std::invalid_argument("rd_parameters: bad d");
  std::int64_t m = floor_sqrt(Int(static_cast<long>(d))).get_si();
  std::int64_t r = d - m * m;
  if (r > m) {
    ++m;
    r = d - m * m;
  }
  if (r == 0 || (4 * m) % r != 0) return std::nullopt;
  return RdParameters{m, r};
}

// Certificate serialisation "x1n/x1d+x2n/x2d*sqrt(d)".
inline std::string to_certificate_string(const QuadElem& a, const QuadField& F) {
  return to_fraction_string(a.x1) + "+" + to_fraction_string(a.x2) + "*sqrt(" +
         std::to_string(F.d()) + ")";
}

inline QuadElem parse_certificate_string(const std::string& s, const QuadField& F) {
  const std::string tail = "*sqrt(" + std::to_string(F.d()) + ")";
  if (s.size() <= tail.size() || s.compare(s.size() - tail.size(), tail.size(), tail) != 0) {
    throw std::invalid_argument("malformed field element: " + s);
  }
  const std::string body = s.substr(0, s.size() - tail.size());
  // The separator is the first '+' after the first fraction's denominator.
  const auto slash = body.find('/');
  const auto plus = slash == std::string::npos ? std::string::npos : body.find('+', slash);
  if (plus == std::string::npos) throw std::invalid_argument("malformed field element: " + s);
  return {parse_fraction(body.substr(0, plus)), parse_fraction(body.substr(plus + 1))};
}

inline std::ostream& operator<<(std::ostream& os, const QuadElem& a) {
  return os << a.x1.get_str() << (a.x2 < 0 ? "-" : "+") << abs(a.x2).get_str() << "*sqrt(d)";
}

}  // namespace unitred
