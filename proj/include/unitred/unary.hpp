#pragma once

// Unary forms a*x^2 over a real quadratic field K = Q(sqrt d).
//
// The form attached to a totally positive a is the trace form Tr(a x^2) on
// O_K. Forms are compared up to positive rational scaling and the action
// a -> a*v^2 of units v. This header holds the reduction domain, minima,
// perfection, Voronoi neighbours and the class count n_K, plus the
// non-reducibility predicates.

#include "unitred/binform.hpp"
#include "unitred/qfield.hpp"
#include "unitred/rational.hpp"
#include "unitred/voronoi.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <cstddef>
#include <deque>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace unitred {

struct UnaryForm {
  QuadField F;
  QuadElem a;

  UnaryForm(QuadField field, QuadElem gen) : F(std::move(field)), a(std::move(gen)) {
    if (!F.is_totally_positive(a)) throw std::invalid_argument("UnaryForm: generator is not totally positive");
  }
};

// Tr(a x^2).
inline Rat trace_value(const QuadField& F, const QuadElem& a, const QuadElem& x) {
  return trace(F.mul(a, F.sqr(x)));
}

struct MinData {
  Rat mu;
  std::vector<QuadElem> vectors;  // one per +- pair, ordered by basis coordinates
  bool all_units = true;
};

inline MinData mu_and_minvecs(const UnaryForm& f) {
  const BinaryMinimum bm = min_and_vectors(trace_form(f.a, f.F));
  MinData out{2 * bm.value, {}, true};
  out.vectors.reserve(bm.vectors.size());
  for (const IntPair& v : bm.vectors) {
    QuadElem x = f.F.from_basis(v[0], v[1]);
    out.all_units = out.all_units && f.F.is_unit(x);
    out.vectors.push_back(std::move(x));
  }
  return out;
}

// |a2| * d * u2 <= a1 * (u1 - 1) with u^2 = u1 + u2*sqrt(d).
inline bool in_reduction_domain(const UnaryForm& f) {
  const QuadElem e = f.F.unit_squared();
  return abs(f.a.x2) * Rat(f.F.d_int()) * e.x2 <= f.a.x1 * (e.x1 - 1);
}

// Returns (a*v^2, v) with v = u^k minimising Tr(a*u^(2k)).
inline std::pair<UnaryForm, QuadElem> reduce_unary(const UnaryForm& f) {
  const QuadField& F = f.F;
  const QuadElem e = F.unit_squared();
  const QuadElem e_inv = F.inverse(e);
  QuadElem cur = f.a;
  long k = 0;
  while (trace(F.mul(cur, e)) < trace(cur)) {
    cur = F.mul(cur, e);
    ++k;
  }
  while (trace(F.mul(cur, e_inv)) < trace(cur)) {
    cur = F.mul(cur, e_inv);
    --k;
  }
  return {UnaryForm(F, cur), F.pow(F.unit(), k)};
}

// Positive rational multiple of a with coprime integer coordinates.
inline QuadElem primitive_multiple(const QuadElem& a) {
  const Int L = lcm(a.x1.get_den(), a.x2.get_den());
  const Int A1 = a.x1.get_num() * (L / a.x1.get_den());
  const Int A2 = a.x2.get_num() * (L / a.x2.get_den());
  Int g = gcd(A1, A2);
  if (g == 0) return a;
  return {Rat(Int(A1 / g)), Rat(Int(A2 / g))};
}

// Class representative: reduced, primitive, and lexicographically smallest
// among the (at most two) reduced members of the orbit.
inline QuadElem canonical_generator(const QuadField& F, const QuadElem& a) {
  const QuadElem red = reduce_unary(UnaryForm(F, a)).first.a;
  const QuadElem e = F.unit_squared();
  std::vector<QuadElem> cands{primitive_multiple(red)};
  for (const QuadElem& s : {e, F.inverse(e)}) {
    const QuadElem other = F.mul(red, s);
    if (trace(other) == trace(red)) cands.push_back(primitive_multiple(other));
  }
  return *std::min_element(cands.begin(), cands.end(), [](const QuadElem& l, const QuadElem& r) {
    return l.x1 != r.x1 ? l.x1 < r.x1 : l.x2 < r.x2;
  });
}

inline bool equivalent(const UnaryForm& f, const UnaryForm& g) {
  if (!(f.F == g.F)) throw std::invalid_argument("equivalent: forms over different fields");
  return canonical_generator(f.F, f.a) == canonical_generator(g.F, g.a);
}

namespace detail {

// Exact comparison of the slopes sigma2(v)^2/sigma1(v)^2 and
// sigma2(w)^2/sigma1(w)^2: with z = v*sigma2(w) the first is smaller iff
// z1*z2 > 0.
inline int compare_slope(const QuadField& F, const QuadElem& v, const QuadElem& w) {
  const QuadElem z = F.mul(v, conj(w));
  return -sign(z.x1) * sign(z.x2);
}

}  // namespace detail

// Rank of {(sigma1(v^2), sigma2(v^2)) : v in M(a)} equals 2.
inline bool is_perfect(const MinData& md, const QuadField& F) {
  for (std::size_t i = 0; i < md.vectors.size(); ++i) {
    for (std::size_t j = i + 1; j < md.vectors.size(); ++j) {
      // det = sigma1(z) - sigma2(z) with z = v^2 * sigma2(w^2)
      const QuadElem z = F.mul(F.sqr(md.vectors[i]), conj(F.sqr(md.vectors[j])));
      if (z.x2 != 0) return true;
    }
  }
  return false;
}

inline bool is_perfect(const UnaryForm& f) { return is_perfect(mu_and_minvecs(f), f.F); }

// Direction psi with Tr(psi * keep^2) = 0 and Tr(psi * drop^2) > 0.
inline QuadElem facet_direction(const QuadField& F, const QuadElem& keep, const QuadElem& drop) {
  const QuadElem W = F.sqr(keep);
  QuadElem psi(Rat(F.d_int()) * W.x2, -W.x1);
  const Rat s = trace_value(F, psi, drop);
  if (s == 0) throw std::invalid_argument("facet_direction: keep and drop span the same ray");
  if (s < 0) psi = -psi;
  return psi;
}

// The two facets of a perfect form's cone: the minimal vectors whose squares
// have the smallest and the largest slope. Facet i keeps extremes[i] and drops
// the opposite extreme.
inline std::pair<QuadElem, QuadElem> extreme_minimal_vectors(const MinData& md, const QuadField& F) {
  if (md.vectors.empty()) throw std::invalid_argument("no minimal vectors");
  QuadElem lo = md.vectors.front(), hi = md.vectors.front();
  for (const QuadElem& v : md.vectors) {
    if (detail::compare_slope(F, v, lo) < 0) lo = v;
    if (detail::compare_slope(F, v, hi) > 0) hi = v;
  }
  return {lo, hi};
}

struct QuadFormSpace {
  using Elem = QuadElem;
  using Vec = QuadElem;
  struct Minimum {
    Rat value;
    std::vector<QuadElem> vectors;
  };

  const QuadField& F;

  bool is_totally_positive(const Elem& e) const { return F.is_totally_positive(e); }
  Rat evaluate(const Elem& e, const Vec& x) const { return trace_value(F, e, x); }
  Elem axpy(const Elem& a, const Rat& rho, const Elem& psi) const { return a + rho * psi; }
  Minimum minimum(const Elem& e) const {
    MinData md = mu_and_minvecs(UnaryForm(F, e));
    return {md.mu, std::move(md.vectors)};
  }
};

struct NeighborStep {
  UnaryForm neighbor;
  QuadElem psi;
  Rat rho;
};

// Crosses the facet opposite to `drop`. drop must be one of the two extreme
// minimal vectors; the facet is spanned by the other extreme.
inline NeighborStep voronoi_step(const UnaryForm& f, const QuadElem& drop) {
  const QuadField& F = f.F;
  const MinData md = mu_and_minvecs(f);
  if (!is_perfect(md, F)) throw std::invalid_argument("voronoi_neighbor: form is not perfect");
  const auto is_pm = [](const QuadElem& x, const QuadElem& y) { return x == y || x == -y; };
  if (std::none_of(md.vectors.begin(), md.vectors.end(), [&](const QuadElem& v) { return is_pm(v, drop); })) {
    throw std::invalid_argument("voronoi_neighbor: drop is not a minimal vector");
  }
  const auto [lo, hi] = extreme_minimal_vectors(md, F);
  QuadElem keep;
  if (is_pm(drop, lo)) {
    keep = hi;
  } else if (is_pm(drop, hi)) {
    keep = lo;
  } else {
    throw std::invalid_argument("voronoi_neighbor: drop is interior to the minimal cone; no facet");
  }
  const QuadElem psi = facet_direction(F, keep, drop);
  const auto step = voronoi::advance(QuadFormSpace{F}, f.a, md.mu, psi);
  return {UnaryForm(F, step.form), psi, step.rho};
}

inline UnaryForm voronoi_neighbor(const UnaryForm& f, const QuadElem& drop) {
  return voronoi_step(f, drop).neighbor;
}

// A perfect form obtained from a = 1 (M(1) = {+-1}) by moving along the
// direction sqrt(d) that keeps the value at 1.
inline UnaryForm initial_perfect_form(const QuadField& F) {
  const QuadElem one(1);
  const auto step = voronoi::advance(QuadFormSpace{F}, one, Rat(2), QuadElem(0, 1));
  return UnaryForm(F, step.form);
}

struct PerfectClass {
  UnaryForm representative;
  MinData min_data;
  std::vector<std::size_t> neighbors;
};

struct ClassGraph {
  std::size_t n_K = 0;
  std::vector<PerfectClass> classes;
};

struct EnumerateOptions {
  std::size_t node_budget = 100000;
};

class BudgetExceeded : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Breadth-first Voronoi walk, merging equivalent perfect forms.
inline ClassGraph enumerate_perfect_classes(const QuadField& F, const EnumerateOptions& opts = {}) {
  ClassGraph g;
  std::map<std::pair<Rat, Rat>, std::size_t> index;
  auto intern = [&](const QuadElem& a) -> std::size_t {
    const QuadElem c = canonical_generator(F, a);
    auto key = std::make_pair(c.x1, c.x2);
    if (auto it = index.find(key); it != index.end()) return it->second;
    if (g.classes.size() >= opts.node_budget) {
      throw BudgetExceeded("enumerate_perfect_classes: node budget exceeded for d = " + std::to_string(F.d()));
    }
    UnaryForm rep(F, c);
    MinData md = mu_and_minvecs(rep);
    if (!is_perfect(md, F)) throw voronoi::WalkError("walk produced a non-perfect form");
    g.classes.push_back({std::move(rep), std::move(md), {}});
    index.emplace(std::move(key), g.classes.size() - 1);
    return g.classes.size() - 1;
  };

  std::deque<std::size_t> work{intern(initial_perfect_form(F).a)};
  std::vector<bool> done;
  while (!work.empty()) {
    const std::size_t id = work.front();
    work.pop_front();
    if (id < done.size() && done[id]) continue;
    if (done.size() <= id) done.resize(id + 1, false);
    done[id] = true;
    const UnaryForm rep = g.classes[id].representative;
    const auto [lo, hi] = extreme_minimal_vectors(g.classes[id].min_data, F);
    for (const QuadElem& drop : {hi, lo}) {
      const std::size_t before = g.classes.size();
      const std::size_t nb = intern(voronoi_neighbor(rep, drop).a);
      g.classes[id].neighbors.push_back(nb);
      if (nb >= before) work.push_back(nb);
    }
  }
  g.n_K = g.classes.size();
  return g;
}

// Generator 2md + (m^2 + d - 1)sqrt(d) (d = 2, 3 mod 4) or
// 2md + (m^2 + d - 4)sqrt(d) (d = 1 mod 4, m odd) for an explicit m.
inline UnaryForm rd_perfect_form(const QuadField& F, std::int64_t m) {
  if (m < 1) throw std::invalid_argument("rd_perfect_form: m must be positive");
  const Int d = F.d_int();
  const Int M(static_cast<long>(m));
  QuadElem a;
  if (!F.omega_is_half()) {
    a = QuadElem(Rat(2 * M * d), Rat(M * M + d - 1));
  } else {
    if (m % 2 == 0) throw std::invalid_argument("rd_perfect_form: d = 1 mod 4 needs m odd");
    a = QuadElem(Rat(2 * M * d), Rat(M * M + d - 4));
  }
  if (!F.is_totally_positive(a)) throw std::invalid_argument("rd_perfect_form: generator not totally positive");
  UnaryForm f(F, a);
  if (!is_perfect(f)) throw std::invalid_argument("rd_perfect_form: generator is not perfect");
  return f;
}

// Same construction with m the nearest integer to sqrt(d), i.e. d = m^2 + r
// with -m < r <= m.
inline UnaryForm rd_perfect_form(const QuadField& F) {
  std::int64_t m = floor_sqrt(F.d_int()).get_si();
  if (F.d() - m * m > m) ++m;
  return rd_perfect_form(F, m);
}

namespace detail {

// Decimal truncations of pi; lower bound digits/10^k, upper bound + 10^-k.
inline constexpr const char* kPiDigits = "314159265358979323846264338327950288419716939937510";

// true iff q < (pi/4)^2, for rational q > 0 (never equal since pi is transcendental).
inline bool below_pi_quarter_squared(const Rat& q) {
  std::vector<std::pair<Rat, Rat>> brackets{{Rat(333, 106), Rat(355, 113)}};
  const std::string digits(kPiDigits);
  for (std::size_t k = 8; k < digits.size(); k += 4) {
    Int scale = 1;
    for (std::size_t i = 1; i < k; ++i) scale *= 10;
    const Int lo_num(digits.substr(0, k));
    brackets.emplace_back(make_rat(lo_num, scale), make_rat(lo_num + 1, scale));
  }
  for (const auto& [lo, hi] : brackets) {
    if (q < lo * lo / 16) return true;
    if (q >= hi * hi / 16) return false;
  }
  throw std::runtime_error("pi comparison undecided at available precision");
}

}  // namespace detail

// True iff sqrt(disc)/(2 cosh R) < pi/4, which rules out unit reducibility.
// With u = v1 + v2 sqrt(d): 2 cosh R = 2 v1 (norm 1) or 2 v2 sqrt(d) (norm -1).
inline bool minkowski_quadratic_predicate(const QuadField& F) {
  const QuadElem& u = F.unit();
  const Rat n = F.norm(u);
  const Rat d(F.d_int());
  Rat lhs_sq;  // square of the left-hand side
  if (F.omega_is_half()) {
    lhs_sq = n == 1 ? Rat(d / (4 * u.x1 * u.x1)) : Rat(1 / (4 * u.x2 * u.x2));
  } else {
    lhs_sq = n == 1 ? Rat(d / (u.x1 * u.x1)) : Rat(1 / (u.x2 * u.x2));
  }
  return detail::below_pi_quarter_squared(lhs_sq);
}

enum class Verdict { holds, fails, indeterminate };

inline const char* verdict_name(Verdict v) {
  switch (v) {
    case Verdict::holds: return "holds";
    case Verdict::fails: return "fails";
    case Verdict::indeterminate: return "indeterminate";
  }
  return "indeterminate";
}

// Degree-n sufficient condition for non-reducibility, in floating point with
// a relative guard band.
inline Verdict general_criterion(int n, double abs_disc, double regulator, double eps = 1e-9) {
  if (n < 2 || !(abs_disc > 0) || !(regulator > 0) || !(eps >= 0)) {
    throw std::invalid_argument("general_criterion: need n >= 2, |disc| > 0, R > 0");
  }
  const double nn = n;
  const double expo = 2.0 / std::sqrt(nn) * std::pow(regulator, 1.0 / (nn - 1.0));
  const double lhs = abs_disc / (1.0 + 0.5 * std::exp(expo));
  const double rhs = std::pow(nn * std::numbers::pi / 4.0, nn) / std::pow(std::tgamma(nn / 2.0 + 1.0), 2.0);
  if (lhs <= rhs * (1.0 - eps)) return Verdict::holds;
  if (lhs >= rhs * (1.0 + eps)) return Verdict::fails;
  return Verdict::indeterminate;
}

struct Witness {
  QuadElem a;  // reduced generator
  QuadElem x;  // non-unit with Tr(a x^2) < Tr(a)
};

struct WitnessOptions {
  int grid_points = 64;
};

// Scans a = 1 + q*c*sqrt(d), c = (u1 - 1)/(d u2), for q = 1, 1 - 1/32, ...,
// over (-1, 1]; these all lie in the reduction domain. The exact minimum of
// each trace form decides whether a non-unit beats Tr(a).
inline std::optional<Witness> find_nonunit_witness(const QuadField& F, const WitnessOptions& opts = {}) {
  const QuadElem e = F.unit_squared();
  const Rat c = (e.x1 - 1) / (Rat(F.d_int()) * e.x2);
  const int half = opts.grid_points / 2;
  for (int j = 0; j < opts.grid_points; ++j) {
    const Rat q = 1 - make_rat(Int(j), Int(half));
    const QuadElem a(1, q * c);
    const UnaryForm f(F, a);
    const MinData md = mu_and_minvecs(f);
    if (md.mu < trace(a)) {
      const QuadElem& x = md.vectors.front();
      if (F.is_unit(x)) throw std::logic_error("witness search: unit below Tr(a) for a reduced generator");
      return Witness{a, x};
    }
  }
  return std::nullopt;
}

}  // namespace unitred
