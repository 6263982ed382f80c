#pragma once

// Voronoi's neighbouring-form step, generic over the form space.
//
// A form space supplies an element type for generators a, a vector type for
// lattice points x, the pairing Tr(a x^2), exact minima, and a total
// positivity test. Starting from a with minimum mu and a direction psi that
// vanishes on the retained minimal vectors, the step finds the least rho > 0
// at which a + rho*psi acquires a new minimal vector.

#include "unitred/rational.hpp"

#include <concepts>
#include <stdexcept>
#include <vector>

namespace unitred::voronoi {

template <class S>
concept FormSpace = requires(const S& s, const typename S::Elem& e, const typename S::Vec& v,
                             const Rat& r) {
  { s.is_totally_positive(e) } -> std::convertible_to<bool>;
  { s.evaluate(e, v) } -> std::convertible_to<Rat>;
  { s.axpy(e, r, e) } -> std::same_as<typename S::Elem>;
  { s.minimum(e).value } -> std::convertible_to<Rat>;
  { s.minimum(e).vectors } -> std::convertible_to<std::vector<typename S::Vec>>;
};

template <class Elem>
struct Step {
  Elem form;
  Rat rho;
};

class WalkError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

template <FormSpace S>
Step<typename S::Elem> advance(const S& space, const typename S::Elem& a, const Rat& mu,
                               const typename S::Elem& psi, int max_iterations = 4096) {
  Rat lo = 0;
  Rat hi = -1;  // first rho known to leave the positive cone, -1 while unknown
  Rat rho = 1;
  for (int it = 0; it < max_iterations; ++it) {
    const auto b = space.axpy(a, rho, psi);
    if (!space.is_totally_positive(b)) {
      hi = rho;
      rho = (lo + rho) / 2;
      continue;
    }
    const auto m = space.minimum(b);
    const Rat value = m.value;
    if (value > mu) throw WalkError("facet direction raised the minimum; psi does not fix a facet");
    if (value < mu) {
      // Every vector below mu has Tr(psi x^2) < 0; jump to where the first one reaches mu.
      Rat best = -1;
      for (const auto& x : m.vectors) {
        const Rat slope = space.evaluate(psi, x);
        if (slope >= 0) throw WalkError("inconsistent minimum along facet ray");
        const Rat cand = (space.evaluate(a, x) - mu) / (-slope);
        if (best < 0 || cand < best) best = cand;
      }
      rho = best;
      continue;
    }
    for (const auto& x : m.vectors) {
      if (space.evaluate(psi, x) < 0) return {b, rho};
    }
    lo = rho;
    rho = hi < 0 ? Rat(2 * rho) : Rat((rho + hi) / 2);
  }
  throw WalkError("Voronoi step did not converge");
}

}  // namespace unitred::voronoi
