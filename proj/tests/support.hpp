#pragma once

#include "zcrit/charge.hpp"
#include "zcrit/cohomology.hpp"
#include "zcrit/stability.hpp"

#include <cstdint>
#include <random>
#include <vector>

namespace zcrit::testing {

// Small random rationals: numerator in [-range, range], denominator in [1, max_den].
class Gen {
 public:
  explicit Gen(std::uint64_t seed) : rng_(seed) {}

  std::mt19937_64& engine() { return rng_; }

  long integer(long lo, long hi) { return std::uniform_int_distribution<long>(lo, hi)(rng_); }

  Rational rational(long range = 6, long max_den = 4) {
    return Rational(integer(-range, range), integer(1, max_den));
  }
  Rational nonzero_rational(long range = 6, long max_den = 4) {
    Rational q;
    do q = rational(range, max_den);
    while (q == 0);
    return q;
  }
  GaussianRational gaussian() { return {rational(), rational()}; }
  GaussianRational nonzero_gaussian() {
    GaussianRational z;
    do z = gaussian();
    while (z.is_zero());
    return z;
  }
  CohClass cls(std::size_t dim) {
    std::vector<Rational> c;
    for (std::size_t i = 0; i < dim; ++i) c.push_back(rational());
    return CohClass(std::move(c));
  }
  SheafChern sheaf(std::size_t dim, long max_rank = 4) {
    return {integer(1, max_rank), cls(dim), rational(8, 4)};
  }
  StabilityVector rho() { return {nonzero_gaussian(), nonzero_gaussian(), nonzero_gaussian()}; }
  CentralCharge charge(const SurfaceData& X) { return {rho(), cls(X.dim()), rational()}; }

  // Kähler class on the blow-up: pH - qE1 with p > q > 0.
  SurfaceData blowup() {
    const long q = integer(1, 4);
    const long p = q + integer(1, 4);
    return presets::blowup_plane(CohClass{Rational(p), Rational(-q)});
  }
  SurfaceData surface() { return integer(0, 1) == 0 ? presets::projective_plane() : blowup(); }

 private:
  std::mt19937_64 rng_;
};

// Graded pieces (H^0, H^2, H^4) of a cohomology class on a surface, multiplied by the cup product.
// Used to recompute charges from integral of sum_j rho_j omega^j ch(E) U, independently of the
// closed-form weights in the library.
struct Graded {
  Rational h0;
  CohClass h2;
  Rational h4;
};

inline Graded cup(const Graded& a, const Graded& b, const SurfaceData& X) {
  return {a.h0 * b.h0, a.h0 * b.h2 + b.h0 * a.h2, a.h0 * b.h4 + b.h0 * a.h4 + intersect(a.h2, b.h2, X)};
}

inline GaussianRational charge_oracle(const CentralCharge& Z, const SurfaceData& X, const SheafChern& E) {
  const std::size_t d = X.dim();
  const Graded ch{Rational(E.rank()), E.ch1(), E.ch2()};
  const Graded U{1, Z.u1, Z.u2};
  const Graded chU = cup(ch, U, X);
  Graded w_power{1, CohClass::zero(d), 0};
  const Graded w{0, X.kahler(), 0};
  GaussianRational total;
  for (int j = 0; j < 3; ++j) {
    // Degree-4 part of omega^j ch(E) U.
    total += Z.rho[static_cast<std::size_t>(j)] * cup(w_power, chU, X).h4;
    w_power = cup(w_power, w, X);
  }
  return total;
}

}  // namespace zcrit::testing
