#pragma once

// Shared helpers for the unit tests: seeded generators and independent
// reference formulas.

#include <string>
#include <vector>

#include "superint/multipoly.hpp"
#include "superint/rational.hpp"
#include "superint/splitmix.hpp"

namespace testing_support {

using superint::MultiIndex;
using superint::MultiPoly;
using superint::Rational;
using superint::SplitMix64;

inline MultiPoly random_poly(SplitMix64& rng, const std::vector<std::string>& vars, unsigned max_deg,
                             int terms, long coef_bound = 5, long max_den = 4) {
  MultiPoly p(vars);
  for (int t = 0; t < terms; ++t) {
    std::vector<unsigned> e(vars.size(), 0);
    long budget = rng.integer(0, max_deg);
    for (long k = 0; k < budget; ++k) ++e[static_cast<std::size_t>(rng.integer(0, static_cast<long>(vars.size()) - 1))];
    p.add_term(MultiIndex(e), rng.rational(-coef_bound, coef_bound, max_den));
  }
  return p;
}

inline Rational rising(const Rational& a, unsigned k) {
  Rational r(1);
  for (unsigned i = 0; i < k; ++i) r *= a + Rational(static_cast<long>(i));
  return r;
}

/// sum_k (-1)^k C(N+alpha, N-k) x^k / k!
inline MultiPoly laguerre_series(unsigned n, const Rational& alpha) {
  MultiPoly p({"x"});
  for (unsigned k = 0; k <= n; ++k) {
    Rational c = superint::binomial(alpha + Rational(static_cast<long>(n)), n - k) / superint::factorial(k);
    if (k % 2) c = -c;
    p.add_term(MultiIndex{k}, c);
  }
  return p;
}

/// Hypergeometric form: (1/n!) sum_m C(n,m) (a+m+1)_{n-m} (a+b+n+1)_m ((z-1)/2)^m.
inline MultiPoly jacobi_series(unsigned n, const Rational& a, const Rational& b) {
  MultiPoly half_shift({"z"});
  half_shift.add_term(MultiIndex{1u}, Rational(1, 2));
  half_shift.add_term(MultiIndex{0u}, Rational(-1, 2));
  MultiPoly p({"z"});
  const Rational nn(static_cast<long>(n));
  for (unsigned m = 0; m <= n; ++m) {
    Rational c = superint::binomial(nn, m) * rising(a + Rational(static_cast<long>(m)) + Rational(1), n - m) *
                 rising(a + b + nn + Rational(1), m) / superint::factorial(n);
    p += half_shift.pow(m) * c;
  }
  return p;
}

}  // namespace testing_support
