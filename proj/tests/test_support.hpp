#pragma once

#include <algorithm>
#include <random>
#include <vector>

#include "specrig/error.hpp"
#include "specrig/ratmap.hpp"

namespace specrig::testing {

inline Complex rand_unit(std::mt19937_64& rng) {
  std::uniform_real_distribution<double> r(0.0, 1.0), a(0.0, 6.283185307179586);
  return std::polar(std::sqrt(r(rng)), a(rng));
}

/// Coefficients uniform in the unit disk, resampled until non-degenerate.
inline RationalMap random_map(std::mt19937_64& rng, int d) {
  for (;;) {
    std::vector<Complex> a(d + 1), b(d + 1);
    for (auto& x : a) x = rand_unit(rng);
    for (auto& x : b) x = rand_unit(rng);
    try {
      return ratmap_new(ComplexPoly(a), ComplexPoly(b));
    } catch (const Error&) {
    }
  }
}

// Frobenius-normalised |det| is at most 1/2; near-singular transforms crush
// the sphere onto a point and legitimately destroy the resultant bound.
inline MobiusTransform random_mobius(std::mt19937_64& rng) {
  for (;;) {
    try {
      MobiusTransform m(rand_unit(rng), rand_unit(rng), rand_unit(rng), rand_unit(rng));
      if (std::abs(m.a() * m.d() - m.b() * m.c()) > 0.2) return m;
    } catch (const Error&) {
    }
  }
}

inline bool same_point(const ProjPoint& a, const ProjPoint& b, double tol) {
  return chordal_distance(a, b) <= tol;
}

/// Multisets of complex numbers equal up to tol after greedy matching.
inline bool same_multiset(std::vector<Complex> a, std::vector<Complex> b, double tol) {
  if (a.size() != b.size()) return false;
  for (const Complex& x : a) {
    auto it = std::min_element(b.begin(), b.end(), [&](const Complex& p, const Complex& q) {
      return std::abs(p - x) < std::abs(q - x);
    });
    if (it == b.end() || std::abs(*it - x) > tol * (1 + std::abs(x))) return false;
    b.erase(it);
  }
  return true;
}

}  // namespace specrig::testing
