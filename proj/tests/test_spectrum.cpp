#include <cmath>
#include <numbers>

#include "doctest.h"
#include "specrig/error.hpp"
#include "specrig/spectrum.hpp"
#include "test_support.hpp"

using namespace specrig;
using namespace specrig::testing;

namespace {

const RationalMap z2 = ratmap_new({0.0, 0.0, 1.0}, {1.0});
const RationalMap z2m1 = ratmap_new({-1.0, 0.0, 1.0}, {1.0});
const RationalMap z2m2 = ratmap_new({-2.0, 0.0, 1.0}, {1.0});
const RationalMap z_plus_inv = ratmap_new({1.0, 0.0, 1.0}, {0.0, 1.0});
const double sqrt5 = std::sqrt(5.0);

bool contains(const PeriodicPointSet& s, const ProjPoint& p, int mult) {
  for (const auto& q : s.points)
    if (same_point(q.point, p, 1e-9) && q.multiplicity == mult) return true;
  return false;
}

int total_multiplicity(const PeriodicPointSet& s) {
  int t = 0;
  for (const auto& p : s.points) t += p.multiplicity;
  return t;
}

}  // namespace

TEST_CASE("fixed points of z^2") {
  auto s = fixed_points(z2, 1);
  CHECK(s.total == 3);
  CHECK(s.points.size() == 3);
  CHECK(contains(s, 0.0, 1));
  CHECK(contains(s, 1.0, 1));
  CHECK(contains(s, ProjPoint::infinity(), 1));
  s = fixed_points(z2, 2);
  CHECK(total_multiplicity(s) == 5);
  const Complex w = std::polar(1.0, 2 * std::numbers::pi / 3);
  CHECK(contains(s, w, 1));
  CHECK(contains(s, std::conj(w), 1));
}

TEST_CASE("period-2 points of z^2 - 1") {
  const auto s = fixed_points(z2m1, 2);
  CHECK(total_multiplicity(s) == 5);
  CHECK(contains(s, 0.0, 1));
  CHECK(contains(s, -1.0, 1));
  CHECK(contains(s, (1 + sqrt5) / 2, 1));
  CHECK(contains(s, (1 - sqrt5) / 2, 1));
  CHECK(contains(s, ProjPoint::infinity(), 1));
}

TEST_CASE("triple parabolic point of z + 1/z") {
  const auto s = fixed_points(z_plus_inv, 1);
  REQUIRE(s.points.size() == 1);
  CHECK(s.points[0].point.is_infinity());
  CHECK(s.points[0].multiplicity == 3);
  CHECK(same_multiset(multiplier_spectrum(z_plus_inv, 1), {1.0, 1.0, 1.0}, 1e-12));
}

TEST_CASE("multipliers") {
  CHECK(std::abs(multiplier(z2, 1.0, 1) - 2.0) < 1e-15);
  CHECK(std::abs(multiplier(z2, ProjPoint::infinity(), 1)) == 0.0);
  CHECK(std::abs(multiplier(z2m1, 0.0, 2)) == 0.0);
  CHECK_THROWS_AS(multiplier(z2, 0.5, 1), Error);
  try {
    multiplier(z2, 0.5, 1);
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::NotPeriodic);
  }
}

TEST_CASE("multiplier spectra with closed forms") {
  CHECK(same_multiset(multiplier_spectrum(z2m1, 1), {1 + sqrt5, 1 - sqrt5, 0.0}, 1e-12));
  CHECK(same_multiset(multiplier_spectrum(z2m1, 1),
                      {3.2360679774997897, -1.2360679774997897, 0.0}, 1e-12));
  for (int d = 2; d <= 3; ++d) {
    const RationalMap f = ratmap_new(ComplexPoly::monomial(1.0, d), {1.0});
    for (int n = 1; n <= 3; ++n) {
      const double dn = std::pow(d, n);
      std::vector<Complex> expected(static_cast<std::size_t>(dn) - 1, dn);
      expected.push_back(0.0);
      expected.push_back(0.0);
      CHECK(same_multiset(multiplier_spectrum(f, n), expected, 1e-8));
    }
  }
}

TEST_CASE("length spectrum") {
  auto l = length_spectrum(z2m1, 1);
  std::sort(l.begin(), l.end());
  REQUIRE(l.size() == 3);
  CHECK(l[0] == doctest::Approx(0.0));
  CHECK(l[1] == doctest::Approx(sqrt5 - 1));
  CHECK(l[2] == doctest::Approx(sqrt5 + 1));

  std::mt19937_64 rng(21);
  for (int trial = 0; trial < 5; ++trial) {
    const RationalMap f = random_map(rng, 2);
    std::vector<Complex> cn, cd;
    for (const auto& c : f.num().coeffs()) cn.push_back(std::conj(c));
    for (const auto& c : f.den().coeffs()) cd.push_back(std::conj(c));
    const RationalMap g = ratmap_new(ComplexPoly(cn), ComplexPoly(cd));
    for (int n = 1; n <= 2; ++n) {
      auto a = length_spectrum(f, n), b = length_spectrum(g, n);
      std::sort(a.begin(), a.end());
      std::sort(b.begin(), b.end());
      for (std::size_t i = 0; i < a.size(); ++i) CHECK(a[i] == doctest::Approx(b[i]).epsilon(1e-8));
    }
  }
}

TEST_CASE("spectrum coordinates") {
  auto e = spectrum_coordinates(std::vector<Complex>{0.0, 0.0, 2.0});
  CHECK(same_multiset({e[0]}, {2.0}, 0));
  CHECK(e[1] == Complex(0.0));
  CHECK(e[2] == Complex(0.0));
  e = spectrum_coordinates(std::vector<Complex>{1.0, 1.0, 1.0});
  CHECK(e == std::vector<Complex>{3.0, 3.0, 1.0});
  e = spectrum_coordinates(std::vector<Complex>{1 + sqrt5, 1 - sqrt5, 0.0});
  CHECK(std::abs(e[0] - 2.0) < 1e-14);
  CHECK(std::abs(e[1] + 4.0) < 1e-14);
  CHECK(std::abs(e[2]) < 1e-14);
}

TEST_CASE("scaled coordinates reproduce the unscaled ones") {
  std::vector<Complex> s{3.0, Complex(0, -5), 0.5, 2.0};
  double r = 0;
  const auto scaled = scaled_spectrum_coordinates(s, r);
  CHECK(r == 5.0);
  const auto plain = spectrum_coordinates(s);
  for (std::size_t k = 0; k < plain.size(); ++k)
    CHECK(std::abs(scaled[k] * std::pow(r, k + 1) - plain[k]) < 1e-12 * std::abs(plain[k]));
}

TEST_CASE("tau tables") {
  const auto t = tau(z2, 2);
  REQUIRE(t.periods.size() == 2);
  CHECK(same_multiset(t.periods[0].multipliers, {0.0, 0.0, 2.0}, 1e-12));
  CHECK(same_multiset(t.periods[1].multipliers, {0.0, 0.0, 4.0, 4.0, 4.0}, 1e-12));
  const auto u = tau(z2m2, 1);
  CHECK(same_multiset(u.periods[0].multipliers, {4.0, -2.0, 0.0}, 1e-12));
}

TEST_CASE("compare spectra") {
  const auto a = compare_spectra(tau(z2, 2), tau(z2, 2));
  CHECK(a.distance == 0.0);
  CHECK(a.equal);
  const auto b = compare_spectra(tau(z2, 1), tau(z2m1, 1));
  CHECK(b.distance > 1e-2);
  CHECK_FALSE(b.equal);
  CHECK_THROWS_AS(compare_spectra(tau(z2, 1), tau(z2, 2)), Error);
}

TEST_CASE("tau is invariant under conjugation") {
  std::mt19937_64 rng(31);
  for (int trial = 0; trial < 12; ++trial) {
    const RationalMap f = random_map(rng, 2 + trial % 2);
    const RationalMap g = ratmap_conjugate(f, random_mobius(rng));
    const auto c = compare_spectra(tau(f, 3), tau(g, 3));
    CHECK(c.distance < 1e-6);
  }
}

TEST_CASE("fixed point counts, nesting and the chain rule") {
  std::mt19937_64 rng(41);
  for (int trial = 0; trial < 8; ++trial) {
    const int d = 2 + trial % 2;
    const RationalMap f = random_map(rng, d);
    const int nmax = d == 2 ? 4 : 3;
    std::vector<PeriodicPointSet> sets;
    for (int n = 1; n <= nmax; ++n) {
      sets.push_back(fixed_points(f, n));
      CHECK(total_multiplicity(sets.back()) == static_cast<int>(std::pow(d, n)) + 1);
    }
    // Fix(f) and Fix(f^2) sit inside Fix(f^{2k}).
    for (int m = 1; m <= 2; ++m) {
      const int n = 2 * m;
      if (n > nmax) continue;
      for (const auto& p : sets[m - 1].points) {
        bool found = false;
        for (const auto& q : sets[n - 1].points) found |= same_point(p.point, q.point, 1e-6);
        CHECK(found);
      }
    }
    const RationalMap f2 = ratmap_iterate(f, 2);
    for (const auto& p : sets[1].points) {
      const Complex a = multiplier(f, p.point, 2);
      const Complex b = multiplier(f2, p.point, 1);
      CHECK(std::abs(a - b) <= 1e-8 * std::max(1.0, std::abs(a)));
    }
  }
}

TEST_CASE("holomorphic index identity") {
  CHECK(std::abs(index_sum_check(z2) - 1.0) < 1e-14);
  CHECK(std::abs(index_sum_check(z2m1) - 1.0) < 1e-12);
  CHECK_THROWS_AS(index_sum_check(z_plus_inv), Error);
  std::mt19937_64 rng(51);
  for (int trial = 0; trial < 20; ++trial) {
    try {
      CHECK(std::abs(index_sum_check(random_map(rng, 3)) - 1.0) < 1e-6);
    } catch (const Error& e) {
      CHECK(e.code() == ErrorCode::NearParabolic);
    }
  }
}

TEST_CASE("degree caps") {
  CHECK_THROWS_AS(fixed_points(z2, 11), Error);
  SpectrumOptions opts;
  opts.root_degree_cap = 8;
  CHECK_NOTHROW(fixed_points(z2, 2, opts));
  CHECK_THROWS_AS(fixed_points(z2, 3, opts), Error);
}

TEST_CASE("close distinct periodic points stay separate") {
  // Three simple points of period 3 lie within 2e-5 of each other near
  // 0.672 - 0.782i, closer than the spacing-based clustering radius.
  const RationalMap f = ratmap_new(
      {{0.73099568763538658, 1.1276084886384228}, {0.67722575942786933, -1.3035126609307623},
       {0.83960354708868901, 0.53417097417558679}, {-0.14663011692309061, -1.2386221322476112}},
      {{0.95636562506228673, -0.95117149313823468}, {-0.75195654896411435, 1.117090254347908},
       {-0.12773272926542137, -0.38285011577562778}, {1.0, 0.0}});
  const PeriodicPointSet s = fixed_points(f, 3);
  CHECK(total_multiplicity(s) == 28);
  int near = 0;
  for (const auto& p : s.points) {
    CHECK(p.multiplicity == 1);
    if (chordal_distance(p.point, Complex(0.672, -0.7818)) < 1e-4) ++near;
  }
  CHECK(near == 3);
}
