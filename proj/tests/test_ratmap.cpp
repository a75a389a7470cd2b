#include <random>

#include "doctest.h"
#include "specrig/error.hpp"
#include "specrig/ratmap.hpp"
#include "test_support.hpp"

using namespace specrig;
using namespace specrig::testing;

namespace {

// sum |a_k| |z|^k / |p(z)| in the chart where |z| <= 1.
double eval_condition(const ComplexPoly& p, int degree, Complex z) {
  const bool inv = std::abs(z) > 1.0;
  const Complex u = inv ? 1.0 / z : z;
  double s = 0, uk = 1;
  Complex v{}, zk = 1.0;
  for (int k = 0; k <= degree; ++k) {
    const Complex a = inv ? p.coeff(degree - k) : p.coeff(k);
    s += std::abs(a) * uk;
    v += a * zk;
    uk *= std::abs(u);
    zk *= u;
  }
  return s / std::abs(v);
}

const RationalMap z2 = ratmap_new({0.0, 0.0, 1.0}, {1.0});
const RationalMap z_plus_inv = ratmap_new({1.0, 0.0, 1.0}, {0.0, 1.0});

bool same_map(const RationalMap& f, const ComplexPoly& num, const ComplexPoly& den) {
  const RationalMap g = ratmap_new(num, den);
  if (f.degree() != g.degree()) return false;
  for (int k = 0; k <= f.degree(); ++k) {
    if (std::abs(f.num().coeff(k) - g.num().coeff(k)) > 1e-10) return false;
    if (std::abs(f.den().coeff(k) - g.den().coeff(k)) > 1e-10) return false;
  }
  return true;
}

}  // namespace

TEST_CASE("construction and degeneracy") {
  CHECK(z2.degree() == 2);
  CHECK(z_plus_inv.degree() == 2);
  CHECK_THROWS_AS(ratmap_new({-1.0, 0.0, 1.0}, {-1.0, 1.0}), Error);
  try {
    ratmap_new({-1.0, 0.0, 1.0}, {-1.0, 1.0});
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::DegenerateMap);
  }
  CHECK_THROWS_AS(ratmap_new({}, {}), Error);
}

TEST_CASE("normalisation puts a unit leading coefficient on den") {
  const RationalMap f = ratmap_new({2.0, 0.0, 4.0}, {0.0, 2.0});
  CHECK(f.den().leading() == Complex(1.0));
  CHECK(f.num().coeff(2) == Complex(2.0));
}

TEST_CASE("pointwise application") {
  CHECK(z2(ProjPoint::infinity()).is_infinity());
  CHECK(z_plus_inv(0.0).is_infinity());
  CHECK(ratmap_new({-1.0, 0.0, 1.0}, {1.0})(0.0) == ProjPoint(-1.0));
  CHECK(same_point(z_plus_inv(ProjPoint::infinity()), ProjPoint::infinity(), 0));
  CHECK(same_point(z2(1e200), ProjPoint::infinity(), 1e-100));
}

TEST_CASE("chordal metric") {
  CHECK(chordal_distance(0.0, ProjPoint::infinity()) == doctest::Approx(1.0));
  CHECK(chordal_distance(1.0, -1.0) == doctest::Approx(1.0));
  CHECK(chordal_distance(2.0, 2.0) == 0.0);
  CHECK(chordal_distance(1e8, ProjPoint::infinity()) == doctest::Approx(1e-8).scale(0));
}

TEST_CASE("iterates") {
  CHECK(same_map(ratmap_iterate(z2, 3), ComplexPoly::monomial(1.0, 8), {1.0}));
  CHECK(same_map(ratmap_iterate(ratmap_new({-1.0, 0.0, 1.0}, {1.0}), 2), {0.0, 0.0, -2.0, 0.0, 1.0},
                 {1.0}));
  CHECK(same_map(ratmap_iterate(z_plus_inv, 2), {1.0, 0.0, 3.0, 0.0, 1.0}, {0.0, 1.0, 0.0, 1.0}));
  CHECK_THROWS_AS(ratmap_iterate(z2, 11), Error);
}

TEST_CASE("iterate agrees with repeated application") {
  std::mt19937_64 rng(1);
  for (int trial = 0; trial < 10; ++trial) {
    const RationalMap f = random_map(rng, 2 + trial % 2);
    const RationalMap f3 = ratmap_iterate(f, 3);
    const RationalMap f1 = ratmap_iterate(f, 1);
    const RationalMap f2 = ratmap_iterate(f, 2);
    for (int s = 0; s < 20; ++s) {
      const ProjPoint x = rand_unit(rng) * 2.0;
      ProjPoint y = x;
      for (int k = 0; k < 3; ++k) y = f(y);
      // Degree-27 coefficients evaluate with error about eps times the
      // condition number, which reaches 1e9 at some points.
      const double kappa = eval_condition(f3.num(), 27, x.value()) +
                           eval_condition(f3.den(), 27, x.value());
      CHECK(chordal_distance(f3(x), y) <= std::max(1e-9, 64 * 2.2e-16 * kappa));
      CHECK(same_point(f3(x), f1(f2(x)), 1e-8));
    }
  }
}

TEST_CASE("conjugation") {
  CHECK(same_map(ratmap_conjugate(z2, MobiusTransform::identity()), {0.0, 0.0, 1.0}, {1.0}));
  CHECK(same_map(ratmap_conjugate(z2, {1.0, 1.0, 0.0, 1.0}), {2.0, -2.0, 1.0}, {1.0}));
  CHECK(same_map(ratmap_conjugate(z2, {0.0, 1.0, 1.0, 0.0}), {0.0, 0.0, 1.0}, {1.0}));
}

TEST_CASE("conjugation is a group action") {
  std::mt19937_64 rng(2);
  for (int trial = 0; trial < 10; ++trial) {
    const RationalMap f = random_map(rng, 2 + trial % 2);
    const MobiusTransform phi = random_mobius(rng), psi = random_mobius(rng);
    const RationalMap a = ratmap_conjugate(ratmap_conjugate(f, phi), psi);
    const RationalMap b = ratmap_conjugate(f, psi.compose(phi));
    for (int s = 0; s < 20; ++s) {
      const ProjPoint x = rand_unit(rng) * 3.0;
      CHECK(same_point(a(x), b(x), 1e-9));
    }
  }
}

TEST_CASE("Mobius from triples") {
  const std::array<ProjPoint, 3> from{0.0, ProjPoint::infinity(), 1.0};
  const std::array<ProjPoint, 3> to{2.0, Complex(0, 1), -1.0};
  const MobiusTransform m = MobiusTransform::from_triples(from, to);
  for (int k = 0; k < 3; ++k) CHECK(same_point(m(from[k]), to[k], 1e-12));
  const auto id = m.inverse().compose(m);
  CHECK(same_point(id(0.3), 0.3, 1e-12));
}

TEST_CASE("critical points") {
  auto cp = critical_points(z2);
  REQUIRE(cp.size() == 2);
  CHECK(same_point(cp[0].point, 0.0, 1e-12));
  CHECK(cp[1].point.is_infinity());
  cp = critical_points(ratmap_new({0.3, 0.0, 1.0}, {1.0}));
  REQUIRE(cp.size() == 2);
  CHECK(cp[1].point.is_infinity());
  cp = critical_points(z_plus_inv);
  REQUIRE(cp.size() == 2);
  CHECK(same_point(cp[0].point, -1.0, 1e-12));
  CHECK(same_point(cp[1].point, 1.0, 1e-12));
  std::mt19937_64 rng(4);
  for (int trial = 0; trial < 15; ++trial) {
    const int d = 2 + trial % 3;
    int total = 0;
    for (const auto& c : critical_points(random_map(rng, d))) total += c.multiplicity;
    CHECK(total == 2 * d - 2);
  }
}

TEST_CASE("both charts agree near the unit circle") {
  std::mt19937_64 rng(6);
  const RationalMap f = random_map(rng, 3);
  std::uniform_real_distribution<double> rad(0.5, 2.0), ang(0, 6.283185307179586);
  for (int s = 0; s < 50; ++s) {
    const Complex z = std::polar(rad(rng), ang(rng));
    const LocalImage a = f.local({z, false}, false);
    const LocalImage b = f.local({1.0 / z, true}, false);
    CHECK(std::abs(a.image.u - b.image.u) <= 1e-10 * std::max(1.0, std::abs(a.image.u)));
  }
}
