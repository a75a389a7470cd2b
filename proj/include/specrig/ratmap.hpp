#pragma once

#include <array>
#include <optional>
#include <vector>

#include "specrig/cpoly.hpp"

namespace specrig {

/// A point of the Riemann sphere. Large finite values stay finite; only
/// Infinity is the point at infinity.
class ProjPoint {
 public:
  ProjPoint() = default;
  ProjPoint(Complex z) : z_(z) {}  // NOLINT(google-explicit-constructor)
  ProjPoint(double x) : z_(x) {}   // NOLINT(google-explicit-constructor)
  static ProjPoint infinity() {
    ProjPoint p;
    p.inf_ = true;
    return p;
  }

  bool is_infinity() const { return inf_; }
  /// Finite value; undefined (returns 0) at infinity.
  Complex value() const { return inf_ ? Complex{} : z_; }
  /// |z|, +inf at infinity.
  double modulus() const;

  friend bool operator==(const ProjPoint& a, const ProjPoint& b) {
    return a.inf_ == b.inf_ && (a.inf_ || a.z_ == b.z_);
  }

 private:
  Complex z_{};
  bool inf_ = false;
};

/// |x - y| / (sqrt(1 + |x|^2) sqrt(1 + |y|^2)), extended to infinity.
double chordal_distance(const ProjPoint& x, const ProjPoint& y);

/// Local coordinate of a point: u itself when |z| <= 1, else u = 1/z
/// (inverted chart, with infinity at u = 0).
struct ChartPoint {
  Complex u;
  bool inverted = false;

  static ChartPoint from(const ProjPoint& p);
  ProjPoint to_point() const;
};

/// Element of PGL2(C) acting by z -> (a z + b) / (c z + d), stored with unit
/// Frobenius norm.
class MobiusTransform {
 public:
  MobiusTransform(Complex a, Complex b, Complex c, Complex d);
  static MobiusTransform identity() { return {1.0, 0.0, 0.0, 1.0}; }
  /// The unique transform sending (z1, z2, z3) to (w1, w2, w3).
  static MobiusTransform from_triples(const std::array<ProjPoint, 3>& from,
                                      const std::array<ProjPoint, 3>& to);

  Complex a() const { return m_[0]; }
  Complex b() const { return m_[1]; }
  Complex c() const { return m_[2]; }
  Complex d() const { return m_[3]; }

  ProjPoint operator()(const ProjPoint& x) const;
  MobiusTransform inverse() const;
  /// (this o other)(z) = this(other(z)).
  MobiusTransform compose(const MobiusTransform& other) const;

 private:
  std::array<Complex, 4> m_;
};

/// Chart-to-chart image of a point together with the local derivative.
struct LocalImage {
  ChartPoint image;
  Complex derivative;  // d(image chart) / d(source chart)
};

/// A degree-d rational map num/den on the Riemann sphere.
///
/// ratmap_new-style construction (`make`) rejects pairs with a vanishing
/// scaled resultant and normalises so that den's leading coefficient is 1
/// (num's, when den is constant).
class RationalMap {
 public:
  static RationalMap make(ComplexPoly num, ComplexPoly den);
  /// Skips the resultant test; for results of composing valid maps.
  static RationalMap make_trusted(ComplexPoly num, ComplexPoly den, int degree);

  int degree() const { return degree_; }
  const ComplexPoly& num() const { return num_; }
  const ComplexPoly& den() const { return den_; }

  ProjPoint operator()(const ProjPoint& x) const;
  /// One step in charts. When `image_inverted` is given the image is
  /// expressed in that chart, otherwise in the chart selected by |f(x)| <= 1.
  LocalImage local(const ChartPoint& x, std::optional<bool> image_inverted = {}) const;
  /// Spherical derivative |f'(x)| (1 + |x|^2) / (1 + |f(x)|^2).
  double spherical_derivative(const ProjPoint& x) const;

  /// Homogeneous lift (X, Y) -> (P(X, Y), Q(X, Y)) of formal degree d.
  std::array<Complex, 2> lift(Complex x, Complex y) const;

 private:
  RationalMap(ComplexPoly num, ComplexPoly den, int degree);
  ComplexPoly num_, den_;
  ComplexPoly rnum_, rden_;  // u^d num(1/u), u^d den(1/u)
  int degree_ = 0;
};

/// Scaled-resultant threshold below which a pair is degenerate.
inline constexpr double kDegenerateResultant = 1e-10;

RationalMap ratmap_new(ComplexPoly num, ComplexPoly den);

/// outer o inner, by homogeneous substitution.
RationalMap ratmap_compose(const RationalMap& outer, const RationalMap& inner,
                           bool validate = true);

/// f^n by repeated composition; throws DegreeCapExceeded when d^n > cap.
RationalMap ratmap_iterate(const RationalMap& f, int n, int degree_cap = 1024);

/// phi o f o phi^{-1}.
RationalMap ratmap_conjugate(const RationalMap& f, const MobiusTransform& phi);

struct CriticalPoint {
  ProjPoint point;
  int multiplicity = 1;
};

/// Zeros of the Wronskian num' den - num den' plus the deficit at infinity;
/// multiplicities sum to 2d - 2.
std::vector<CriticalPoint> critical_points(const RationalMap& f, const RootOptions& opts = {});

/// [x, f(x), ..., f^n(x)] by pointwise application.
std::vector<ProjPoint> orbit(const RationalMap& f, const ProjPoint& x, int n);

}  // namespace specrig
