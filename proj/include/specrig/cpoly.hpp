#pragma once

#include <complex>
#include <cstdint>
#include <initializer_list>
#include <span>
#include <vector>

namespace specrig {

using Complex = std::complex<double>;

/// Relative threshold below which trailing coefficients are dropped.
inline constexpr double kZeroThreshold = 1e-12;

/// Dense polynomial with complex coefficients in ascending degree order.
///
/// Construction trims trailing coefficients whose modulus is at most
/// kZeroThreshold times the largest coefficient modulus, so the leading
/// coefficient of a nonzero polynomial is always significant. Scaling,
/// differentiation and reversal only drop exact zeros, since they cannot
/// cancel. The zero polynomial has no coefficients and reports degree 0.
class ComplexPoly {
 public:
  ComplexPoly() = default;
  explicit ComplexPoly(std::vector<Complex> coeffs);
  ComplexPoly(std::initializer_list<Complex> coeffs);

  /// Coefficients produced by a computation, where magnitude[k] bounds the
  /// size of the terms summed into coefficient k. Trailing coefficients are
  /// dropped only when they are at most kZeroThreshold * magnitude[k], so a
  /// small but genuine leading term of a high-degree iterate survives.
  static ComplexPoly from_computed(std::vector<Complex> coeffs, std::span<const double> magnitude);

  static ComplexPoly constant(Complex c);
  static ComplexPoly monomial(Complex c, int k);
  /// The identity polynomial z.
  static ComplexPoly z();

  bool is_zero() const { return coeffs_.empty(); }
  int degree() const { return coeffs_.empty() ? 0 : static_cast<int>(coeffs_.size()) - 1; }
  std::span<const Complex> coeffs() const { return coeffs_; }
  /// Coefficient of z^k, zero past the degree.
  Complex coeff(int k) const;
  Complex leading() const { return coeffs_.empty() ? Complex{} : coeffs_.back(); }
  double max_abs_coeff() const;
  bool all_finite() const;

  Complex operator()(Complex z) const;
  /// Value and first derivative by a single Horner pass.
  std::pair<Complex, Complex> eval_with_derivative(Complex z) const;
  ComplexPoly derivative() const;

  /// Coefficients of z^n p(1/z), padded to formal degree n >= degree().
  ComplexPoly reversed(int n) const;

  ComplexPoly& operator+=(const ComplexPoly& o);
  ComplexPoly& operator-=(const ComplexPoly& o);
  ComplexPoly& operator*=(Complex s);

  friend ComplexPoly operator+(ComplexPoly a, const ComplexPoly& b) { return a += b; }
  friend ComplexPoly operator-(ComplexPoly a, const ComplexPoly& b) { return a -= b; }
  friend ComplexPoly operator*(ComplexPoly a, Complex s) { return a *= s; }
  friend ComplexPoly operator*(Complex s, ComplexPoly a) { return a *= s; }
  friend ComplexPoly operator*(const ComplexPoly& a, const ComplexPoly& b);

 private:
  void trim();
  void trim_exact_zeros();
  std::vector<Complex> coeffs_;
};

/// r(z) = p(q(z)). Throws Error(NonFinite) if the result overflows.
ComplexPoly poly_compose(const ComplexPoly& p, const ComplexPoly& q);

/// Sylvester determinant with the deg(q) rows of p first, coefficients in
/// descending order. Res(z, z - 3) = -3, Res(z^2 + 1, z^2 - 1) = 4.
Complex poly_resultant(const ComplexPoly& p, const ComplexPoly& q);

/// |Res(p, q)| / (||p||_2^deg q * ||q||_2^deg p), in [0, 1] by Hadamard.
double scaled_resultant(const ComplexPoly& p, const ComplexPoly& q);

struct RootCluster {
  Complex value;
  int multiplicity = 1;
  double residual = 0.0;  // max |p| over the cluster's raw roots
};

struct RootOptions {
  /// Relative Aberth correction size regarded as converged.
  double tol = 1e-14;
  int max_iterations = 2000;
  /// Seeds the angular perturbation of the starting circles.
  std::uint64_t seed = 0;
  /// 0 selects double precision; otherwise MPFR mantissa bits (64..4096).
  int precision_bits = 0;
  bool parallel = true;
  /// Lower bound for the clustering radius.
  double cluster_radius = 1e-6;
  /// Backward-error acceptance for each returned cluster centre.
  double acceptance = 1e-8;
};

/// All roots of p (degree >= 1) grouped into multiplicity clusters.
/// Throws Error(NonConvergence) when the iteration cap is hit with roots
/// still moving and not numerically zero.
std::vector<RootCluster> poly_roots(const ComplexPoly& p, const RootOptions& opts = {});

/// Relative backward error |p(z)| / sum |a_k| |z|^k.
double backward_error(const ComplexPoly& p, Complex z);

}  // namespace specrig
