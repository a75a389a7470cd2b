#include "specrig/cpoly.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>

#include "big_roots.hpp"
#include "dense_eval.hpp"
#include "specrig/error.hpp"
#include "specrig/rootfind.hpp"

namespace specrig {

ComplexPoly::ComplexPoly(std::vector<Complex> coeffs) : coeffs_(std::move(coeffs)) { trim(); }

ComplexPoly::ComplexPoly(std::initializer_list<Complex> coeffs) : coeffs_(coeffs) { trim(); }

ComplexPoly ComplexPoly::from_computed(std::vector<Complex> coeffs,
                                       std::span<const double> magnitude) {
  ComplexPoly p;
  p.coeffs_ = std::move(coeffs);
  while (!p.coeffs_.empty()) {
    const std::size_t k = p.coeffs_.size() - 1;
    const double m = k < magnitude.size() ? magnitude[k] : 0.0;
    if (std::abs(p.coeffs_.back()) > kZeroThreshold * m) break;
    p.coeffs_.pop_back();
  }
  return p;
}

ComplexPoly ComplexPoly::constant(Complex c) { return ComplexPoly({c}); }

ComplexPoly ComplexPoly::monomial(Complex c, int k) {
  std::vector<Complex> v(static_cast<std::size_t>(k) + 1);
  v.back() = c;
  return ComplexPoly(std::move(v));
}

ComplexPoly ComplexPoly::z() { return ComplexPoly({0.0, 1.0}); }

void ComplexPoly::trim_exact_zeros() {
  while (!coeffs_.empty() && coeffs_.back() == Complex{}) coeffs_.pop_back();
}

void ComplexPoly::trim() {
  const double cut = kZeroThreshold * max_abs_coeff();
  while (!coeffs_.empty() && std::abs(coeffs_.back()) <= cut) coeffs_.pop_back();
}

Complex ComplexPoly::coeff(int k) const {
  return (k >= 0 && k < static_cast<int>(coeffs_.size())) ? coeffs_[k] : Complex{};
}

double ComplexPoly::max_abs_coeff() const {
  double m = 0;
  for (const auto& c : coeffs_) m = std::max(m, std::abs(c));
  return m;
}

bool ComplexPoly::all_finite() const {
  return std::all_of(coeffs_.begin(), coeffs_.end(), [](const Complex& c) {
    return std::isfinite(c.real()) && std::isfinite(c.imag());
  });
}

Complex ComplexPoly::operator()(Complex z) const {
  Complex r{};
  for (auto it = coeffs_.rbegin(); it != coeffs_.rend(); ++it) r = r * z + *it;
  return r;
}

std::pair<Complex, Complex> ComplexPoly::eval_with_derivative(Complex z) const {
  Complex p{}, dp{};
  for (auto it = coeffs_.rbegin(); it != coeffs_.rend(); ++it) {
    dp = dp * z + p;
    p = p * z + *it;
  }
  return {p, dp};
}

ComplexPoly ComplexPoly::derivative() const {
  if (coeffs_.size() <= 1) return {};
  std::vector<Complex> d(coeffs_.size() - 1);
  for (std::size_t k = 1; k < coeffs_.size(); ++k) d[k - 1] = coeffs_[k] * static_cast<double>(k);
  ComplexPoly out;
  out.coeffs_ = std::move(d);
  out.trim_exact_zeros();
  return out;
}

ComplexPoly ComplexPoly::reversed(int n) const {
  std::vector<Complex> r(static_cast<std::size_t>(n) + 1);
  for (int k = 0; k <= std::min(n, degree()); ++k) r[n - k] = coeff(k);
  ComplexPoly out;
  out.coeffs_ = std::move(r);
  out.trim_exact_zeros();
  return out;
}

ComplexPoly& ComplexPoly::operator+=(const ComplexPoly& o) {
  if (o.coeffs_.size() > coeffs_.size()) coeffs_.resize(o.coeffs_.size());
  for (std::size_t k = 0; k < o.coeffs_.size(); ++k) coeffs_[k] += o.coeffs_[k];
  trim();
  return *this;
}

ComplexPoly& ComplexPoly::operator-=(const ComplexPoly& o) {
  if (o.coeffs_.size() > coeffs_.size()) coeffs_.resize(o.coeffs_.size());
  for (std::size_t k = 0; k < o.coeffs_.size(); ++k) coeffs_[k] -= o.coeffs_[k];
  trim();
  return *this;
}

ComplexPoly& ComplexPoly::operator*=(Complex s) {
  for (auto& c : coeffs_) c *= s;
  trim_exact_zeros();
  return *this;
}

ComplexPoly operator*(const ComplexPoly& a, const ComplexPoly& b) {
  if (a.is_zero() || b.is_zero()) return {};
  std::vector<Complex> r(a.coeffs_.size() + b.coeffs_.size() - 1);
  for (std::size_t i = 0; i < a.coeffs_.size(); ++i)
    for (std::size_t j = 0; j < b.coeffs_.size(); ++j) r[i + j] += a.coeffs_[i] * b.coeffs_[j];
  return ComplexPoly(std::move(r));
}

ComplexPoly poly_compose(const ComplexPoly& p, const ComplexPoly& q) {
  ComplexPoly r;
  for (int k = p.degree(); k >= 0 && !p.is_zero(); --k) r = r * q + ComplexPoly::constant(p.coeff(k));
  if (!r.all_finite()) throw Error(ErrorCode::NonFinite, "poly_compose overflowed");
  return r;
}

Complex poly_resultant(const ComplexPoly& p, const ComplexPoly& q) {
  if (p.is_zero() || q.is_zero()) return 0.0;
  const int m = p.degree();
  const int n = q.degree();
  const int size = m + n;
  if (size == 0) return 1.0;
  Eigen::MatrixXcd s = Eigen::MatrixXcd::Zero(size, size);
  for (int r = 0; r < n; ++r)
    for (int k = 0; k <= m; ++k) s(r, r + k) = p.coeff(m - k);
  for (int r = 0; r < m; ++r)
    for (int k = 0; k <= n; ++k) s(n + r, r + k) = q.coeff(n - k);
  return s.partialPivLu().determinant();
}

double scaled_resultant(const ComplexPoly& p, const ComplexPoly& q) {
  if (p.is_zero() || q.is_zero()) return 0.0;
  auto norm2 = [](const ComplexPoly& a) {
    double s = 0;
    for (const auto& c : a.coeffs()) s += std::norm(c);
    return std::sqrt(s);
  };
  const double lr = std::log(std::abs(poly_resultant(p, q))) -
                    q.degree() * std::log(norm2(p)) - p.degree() * std::log(norm2(q));
  return std::exp(lr);
}

double backward_error(const ComplexPoly& p, Complex z) {
  // Evaluate in the chart where |z| <= 1 so neither sum overflows.
  const int n = p.degree();
  double scale = 0;
  Complex value{};
  if (std::abs(z) <= 1.0) {
    double az = std::abs(z);
    for (int k = n; k >= 0; --k) {
      value = value * z + p.coeff(k);
      scale = scale * az + std::abs(p.coeff(k));
    }
  } else {
    const Complex w = 1.0 / z;
    const double aw = std::abs(w);
    for (int k = 0; k <= n; ++k) {
      value = value * w + p.coeff(k);
      scale = scale * aw + std::abs(p.coeff(k));
    }
  }
  return scale > 0 ? std::abs(value) / scale : 0.0;
}

std::vector<Complex> circle_start(int n, double radius, std::uint64_t seed) {
  std::vector<Complex> z(n);
  const double offset = 0.7 + 0.61803398874989 * static_cast<double>(seed % 1000);
  for (int k = 0; k < n; ++k)
    z[k] = std::polar(radius, 2 * std::numbers::pi * k / n + offset);
  return z;
}

std::vector<Complex> newton_polygon_start(std::span<const Complex> coeffs, std::uint64_t seed) {
  const int n = static_cast<int>(coeffs.size()) - 1;
  std::vector<int> idx;
  std::vector<double> la;
  for (int k = 0; k <= n; ++k) {
    if (coeffs[k] == Complex{}) continue;
    const double l = std::log(std::abs(coeffs[k]));
    // Upper hull via monotone chain.
    while (idx.size() >= 2) {
      const int k1 = idx[idx.size() - 2], k2 = idx.back();
      const double l1 = la[la.size() - 2], l2 = la.back();
      if ((l2 - l1) * (k - k1) <= (l - l1) * (k2 - k1)) {
        idx.pop_back();
        la.pop_back();
      } else {
        break;
      }
    }
    idx.push_back(k);
    la.push_back(l);
  }
  const double sigma = 0.7 + 0.61803398874989 * static_cast<double>(seed % 1000);
  std::vector<Complex> z;
  z.reserve(n);
  if (idx.empty()) return circle_start(n, 1.0, seed);
  // Vanishing low coefficients: that many roots start near the origin.
  if (idx.front() > 0) {
    const double r0 = idx.size() > 1 ? 1e-3 * std::exp((la[0] - la[1]) / (idx[1] - idx[0])) : 1e-3;
    for (const auto& p : circle_start(idx.front(), r0, seed)) z.push_back(p);
  }
  for (std::size_t e = 0; e + 1 < idx.size(); ++e) {
    const int m = idx[e + 1] - idx[e];
    const double r = std::exp((la[e] - la[e + 1]) / m);
    for (int j = 0; j < m; ++j) {
      const double ang = 2 * std::numbers::pi * (static_cast<double>(j) / m +
                                                 static_cast<double>(idx[e]) / n) + sigma;
      z.push_back(std::polar(r, ang));
    }
  }
  return z;
}

namespace {

RawRoots solve_raw(const ComplexPoly& q, const RootOptions& opts) {
  if (opts.precision_bits > 0) return big_aberth(q.coeffs(), opts);
  DensePolyEval eval(q.coeffs());
  return aberth(eval, newton_polygon_start(q.coeffs(), opts.seed), opts);
}

}  // namespace

std::vector<RootCluster> poly_roots(const ComplexPoly& p, const RootOptions& opts) {
  if (p.is_zero() || p.degree() < 1)
    throw Error(ErrorCode::InvalidInput, "poly_roots needs degree >= 1");
  if (!p.all_finite()) throw Error(ErrorCode::NonFinite, "poly_roots: non-finite coefficient");
  if (opts.precision_bits != 0 && (opts.precision_bits < 64 || opts.precision_bits > 4096))
    throw Error(ErrorCode::InvalidInput, "precision bits must lie in [64, 4096]");

  // Exact zeros at the low end are roots at the origin with known multiplicity.
  int zeros = 0;
  while (p.coeff(zeros) == Complex{}) ++zeros;
  std::vector<Complex> rest(p.coeffs().begin() + zeros, p.coeffs().end());
  const ComplexPoly q(std::move(rest));

  RawRoots raw;
  if (q.degree() >= 1) raw = solve_raw(q, opts);
  for (int k = 0; k < zeros; ++k) {
    raw.roots.push_back(0.0);
    raw.log_radius.push_back(-std::numeric_limits<double>::infinity());
  }
  // Inclusion discs are only trusted up to a small relative size.
  for (std::size_t i = 0; i < raw.roots.size(); ++i)
    raw.log_radius[i] =
        std::min(raw.log_radius[i], std::log(1e-3 * std::max(1.0, std::abs(raw.roots[i]))));

  auto abs_p = [&](Complex z) { return std::abs(p(z)); };
  auto clusters = cluster_roots(raw, abs_p, opts);

  // Newton polish for simple roots; keep a step only if it reduces |p|.
  for (auto& c : clusters) {
    if (c.multiplicity != 1) continue;
    for (int s = 0; s < 3; ++s) {
      const auto [v, dv] = p.eval_with_derivative(c.value);
      if (dv == Complex{}) break;
      const Complex next = c.value - v / dv;
      if (!(std::abs(p(next)) < std::abs(v))) break;
      c.value = next;
    }
    c.residual = std::abs(p(c.value));
  }
  for (const auto& c : clusters) {
    if (backward_error(p, c.value) > opts.acceptance)
      throw Error(ErrorCode::NonConvergence,
                  "root cluster fails the backward-error acceptance test");
  }
  std::sort(clusters.begin(), clusters.end(), [](const RootCluster& a, const RootCluster& b) {
    if (a.value.real() != b.value.real()) return a.value.real() < b.value.real();
    return a.value.imag() < b.value.imag();
  });
  return clusters;
}

}  // namespace specrig
