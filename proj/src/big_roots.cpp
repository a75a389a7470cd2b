#include "big_roots.hpp"

#include <boost/multiprecision/mpfr.hpp>
#include <cmath>
#include <string>
#include <vector>

#include "specrig/error.hpp"
#include "specrig/kernels.hpp"

namespace specrig {
namespace {

namespace mp = boost::multiprecision;
using Big = mp::mpfr_float;

struct BigComplex {
  Big re, im;

  BigComplex() : re(0), im(0) {}
  BigComplex(int v) : re(v), im(0) {}  // NOLINT(google-explicit-constructor)
  BigComplex(Big r, Big i) : re(std::move(r)), im(std::move(i)) {}
  explicit BigComplex(Complex z) : re(z.real()), im(z.imag()) {}

  Complex to_double() const { return {static_cast<double>(re), static_cast<double>(im)}; }

  friend BigComplex operator+(const BigComplex& a, const BigComplex& b) {
    return {a.re + b.re, a.im + b.im};
  }
  friend BigComplex operator-(const BigComplex& a, const BigComplex& b) {
    return {a.re - b.re, a.im - b.im};
  }
  friend BigComplex operator*(const BigComplex& a, const BigComplex& b) {
    return {a.re * b.re - a.im * b.im, a.re * b.im + a.im * b.re};
  }
  friend BigComplex operator/(const BigComplex& a, const BigComplex& b) {
    const Big den = b.re * b.re + b.im * b.im;
    return {(a.re * b.re + a.im * b.im) / den, (a.im * b.re - a.re * b.im) / den};
  }
  BigComplex& operator+=(const BigComplex& o) { return *this = *this + o; }
  BigComplex& operator-=(const BigComplex& o) { return *this = *this - o; }
  friend bool operator==(const BigComplex& a, const BigComplex& b) {
    return a.re == b.re && a.im == b.im;
  }
  friend Big abs(const BigComplex& z) { return mp::sqrt(z.re * z.re + z.im * z.im); }
};

double log_abs(const BigComplex& z) {
  const Big m = abs(z);
  if (m == 0) return -std::numeric_limits<double>::infinity();
  return static_cast<double>(mp::log(m));
}

class BigDenseEval {
 public:
  BigDenseEval(std::span<const Complex> coeffs, int bits) : bits_(bits) {
    for (const auto& c : coeffs) a_.emplace_back(c);
    for (const auto& c : a_) abs_a_.push_back(abs(c));
  }

  int degree() const { return static_cast<int>(a_.size()) - 1; }
  double log_abs_leading() const { return log_abs(a_.back()); }

  NewtonStep<BigComplex> step(const BigComplex& z) const {
    const int n = degree();
    // Rounding bound 4(n+1) 2^-bits sum |a_k||z|^k, as a natural log.
    const double lgamma = std::log(4.0 * (n + 1)) - bits_ * std::log(2.0);
    NewtonStep<BigComplex> st;
    const Big az = abs(z);
    if (az <= 1) {
      BigComplex p, dp;
      Big bound = 0;
      for (int k = n; k >= 0; --k) {
        dp = dp * z + p;
        p = p * z + a_[k];
        bound = bound * az + abs_a_[k];
      }
      st.ratio = p / dp;
      st.log_abs_value = log_abs(p);
      st.log_abs_error = lgamma + static_cast<double>(mp::log(bound));
    } else {
      const BigComplex w = BigComplex(1) / z;
      const Big aw = 1 / az;
      BigComplex q, dq;
      Big bound = 0;
      for (int k = 0; k <= n; ++k) {
        dq = dq * w + q;
        q = q * w + a_[k];
        bound = bound * aw + abs_a_[k];
      }
      st.ratio = z * q / (BigComplex(n) * q - w * dq);
      const double lz = n * static_cast<double>(mp::log(az));
      st.log_abs_value = lz + log_abs(q);
      st.log_abs_error = lz + lgamma + static_cast<double>(mp::log(bound));
    }
    return st;
  }

 private:
  int bits_;
  std::vector<BigComplex> a_;
  std::vector<Big> abs_a_;
};

class PrecisionGuard {
 public:
  explicit PrecisionGuard(int bits) : saved_(Big::default_precision()) {
    Big::default_precision(static_cast<unsigned>(std::ceil(bits * 0.30102999566398)) + 1);
  }
  ~PrecisionGuard() { Big::default_precision(saved_); }
  PrecisionGuard(const PrecisionGuard&) = delete;
  PrecisionGuard& operator=(const PrecisionGuard&) = delete;

 private:
  unsigned saved_;
};

}  // namespace

RawRoots big_aberth(std::span<const Complex> coeffs, const RootOptions& opts) {
  PrecisionGuard guard(opts.precision_bits);
  BigDenseEval eval(coeffs, opts.precision_bits);
  const auto start = newton_polygon_start(coeffs, opts.seed);
  const std::size_t n = start.size();
  std::vector<BigComplex> z;
  z.reserve(n);
  for (const auto& s : start) z.emplace_back(s);

  // Converge to the working precision, not to double epsilon.
  const Big tol = mp::pow(Big(2), -opts.precision_bits + 8);
  std::vector<BigComplex> corr(n);
  std::vector<std::uint8_t> active(n, 1), zero(n, 0);
  std::size_t remaining = n;
  int it = 0;
  for (; it < opts.max_iterations && remaining > 0; ++it) {
    // MPFR default precision is process-global, so this path stays serial.
    kernels::aberth_corrections_serial<BigComplex>(eval, z, active, corr, zero);
    remaining = 0;
    for (std::size_t i = 0; i < n; ++i) {
      if (!active[i]) continue;
      if (zero[i]) {
        active[i] = 0;
        continue;
      }
      z[i] -= corr[i];
      const Big az = abs(z[i]);
      if (abs(corr[i]) <= tol * (az > 0 ? az : Big(1)))
        active[i] = 0;
      else
        ++remaining;
    }
  }
  if (remaining > 0)
    throw Error(ErrorCode::NonConvergence,
                std::to_string(remaining) + " roots still moving after " + std::to_string(it) +
                    " multiprecision Aberth sweeps");

  RawRoots out;
  out.iterations = it;
  out.log_radius.resize(n);
  kernels::inclusion_log_radii<BigComplex>(Exec::Serial, eval, z, out.log_radius);
  for (const auto& r : z) out.roots.push_back(r.to_double());
  return out;
}

}  // namespace specrig
