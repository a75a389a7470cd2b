#pragma once

#include <cmath>
#include <limits>
#include <vector>

#include "specrig/kernels.hpp"
#include "specrig/ratmap.hpp"

namespace specrig {

/// Pointwise evaluator of the fixed-point polynomial N = num_n - z den_n of
/// f^n, where (num_n, den_n) is the n-fold homogeneous lift of (num, den).
/// Values come from iterating the lift on (z, 1), or on (1, w) with w = 1/z
/// outside the unit disk, with renormalisation after every step; the
/// coefficients of N are never used, so their cancellation does not matter.
///
/// `degree` is the true degree of N: d^n + 1 minus the multiplicity of
/// infinity. The Newton ratio does not depend on that split.
class PeriodicEval {
 public:
  PeriodicEval(const RationalMap& f, int n, int degree, double log_abs_leading)
      : n_(n), d_(f.degree()), degree_(degree), log_lead_(log_abs_leading) {
    for (int k = 0; k <= d_; ++k) {
      a_.push_back(f.num().coeff(k));
      b_.push_back(f.den().coeff(k));
    }
  }

  int degree() const { return degree_; }
  double log_abs_leading() const { return log_lead_; }

  NewtonStep<Complex> step(Complex z) const {
    constexpr double eps = std::numeric_limits<double>::epsilon();
    const double full = std::pow(static_cast<double>(d_), n_) + 1;
    NewtonStep<Complex> st;
    if (std::abs(z) <= 1.0) {
      // N(z) = X - z Y with (X, Y) = F^n(z, 1).
      Lift l = iterate({z, 1.0, 1.0, 0.0});
      const Complex v = l.x - z * l.y;
      const Complex dv = l.dx - l.y - z * l.dy;
      st.ratio = v / dv;
      st.log_abs_value = l.log_scale + std::log(std::abs(v));
      st.log_abs_error =
          l.log_scale + std::log(l.ex + std::abs(z) * l.ey + 2 * eps * (std::abs(l.x) + std::abs(z) * std::abs(l.y)));
    } else {
      // R(w) = w X - Y with (X, Y) = F^n(1, w); N(z) = z^(d^n+1) R(1/z).
      const Complex w = 1.0 / z;
      Lift l = iterate({1.0, w, 0.0, 1.0});
      const Complex r = w * l.x - l.y;
      const Complex dr = l.x + w * l.dx - l.dy;
      st.ratio = z * r / (full * r - w * dr);
      const double lz = full * std::log(std::abs(z));
      st.log_abs_value = lz + l.log_scale + std::log(std::abs(r));
      st.log_abs_error =
          lz + l.log_scale +
          std::log(std::abs(w) * l.ex + l.ey + 2 * eps * (std::abs(w) * std::abs(l.x) + std::abs(l.y)));
    }
    return st;
  }

 private:
  // Homogeneous point with derivatives along the evaluation variable and
  // first-order rounding-error bounds, all relative to exp(log_scale).
  struct Lift {
    Complex x, y, dx, dy;
    double ex = 0, ey = 0, log_scale = 0;
  };

  // P(X, Y) = sum c_k X^k Y^(d-k) with partials and sum |c_k| |X|^k |Y|^(d-k).
  void eval_form(const std::vector<Complex>& c, Complex x, Complex y, Complex& p, Complex& px,
                 Complex& py, double& abs_sum) const {
    const int d = d_;
    if (std::abs(x) <= std::abs(y)) {
      const Complex t = x / y;
      const double at = std::abs(t);
      Complex s{}, ds{};
      double as = 0;
      for (int k = d; k >= 0; --k) {
        ds = ds * t + s;
        s = s * t + c[k];
        as = as * at + std::abs(c[k]);
      }
      const Complex yd1 = std::pow(y, d - 1);
      p = yd1 * y * s;
      px = yd1 * ds;
      py = yd1 * (static_cast<double>(d) * s - t * ds);
      abs_sum = std::abs(yd1 * y) * as;
    } else {
      const Complex t = y / x;
      const double at = std::abs(t);
      Complex s{}, ds{};
      double as = 0;
      for (int k = 0; k <= d; ++k) {
        ds = ds * t + s;
        s = s * t + c[k];
        as = as * at + std::abs(c[k]);
      }
      const Complex xd1 = std::pow(x, d - 1);
      p = xd1 * x * s;
      px = xd1 * (static_cast<double>(d) * s - t * ds);
      py = xd1 * ds;
      abs_sum = std::abs(xd1 * x) * as;
    }
  }

  Lift iterate(Lift l) const {
    const double gamma = 4.0 * (d_ + 2) * std::numeric_limits<double>::epsilon();
    for (int i = 0; i < n_; ++i) {
      Complex p, px, py, q, qx, qy;
      double ap, aq;
      eval_form(a_, l.x, l.y, p, px, py, ap);
      eval_form(b_, l.x, l.y, q, qx, qy, aq);
      Lift next;
      next.x = p;
      next.y = q;
      next.dx = px * l.dx + py * l.dy;
      next.dy = qx * l.dx + qy * l.dy;
      next.ex = gamma * ap + std::abs(px) * l.ex + std::abs(py) * l.ey;
      next.ey = gamma * aq + std::abs(qx) * l.ex + std::abs(qy) * l.ey;
      const double s = std::max(std::abs(p), std::abs(q));
      next.log_scale = static_cast<double>(d_) * l.log_scale;
      if (s > 0 && std::isfinite(s)) {
        next.x /= s;
        next.y /= s;
        next.dx /= s;
        next.dy /= s;
        next.ex /= s;
        next.ey /= s;
        next.log_scale += std::log(s);
      }
      l = next;
    }
    return l;
  }

  int n_, d_, degree_;
  double log_lead_;
  std::vector<Complex> a_, b_;
};

}  // namespace specrig
