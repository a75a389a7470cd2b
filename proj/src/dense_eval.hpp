#pragma once

#include <cmath>
#include <limits>
#include <span>
#include <vector>

#include "specrig/cpoly.hpp"
#include "specrig/kernels.hpp"

namespace specrig {

/// Root-finding evaluator for a dense coefficient vector. Points outside the
/// unit disk are evaluated through the reversed polynomial so large roots
/// never overflow.
class DensePolyEval {
 public:
  explicit DensePolyEval(std::span<const Complex> coeffs)
      : a_(coeffs.begin(), coeffs.end()), abs_a_(a_.size()) {
    for (std::size_t k = 0; k < a_.size(); ++k) abs_a_[k] = std::abs(a_[k]);
  }

  int degree() const { return static_cast<int>(a_.size()) - 1; }
  double log_abs_leading() const { return std::log(abs_a_.back()); }

  NewtonStep<Complex> step(Complex z) const {
    constexpr double eps = std::numeric_limits<double>::epsilon();
    const int n = degree();
    const double gamma = 4.0 * (n + 1) * eps;
    NewtonStep<Complex> st;
    const double az = std::abs(z);
    if (az <= 1.0) {
      Complex p{}, dp{};
      double bound = 0;
      for (int k = n; k >= 0; --k) {
        dp = dp * z + p;
        p = p * z + a_[k];
        bound = bound * az + abs_a_[k];
      }
      st.ratio = p / dp;
      st.log_abs_value = std::log(std::abs(p));
      st.log_abs_error = std::log(gamma * bound);
    } else {
      // p(z) = z^n q(w), q(w) = sum a_{n-k} w^k, w = 1/z.
      const Complex w = 1.0 / z;
      const double aw = 1.0 / az;
      Complex q{}, dq{};
      double bound = 0;
      for (int k = 0; k <= n; ++k) {
        dq = dq * w + q;
        q = q * w + a_[k];
        bound = bound * aw + abs_a_[k];
      }
      st.ratio = z * q / (static_cast<double>(n) * q - w * dq);
      const double lz = n * std::log(az);
      st.log_abs_value = lz + std::log(std::abs(q));
      st.log_abs_error = lz + std::log(gamma * bound);
    }
    return st;
  }

 private:
  std::vector<Complex> a_;
  std::vector<double> abs_a_;
};

}  // namespace specrig
