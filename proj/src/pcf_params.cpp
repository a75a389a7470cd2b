// Centres and Misiurewicz parameters of z^d + t. The critical-orbit
// polynomials P_1 = t, P_{k+1} = P_k^d + t have degree d^(k-1), so their
// coefficients are never formed: the root finder evaluates them by the
// recurrence with a running scale factor.

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>
#include <numbers>

#include "specrig/famdyn.hpp"
#include "specrig/rootfind.hpp"

namespace specrig {

namespace {

constexpr double kEps = std::numeric_limits<double>::epsilon();

// P_k(t) = e^L m and P_k'(t) = e^L dm, with err an absolute rounding bound
// in the same scale. L > 0 only when |P_k| > 1.
struct Scaled {
  Complex m, dm;
  double L = 0;
  double err = 0;
};

Scaled critical_orbit(int d, Complex t, int k) {
  const double gamma = 2.0 * (d + 2) * kEps;
  const double at = std::abs(t);
  Scaled s;
  for (int step = 0; step < k; ++step) {
    Complex md1 = 1.0;
    for (int j = 1; j < d; ++j) md1 *= s.m;
    const Complex md = md1 * s.m;
    const double shrink = s.L > 0 ? std::exp(-d * s.L) : 1.0;
    Scaled n;
    n.m = md + t * shrink;
    n.dm = static_cast<double>(d) * md1 * s.dm + shrink;
    n.err = d * std::abs(md1) * s.err + gamma * (std::abs(md) + at * shrink);
    n.L = d * s.L;
    const double r = std::abs(n.m);
    if ((n.L > 0 || r > 1) && r > 0) {
      n.m /= r;
      n.dm /= r;
      n.err /= r;
      n.L += std::log(r);
    }
    if (n.L < 0) {
      const double f = std::exp(n.L);
      n.m *= f;
      n.dm *= f;
      n.err *= f;
      n.L = 0;
    }
    s = n;
  }
  return s;
}

// P_n deflated by the known roots of the P_q, q | n, q < n.
class CenterEval {
 public:
  CenterEval(int d, int n, std::vector<Complex> known)
      : d_(d), n_(n), known_(std::move(known)) {
    degree_ = static_cast<int>(std::lround(std::pow(d, n - 1))) - static_cast<int>(known_.size());
  }
  int degree() const { return degree_; }
  double log_abs_leading() const { return 0.0; }

  NewtonStep<Complex> step(Complex t) const {
    const Scaled s = critical_orbit(d_, t, n_);
    Complex inv{};
    double log_known = 0;
    for (const Complex& c : known_) {
      inv += 1.0 / (t - c);
      log_known += std::log(std::abs(t - c));
    }
    NewtonStep<Complex> st;
    st.ratio = 1.0 / (s.dm / s.m - inv);
    st.log_abs_value = s.L + std::log(std::abs(s.m)) - log_known;
    st.log_abs_error = s.L + std::log(s.err) - log_known;
    return st;
  }

 private:
  int d_, n_, degree_;
  std::vector<Complex> known_;
};

// Q = (A^d - B^d) / (A - B) = sum_j A^j B^(d-1-j) with A = P_(m-1+p),
// B = P_(m-1): the roots of P_(m+p) - P_m off the curve A = B.
class MisiurewiczEval {
 public:
  MisiurewiczEval(int d, int m, int p) : d_(d), m_(m), p_(p) {
    degree_ = (d - 1) * static_cast<int>(std::lround(std::pow(d, m + p - 2)));
  }
  int degree() const { return degree_; }
  double log_abs_leading() const { return 0.0; }

  NewtonStep<Complex> step(Complex t) const {
    const Scaled A = critical_orbit(d_, t, m_ - 1 + p_);
    const Scaled B = critical_orbit(d_, t, m_ - 1);
    const double L = std::max(A.L, B.L);
    const double fa = std::exp(A.L - L), fb = std::exp(B.L - L);
    const Complex a = A.m * fa, da = A.dm * fa, b = B.m * fb, db = B.dm * fb;
    const double ea = A.err * fa, eb = B.err * fb;
    Complex q{}, dq{};
    double bound = 0, terms = 0;
    for (int j = 0; j < d_; ++j) {
      const Complex aj = std::pow(a, j), bk = std::pow(b, d_ - 1 - j);
      q += aj * bk;
      terms += std::abs(aj * bk);
      if (j > 0) {
        const Complex pa = static_cast<double>(j) * std::pow(a, j - 1) * bk;
        dq += pa * da;
        bound += std::abs(pa) * ea;
      }
      if (d_ - 1 - j > 0) {
        const Complex pb = static_cast<double>(d_ - 1 - j) * aj * std::pow(b, d_ - 2 - j);
        dq += pb * db;
        bound += std::abs(pb) * eb;
      }
    }
    bound += 2.0 * d_ * kEps * terms;
    NewtonStep<Complex> st;
    st.ratio = q / dq;
    st.log_abs_value = (d_ - 1) * L + std::log(std::abs(q));
    st.log_abs_error = (d_ - 1) * L + std::log(bound);
    return st;
  }

 private:
  int d_, m_, p_, degree_;
};

template <class Eval>
std::vector<Complex> solve(const Eval& eval, int d, const RootOptions& opts) {
  if (eval.degree() < 1) return {};
  const double radius = 1.1 * std::pow(2.0, 1.0 / (d - 1));
  RawRoots raw = aberth(eval, circle_start(eval.degree(), radius, opts.seed), opts);
  auto abs_value = [&](Complex t) { return std::exp(eval.step(t).log_abs_value); };
  std::vector<Complex> out;
  for (const auto& c : cluster_roots(raw, abs_value, opts)) out.push_back(c.value);
  return out;
}

void check_degree(double degree, int cap) {
  if (degree > cap)
    throw Error(ErrorCode::DegreeCapExceeded,
                "critical-orbit polynomial degree " + std::to_string(std::lround(degree)) +
                    " exceeds cap " + std::to_string(cap));
}

std::vector<Complex> centers(int d, int n, const PcfOptions& opts,
                             std::map<int, std::vector<Complex>>& memo) {
  if (auto it = memo.find(n); it != memo.end()) return it->second;
  check_degree(std::pow(d, n - 1), opts.degree_cap);
  std::vector<Complex> known;
  for (int q = 1; q < n; ++q)
    if (n % q == 0)
      for (const Complex& c : centers(d, q, opts, memo)) known.push_back(c);
  auto roots = solve(CenterEval(d, n, known), d, opts.roots);
  memo[n] = roots;
  return roots;
}

}  // namespace

std::vector<Complex> pcf_parameters_unicritical(int d, int period, PcfKind kind, int preperiod,
                                                const PcfOptions& opts) {
  if (d < 2 || period < 1)
    throw Error(ErrorCode::InvalidInput, "pcf_parameters_unicritical: need d >= 2, period >= 1");
  std::vector<Complex> out;
  if (kind == PcfKind::Center) {
    std::map<int, std::vector<Complex>> memo;
    out = centers(d, period, opts, memo);
  } else {
    if (preperiod < 0)
      throw Error(ErrorCode::InvalidInput, "pcf_parameters_unicritical: preperiod must be >= 0");
    // Preperiod 1 is impossible: t has the single preimage 0 under z^d + t.
    if (preperiod < 2) return {};
    check_degree((d - 1) * std::pow(d, preperiod + period - 2), opts.degree_cap);
    const FamilySpec F = unicritical_family(d);
    const MarkedPoint& crit = F.marked_point("critical");
    for (const Complex& t : solve(MisiurewiczEval(d, preperiod, period), d, opts.roots)) {
      // Keep the exact type; centres and smaller types also solve Q = 0.
      const auto orb = marked_orbit(F, crit, t, preperiod + 2 * period);
      const auto cls = classify_orbit(orb, 1e-7);
      if (cls.status == OrbitStatus::Periodic && cls.preperiod == preperiod && cls.period == period)
        out.push_back(t);
    }
  }
  std::sort(out.begin(), out.end(), [](Complex a, Complex b) {
    return a.real() != b.real() ? a.real() < b.real() : a.imag() < b.imag();
  });
  return out;
}

}  // namespace specrig
