#pragma once

// Data-parallel inner loops. Every kernel has a plain serial reference and an
// OpenMP variant; both perform the same per-element arithmetic in the same
// order, so their outputs are bit-identical for any thread count.

#include <cmath>
#include <complex>
#include <cstdint>
#include <limits>
#include <span>
#include <type_traits>

#include "specrig/cpoly.hpp"

namespace specrig {

enum class Exec { Serial, Parallel };

/// Thread count used by Parallel kernels: SPECRIG_THREADS unless overridden.
void set_thread_count(int threads);
int thread_count();

/// Rectangular parameter window sampled at cell centres.
struct GridWindow {
  double re_min = -1, re_max = 1, im_min = -1, im_max = 1;
  int nx = 16, ny = 16;

  double hx() const { return (re_max - re_min) / nx; }
  double hy() const { return (im_max - im_min) / ny; }
  /// Cell (i, j): i runs along the real axis, j along the imaginary axis.
  Complex center(int i, int j) const {
    return {re_min + (i + 0.5) * hx(), im_min + (j + 0.5) * hy()};
  }
  std::size_t cells() const { return static_cast<std::size_t>(nx) * ny; }
  std::size_t index(int i, int j) const { return static_cast<std::size_t>(j) * nx + i; }
};

/// Result of evaluating a root-finding target at one point.
template <class C>
struct NewtonStep {
  C ratio;                    // p(z) / p'(z)
  double log_abs_value = 0;   // log |p(z)|
  double log_abs_error = 0;   // log of a rounding bound on the computed p(z)
  bool numerically_zero() const { return log_abs_value <= log_abs_error; }
};

namespace kernels {

namespace detail {

template <class C, class Eval>
inline void aberth_one(const Eval& eval, std::span<const C> z, std::size_t i, C& corr,
                       std::uint8_t& zero) {
  const auto st = eval.step(z[i]);
  if (st.numerically_zero()) {
    corr = C(0);
    zero = 1;
    return;
  }
  zero = 0;
  C s(0);
  for (std::size_t j = 0; j < z.size(); ++j) {
    if (j == i) continue;
    const C diff = z[i] - z[j];
    if constexpr (std::is_same_v<C, std::complex<double>>) {
      // conj/norm avoids the slow checked complex division.
      const double n2 = std::norm(diff);
      if (n2 == 0) continue;
      s += std::conj(diff) / n2;
    } else {
      if (diff == C(0)) continue;
      s += C(1) / diff;
    }
  }
  corr = st.ratio / (C(1) - st.ratio * s);
}

template <class C, class Eval>
inline double log_radius_one(const Eval& eval, std::span<const C> z, std::size_t i) {
  using std::abs;
  using std::log;
  const auto st = eval.step(z[i]);
  double lr = std::log(static_cast<double>(z.size())) +
              std::max(st.log_abs_value, st.log_abs_error) - eval.log_abs_leading();
  for (std::size_t j = 0; j < z.size(); ++j) {
    if (j == i) continue;
    const double d = static_cast<double>(abs(z[i] - z[j]));
    if (d == 0.0) return std::numeric_limits<double>::infinity();
    lr -= std::log(d);
  }
  return lr;
}

}  // namespace detail

/// One Jacobi-style Aberth sweep: corr[i] for every active root, computed
/// from the frozen iterate z. zero[i] flags roots where p is numerically 0.
template <class C, class Eval>
void aberth_corrections_serial(const Eval& eval, std::span<const C> z,
                               std::span<const std::uint8_t> active, std::span<C> corr,
                               std::span<std::uint8_t> zero) {
  for (std::size_t i = 0; i < z.size(); ++i)
    if (active[i]) detail::aberth_one(eval, z, i, corr[i], zero[i]);
}

template <class C, class Eval>
void aberth_corrections_omp(const Eval& eval, std::span<const C> z,
                            std::span<const std::uint8_t> active, std::span<C> corr,
                            std::span<std::uint8_t> zero) {
  const auto n = static_cast<std::int64_t>(z.size());
#pragma omp parallel for schedule(dynamic, 8) num_threads(thread_count())
  for (std::int64_t i = 0; i < n; ++i)
    if (active[i]) detail::aberth_one(eval, z, static_cast<std::size_t>(i), corr[i], zero[i]);
}

template <class C, class Eval>
void aberth_corrections(Exec exec, const Eval& eval, std::span<const C> z,
                        std::span<const std::uint8_t> active, std::span<C> corr,
                        std::span<std::uint8_t> zero) {
  if (exec == Exec::Parallel)
    aberth_corrections_omp(eval, z, active, corr, zero);
  else
    aberth_corrections_serial(eval, z, active, corr, zero);
}

/// log of the Weierstrass inclusion radius n |p(z_i)| / |a_n prod (z_i - z_j)|.
template <class C, class Eval>
void inclusion_log_radii(Exec exec, const Eval& eval, std::span<const C> z,
                         std::span<double> out) {
  const auto n = static_cast<std::int64_t>(z.size());
  if (exec == Exec::Parallel) {
#pragma omp parallel for schedule(dynamic, 8) num_threads(thread_count())
    for (std::int64_t i = 0; i < n; ++i)
      out[i] = detail::log_radius_one(eval, z, static_cast<std::size_t>(i));
  } else {
    for (std::int64_t i = 0; i < n; ++i)
      out[i] = detail::log_radius_one(eval, z, static_cast<std::size_t>(i));
  }
}

/// out[index(i, j)] = fn(center(i, j)) for every cell.
template <class Fn>
void fill_grid_serial(const GridWindow& w, Fn&& fn, std::span<double> out) {
  for (int j = 0; j < w.ny; ++j)
    for (int i = 0; i < w.nx; ++i) out[w.index(i, j)] = fn(w.center(i, j));
}

template <class Fn>
void fill_grid_omp(const GridWindow& w, Fn&& fn, std::span<double> out) {
  const auto total = static_cast<std::int64_t>(w.cells());
#pragma omp parallel for schedule(dynamic, 64) num_threads(thread_count())
  for (std::int64_t k = 0; k < total; ++k) {
    const int i = static_cast<int>(k % w.nx);
    const int j = static_cast<int>(k / w.nx);
    out[k] = fn(w.center(i, j));
  }
}

template <class Fn>
void fill_grid(Exec exec, const GridWindow& w, Fn&& fn, std::span<double> out) {
  if (exec == Exec::Parallel)
    fill_grid_omp(w, fn, out);
  else
    fill_grid_serial(w, fn, out);
}

/// Signed 5-point Laplacian of g times the cell area, Neumann at the window
/// edges. NaN cells (masked) contribute 0 and are mirrored like an edge.
void laplacian_serial(const GridWindow& w, std::span<const double> g, std::span<double> lap);
void laplacian_omp(const GridWindow& w, std::span<const double> g, std::span<double> lap);
void laplacian(Exec exec, const GridWindow& w, std::span<const double> g, std::span<double> lap);

}  // namespace kernels
}  // namespace specrig
