#pragma once

// Simultaneous (Aberth-Ehrlich) root finding over an abstract evaluator.
//
// An evaluator E for a polynomial p of degree n provides
//   int degree() const;                       // n
//   double log_abs_leading() const;           // log |a_n|
//   NewtonStep<C> step(C z) const;            // p/p', log|p|, log rounding bound
// which lets callers root-find polynomials that are only available through a
// recurrence (e.g. critical-orbit polynomials of degree in the thousands)
// without ever forming their coefficients.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <numbers>
#include <span>
#include <vector>

#include "specrig/cpoly.hpp"
#include "specrig/error.hpp"
#include "specrig/kernels.hpp"

namespace specrig {

struct RawRoots {
  std::vector<Complex> roots;
  std::vector<double> log_radius;  // log inclusion radius per root
  int iterations = 0;
};

/// n points on a circle with a seeded angular offset.
std::vector<Complex> circle_start(int n, double radius, std::uint64_t seed);

/// Starting points on the circles given by the upper convex hull of
/// (k, log|a_k|), one circle per hull edge.
std::vector<Complex> newton_polygon_start(std::span<const Complex> coeffs, std::uint64_t seed);

/// Union-find clustering of raw roots. Two roots join when their distance is
/// below max(opts.cluster_radius, 1e-4 * rms nearest-neighbour spacing) or
/// their inclusion discs overlap. `abs_value(z)` returns |p(z)|.
template <class AbsValue>
std::vector<RootCluster> cluster_roots(const RawRoots& raw, AbsValue&& abs_value,
                                       const RootOptions& opts);

/// Runs Jacobi-style Aberth sweeps from `start` until every root has either
/// a relative correction below opts.tol or a numerically vanishing value.
template <class Eval>
RawRoots aberth(const Eval& eval, std::vector<Complex> start, const RootOptions& opts) {
  const std::size_t n = start.size();
  if (static_cast<int>(n) != eval.degree())
    throw Error(ErrorCode::InvalidInput, "aberth: start size does not match degree");
  const Exec exec = opts.parallel ? Exec::Parallel : Exec::Serial;

  std::vector<Complex> z = std::move(start);
  std::vector<Complex> corr(n);
  std::vector<std::uint8_t> active(n, 1), zero(n, 0);
  int it = 0;
  std::size_t remaining = n;
  for (; it < opts.max_iterations && remaining > 0; ++it) {
    kernels::aberth_corrections<Complex>(exec, eval, z, active, corr, zero);
    remaining = 0;
    for (std::size_t i = 0; i < n; ++i) {
      if (!active[i]) continue;
      if (zero[i]) {
        active[i] = 0;
        continue;
      }
      if (!std::isfinite(corr[i].real()) || !std::isfinite(corr[i].imag())) {
        ++remaining;
        continue;
      }
      z[i] -= corr[i];
      if (std::abs(corr[i]) <= opts.tol * std::max(std::abs(z[i]), 1e-300))
        active[i] = 0;
      else
        ++remaining;
    }
  }
  if (remaining > 0)
    throw Error(ErrorCode::NonConvergence,
                std::to_string(remaining) + " of " + std::to_string(n) +
                    " roots still moving after " + std::to_string(it) + " Aberth sweeps");

  RawRoots out;
  out.iterations = it;
  out.log_radius.resize(n);
  kernels::inclusion_log_radii<Complex>(exec, eval, z, out.log_radius);
  out.roots = std::move(z);
  return out;
}

namespace detail {
struct UnionFind {
  std::vector<std::size_t> parent;
  explicit UnionFind(std::size_t n) : parent(n) {
    for (std::size_t i = 0; i < n; ++i) parent[i] = i;
  }
  std::size_t find(std::size_t i) {
    while (parent[i] != i) i = parent[i] = parent[parent[i]];
    return i;
  }
  void unite(std::size_t a, std::size_t b) {
    a = find(a);
    b = find(b);
    if (a != b) parent[std::max(a, b)] = std::min(a, b);
  }
};
}  // namespace detail

template <class AbsValue>
std::vector<RootCluster> cluster_roots(const RawRoots& raw, AbsValue&& abs_value,
                                       const RootOptions& opts) {
  const auto& z = raw.roots;
  const std::size_t n = z.size();
  double spacing2 = 0;
  if (n > 1) {
    for (std::size_t i = 0; i < n; ++i) {
      double best = std::numeric_limits<double>::infinity();
      for (std::size_t j = 0; j < n; ++j)
        if (j != i) best = std::min(best, std::norm(z[i] - z[j]));
      spacing2 += best;
    }
    spacing2 /= static_cast<double>(n);
  }
  const double radius = std::max(opts.cluster_radius, 1e-4 * std::sqrt(spacing2));

  detail::UnionFind uf(n), strict(n);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) {
      const double dist = std::abs(z[i] - z[j]);
      const double disc = std::exp(raw.log_radius[i]) + std::exp(raw.log_radius[j]);
      if (dist <= disc) strict.unite(i, j);
      if (dist <= radius || dist <= disc) uf.unite(i, j);
    }
  }
  // A group whose centroid is a far worse root than its members holds
  // distinct close roots, not one multiple root: keep only disc overlaps.
  constexpr double kSplitFactor = 1e3;
  std::vector<Complex> sum(n);
  std::vector<int> count(n, 0);
  std::vector<double> worst(n, 0.0);
  for (std::size_t i = 0; i < n; ++i) {
    const std::size_t r = uf.find(i);
    sum[r] += z[i];
    count[r] += 1;
    worst[r] = std::max(worst[r], abs_value(z[i]));
  }
  std::vector<bool> split(n, false);
  for (std::size_t r = 0; r < n; ++r)
    if (count[r] > 1) split[r] = abs_value(sum[r] / static_cast<double>(count[r])) > kSplitFactor * worst[r];

  std::vector<RootCluster> clusters;
  std::vector<long> slot(2 * n, -1);
  for (std::size_t i = 0; i < n; ++i) {
    const std::size_t r = uf.find(i);
    const std::size_t key = split[r] ? n + strict.find(i) : r;
    if (slot[key] < 0) {
      slot[key] = static_cast<long>(clusters.size());
      clusters.push_back({Complex{}, 0, 0.0});
    }
    auto& c = clusters[slot[key]];
    c.value += z[i];
    c.multiplicity += 1;
    c.residual = std::max(c.residual, abs_value(z[i]));
  }
  for (auto& c : clusters) c.value /= static_cast<double>(c.multiplicity);
  return clusters;
}

}  // namespace specrig
