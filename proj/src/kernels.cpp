#include "specrig/kernels.hpp"

#include <atomic>
#include <cstdlib>
#include <string>

#ifdef _OPENMP
#include <omp.h>
#endif

namespace specrig {

namespace {

int env_threads() {
  if (const char* s = std::getenv("SPECRIG_THREADS")) {
    try {
      const int n = std::stoi(s);
      if (n > 0) return n;
    } catch (...) {
    }
  }
#ifdef _OPENMP
  return omp_get_max_threads();
#else
  return 1;
#endif
}

std::atomic<int> g_threads{0};

}  // namespace

void set_thread_count(int threads) { g_threads = threads > 0 ? threads : 0; }

int thread_count() {
  const int t = g_threads.load();
  return t > 0 ? t : env_threads();
}

namespace kernels {

namespace {

inline double laplacian_cell(const GridWindow& w, std::span<const double> g, int i, int j) {
  const double c = g[w.index(i, j)];
  if (std::isnan(c)) return 0.0;
  auto at = [&](int ii, int jj) {
    if (ii < 0 || ii >= w.nx || jj < 0 || jj >= w.ny) return c;
    const double v = g[w.index(ii, jj)];
    return std::isnan(v) ? c : v;
  };
  const double hx = w.hx(), hy = w.hy();
  const double lx = (at(i - 1, j) + at(i + 1, j) - 2 * c) / (hx * hx);
  const double ly = (at(i, j - 1) + at(i, j + 1) - 2 * c) / (hy * hy);
  return (lx + ly) * hx * hy;
}

}  // namespace

void laplacian_serial(const GridWindow& w, std::span<const double> g, std::span<double> lap) {
  for (int j = 0; j < w.ny; ++j)
    for (int i = 0; i < w.nx; ++i) lap[w.index(i, j)] = laplacian_cell(w, g, i, j);
}

void laplacian_omp(const GridWindow& w, std::span<const double> g, std::span<double> lap) {
  const auto total = static_cast<std::int64_t>(w.cells());
#pragma omp parallel for schedule(static) num_threads(thread_count())
  for (std::int64_t k = 0; k < total; ++k)
    lap[k] = laplacian_cell(w, g, static_cast<int>(k % w.nx), static_cast<int>(k / w.nx));
}

void laplacian(Exec exec, const GridWindow& w, std::span<const double> g, std::span<double> lap) {
  if (exec == Exec::Parallel)
    laplacian_omp(w, g, lap);
  else
    laplacian_serial(w, g, lap);
}

}  // namespace kernels
}  // namespace specrig
