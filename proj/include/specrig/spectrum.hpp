#pragma once

#include <span>
#include <vector>

#include "specrig/cpoly.hpp"
#include "specrig/ratmap.hpp"

namespace specrig {

struct SpectrumOptions {
  RootOptions roots;
  /// Formal degree cap for f^n.
  int degree_cap = 1024;
  /// Cap on the degree of the fixed-point polynomial handed to the root finder.
  int root_degree_cap = 4096;
  /// Newton-polish simple periodic points on f^n pointwise.
  bool polish = true;
};

struct PeriodicPoint {
  ProjPoint point;
  int multiplicity = 1;
};

/// Fix(f^n) with multiplicities; total == d^n + 1.
struct PeriodicPointSet {
  int period = 1;
  std::vector<PeriodicPoint> points;
  int total = 0;
};

PeriodicPointSet fixed_points(const RationalMap& f, int n, const SpectrumOptions& opts = {});

/// Cycles of exact period n, each listed as [x, f(x), ..., f^{n-1}(x)] using
/// the computed periodic points. Points of multiplicity > 1 are included
/// once.
std::vector<std::vector<ProjPoint>> periodic_cycles(const RationalMap& f, int n,
                                                    const SpectrumOptions& opts = {});

/// Max chordal distance between x and f^n(x) accepted by multiplier().
inline constexpr double kPeriodicTolerance = 1e-6;

/// d(f^n)(x) by the chain rule along the orbit, each step in the chart that
/// keeps it finite and the last step returned to the chart of x.
/// Throws NotPeriodic when x is not numerically fixed by f^n.
Complex multiplier(const RationalMap& f, const ProjPoint& x, int n);

/// S_n: one multiplier per element of Fix(f^n), repeated by multiplicity.
std::vector<Complex> multiplier_spectrum(const RationalMap& f, int n,
                                         const SpectrumOptions& opts = {});

/// |S_n| elementwise.
std::vector<double> length_spectrum(const RationalMap& f, int n, const SpectrumOptions& opts = {});

/// (e_1, ..., e_N) of the multiset.
std::vector<Complex> spectrum_coordinates(std::span<const Complex> values);

/// Coordinates of the multiset scaled by r = max(1, max |lambda|):
/// returns e_k / r^k and writes r to `scale`.
std::vector<Complex> scaled_spectrum_coordinates(std::span<const Complex> values, double& scale);

struct PeriodSpectrum {
  int n = 1;
  std::vector<Complex> multipliers;
  std::vector<Complex> sigma;  // e_k / scale^k
  double scale = 1.0;
};

struct SpectrumTable {
  int degree = 0;
  int n_max = 0;
  std::vector<PeriodSpectrum> periods;
};

/// S_1, ..., S_{n_max} together with their scaled coordinates.
SpectrumTable tau(const RationalMap& f, int n_max, const SpectrumOptions& opts = {});

/// Builds a table entry from a given multiset (used when parsing tables).
PeriodSpectrum make_period_spectrum(int n, std::vector<Complex> multipliers);

struct SpectrumComparison {
  double distance = 0;
  bool equal = true;
};

inline constexpr double kSpectrumTolerance = 1e-6;

/// max over periods and k of |a_k - b_k| / (1 + |a_k| + |b_k|), both tables
/// rescaled to the larger of their two scales. Throws ShapeMismatch.
SpectrumComparison compare_spectra(const SpectrumTable& a, const SpectrumTable& b,
                                   double tol = kSpectrumTolerance);

/// sum over Fix(f) of 1 / (1 - lambda); equals 1 for every map without a
/// parabolic fixed point. Throws NearParabolic when some |lambda - 1| < 1e-3.
Complex index_sum_check(const RationalMap& f, const SpectrumOptions& opts = {});

}  // namespace specrig
