#pragma once

// One-parameter families t -> f_t, marked points and their orbits, and the
// parameter-space measures and diagnostics built on them.

#include <map>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "specrig/cpoly.hpp"
#include "specrig/error.hpp"
#include "specrig/kernels.hpp"
#include "specrig/ratmap.hpp"

namespace specrig {

/// A marked point a(t) = num(t) / den(t).
struct MarkedPoint {
  ComplexPoly num;
  ComplexPoly den = ComplexPoly::constant(1.0);

  /// (num(t), den(t)); the natural homogeneous lift of a(t).
  std::array<Complex, 2> lift(Complex t) const { return {num(t), den(t)}; }
  ProjPoint at(Complex t) const;
};

/// f_t(z) = sum_k num_coeffs[k](t) z^k / sum_k den_coeffs[k](t) z^k.
struct FamilySpec {
  int degree = 2;
  std::vector<ComplexPoly> num_coeffs;
  std::vector<ComplexPoly> den_coeffs;
  std::map<std::string, MarkedPoint> marked;

  /// Throws InvalidInput for an unknown name.
  const MarkedPoint& marked_point(const std::string& name) const;
};

/// z^d + t with marked points "critical" (0) and "value" (t).
FamilySpec unicritical_family(int d);

/// Specialises the coefficients at t. Throws DegenerateParameter when the
/// degree drops below d or the scaled resultant vanishes.
RationalMap family_eval(const FamilySpec& F, Complex t);

/// [a(t), f_t(a(t)), ..., f_t^n(a(t))] by pointwise application.
std::vector<ProjPoint> marked_orbit(const FamilySpec& F, const MarkedPoint& a, Complex t, int n);

enum class OrbitStatus { Periodic, Escaping, Undecided };

struct OrbitClassification {
  OrbitStatus status = OrbitStatus::Undecided;
  int preperiod = 0;
  int period = 0;
  /// Periodic: orbit[first] and orbit[second] coincide. Escaping: first is
  /// the index where the escape bound was crossed.
  int first = -1;
  int second = -1;
};

inline constexpr double kOrbitTolerance = 1e-9;
inline constexpr double kEscapeBound = 1e8;
inline constexpr int kEscapeGrowthSteps = 3;

/// Escaping when |z| exceeds kEscapeBound after kEscapeGrowthSteps strictly
/// growing steps; otherwise the lexicographically smallest (preperiod,
/// period) with chordal distance below tol; otherwise undecided.
OrbitClassification classify_orbit(std::span<const ProjPoint> orbit, double tol = kOrbitTolerance);

struct PcfVerdict {
  bool pcf = false;
  /// Some critical orbit was undecided; pcf is then false.
  bool undecided = false;
  std::vector<CriticalPoint> critical;
  std::vector<OrbitClassification> orbits;
};

PcfVerdict is_pcf(const RationalMap& f, int max_iters = 500, double tol = kOrbitTolerance);

/// True iff f has 2d - 2 simple critical points, each periodic, lying on
/// pairwise distinct cycles.
bool is_hyperbolic_disjoint(const RationalMap& f, int max_iters = 500);

struct GreenValue {
  double value = 0;
  /// The last term added; bounds the remaining tail up to a factor d/(d-1).
  double increment = 0;
};

/// d^-n log ||F^n(A)|| for the lift F of f_t with the family's own
/// coefficients and A = (num_a(t), den_a(t)), sup norm, renormalised after
/// every step.
GreenValue green_value(const FamilySpec& F, const MarkedPoint& a, Complex t, int n_iter);

/// Discrete bifurcation measure on a parameter window.
struct GridMeasure {
  GridWindow window;
  std::vector<double> masses;  // indexed by window.index(i, j)
  double total_mass = 0;
  /// Clamped negative mass over total absolute mass, interior cells only.
  double clamped_fraction = 0;
  std::size_t masked_cells = 0;
};

/// masses = max(0, 5-point Laplacian of green_value) * cell area / (2 pi),
/// so the critical value of z^d + t carries mass close to 1 and the critical
/// point mass close to 1/d (up to the part of the measure outside the window).
/// DegenerateParameter cells are masked and carry no mass.
GridMeasure bifurcation_grid(const FamilySpec& F, const MarkedPoint& a, const GridWindow& window,
                             int n_iter, Exec exec = Exec::Parallel);

/// Cellwise sum of grids over the same window; throws ShapeMismatch.
GridMeasure sum_measures(std::span<const GridMeasure> grids);

/// Sum of the grids of the named marked points, which should be the 2d - 2
/// critical points of the family.
GridMeasure bifurcation_measure(const FamilySpec& F, std::span<const std::string> critical,
                                const GridWindow& window, int n_iter, Exec exec = Exec::Parallel);

enum class PcfKind { Center, Misiurewicz };

struct PcfOptions {
  RootOptions roots;
  int degree_cap = 4096;
};

/// Parameters t of z^d + t whose critical orbit is exactly periodic of the
/// given period (Center) or strictly preperiodic with the given preperiod and
/// period (Misiurewicz), sorted by (re, im). Throws DegreeCapExceeded.
std::vector<Complex> pcf_parameters_unicritical(int d, int period, PcfKind kind = PcfKind::Center,
                                                int preperiod = 0, const PcfOptions& opts = {});

/// Max over coarse x coarse blocks of |fraction of points - fraction of mass|.
/// Points outside the window count towards the nearest block.
double equidistribution_discrepancy(std::span<const Complex> points, const GridMeasure& mu,
                                    int coarse);

/// Least-squares slope of log |(f^n)'(f^N(c))| (spherical) over
/// n in [n_max / 2, n_max]. Throws DerivativeVanishes.
double ce_exponent_estimate(const RationalMap& f, const ProjPoint& c, int N, int n_max);

/// max over 2 <= k <= n_max of -log d_k / log k, d_k the chordal distance
/// from f^k(c) to the critical set; +infinity when some d_k (k >= 1) is 0.
double recurrence_exponent_estimate(const RationalMap& f, const ProjPoint& c, int n_max);

struct SeparationStats {
  double fs_frequency = 0;
  /// +infinity when the orbits meet exactly.
  double as_average = 0;
};

SeparationStats separation_statistics(const RationalMap& f, const ProjPoint& a, const ProjPoint& b,
                                      int n, double delta);

struct DynamicRelation {
  enum class Kind { Collision, BothPreperiodic, Unknown };
  Kind kind = Kind::Unknown;
  int m = -1;  // Collision: f^m(a) = f^n(b)
  int n = -1;
};

/// Certifies a collision f^m(a) = f^n(b) with m + n minimal, or
/// preperiodicity of both points. Matches reached only through contraction
/// (spherical derivative of the iterate below 1e-6, or a point landing on an
/// attracting cycle after m > 0 steps) are not certificates.
DynamicRelation dynamically_related_probe(const RationalMap& f, const ProjPoint& a,
                                          const ProjPoint& b, int bound);

struct SimilarityFrame {
  int n = 0;
  double rho = 0;
  /// samples x samples values of xi_n(t0 + rho tau), tau on the square
  /// [-R, R]^2, row-major with the imaginary part outer.
  std::vector<ProjPoint> values;
  /// max chordal distance from h_n(tau) to h_n(0) over |tau| <= R.
  double spread = 0;
  /// Set when the frame was skipped.
  std::optional<ErrorCode> error;
};

struct SimilarityRun {
  double radius = 0;
  int samples = 0;
  std::vector<SimilarityFrame> frames;
  /// Sup chordal distance over |tau| <= R between consecutive frames that
  /// were not skipped.
  std::vector<double> consecutive_distance;
};

/// Below this |d xi_n / dt| the frame is skipped with DerivativeTooSmall.
inline constexpr double kDerivativeFloor = 1e-10;

SimilarityRun similarity_frames(const FamilySpec& F, const MarkedPoint& a, Complex t0,
                                std::span<const int> periods, double window_radius, int samples);

}  // namespace specrig
