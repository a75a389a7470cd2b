#include "specrig/spectrum.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "periodic_eval.hpp"
#include "specrig/error.hpp"
#include "specrig/rootfind.hpp"

namespace specrig {

namespace {

long long checked_power(int d, int n, long long cap) {
  long long v = 1;
  for (int i = 0; i < n; ++i) {
    v *= d;
    if (v > cap) return cap + 1;
  }
  return v;
}

// One pass along the orbit of x in charts; the final image is expressed in
// the chart of x.
LocalImage chain(const RationalMap& f, const ChartPoint& x, int n) {
  LocalImage acc{x, 1.0};
  for (int i = 0; i < n; ++i) {
    const bool last = i == n - 1;
    const LocalImage li =
        f.local(acc.image, last ? std::optional<bool>(x.inverted) : std::nullopt);
    acc.image = li.image;
    acc.derivative *= li.derivative;
  }
  return acc;
}

// Newton on u -> F(u) - u in the chart of x; a step is kept only if the
// residual shrinks.
ProjPoint polish_periodic(const RationalMap& f, const ProjPoint& x, int n) {
  ChartPoint c = ChartPoint::from(x);
  LocalImage li = chain(f, c, n);
  double res = std::abs(li.image.u - c.u);
  for (int it = 0; it < 4 && res > 0; ++it) {
    const Complex denom = li.derivative - 1.0;
    if (!(std::abs(denom) > 1e-8)) break;
    ChartPoint next{c.u - (li.image.u - c.u) / denom, c.inverted};
    const LocalImage nli = chain(f, next, n);
    const double nres = std::abs(nli.image.u - next.u);
    if (!(nres < res)) break;
    c = next;
    li = nli;
    res = nres;
  }
  return c.to_point();
}

// Roots of the fixed-point polynomial. In double precision they are found
// through the pointwise lift evaluator; the formal coefficients only supply
// the degree and the starting points. Extended precision works on the
// coefficients directly.
std::vector<RootCluster> periodic_roots(const RationalMap& f, int n, const ComplexPoly& fix,
                                        const SpectrumOptions& opts) {
  if (opts.roots.precision_bits > 0) return poly_roots(fix, opts.roots);
  const PeriodicEval eval(f, n, fix.degree(), std::log(std::abs(fix.leading())));
  RawRoots raw = aberth(eval, newton_polygon_start(fix.coeffs(), opts.roots.seed), opts.roots);
  for (std::size_t i = 0; i < raw.roots.size(); ++i)
    raw.log_radius[i] =
        std::min(raw.log_radius[i], std::log(1e-3 * std::max(1.0, std::abs(raw.roots[i]))));
  auto abs_value = [&](Complex z) { return std::exp(eval.step(z).log_abs_value); };
  auto clusters = cluster_roots(raw, abs_value, opts.roots);
  // Accept a centre when |N| is within a bounded factor of its rounding level.
  const double slack = std::log(opts.roots.acceptance / std::numeric_limits<double>::epsilon());
  for (const auto& cl : clusters) {
    const auto st = eval.step(cl.value);
    if (st.log_abs_value - st.log_abs_error > slack)
      throw Error(ErrorCode::NonConvergence,
                  "periodic point of period " + std::to_string(n) + " fails the residual test");
  }
  std::sort(clusters.begin(), clusters.end(), [](const RootCluster& a, const RootCluster& b) {
    if (a.value.real() != b.value.real()) return a.value.real() < b.value.real();
    return a.value.imag() < b.value.imag();
  });
  return clusters;
}

}  // namespace

PeriodicPointSet fixed_points(const RationalMap& f, int n, const SpectrumOptions& opts) {
  if (n < 1) throw Error(ErrorCode::InvalidInput, "period must be >= 1");
  const long long dn = checked_power(f.degree(), n, opts.root_degree_cap);
  if (dn + 1 > opts.root_degree_cap)
    throw Error(ErrorCode::DegreeCapExceeded,
                "fixed-point polynomial of f^" + std::to_string(n) + " exceeds the root degree cap " +
                    std::to_string(opts.root_degree_cap));
  const RationalMap fn = ratmap_iterate(f, n, opts.degree_cap);
  const int total = static_cast<int>(dn) + 1;

  // num - z den, trimmed against the size of the two contributions.
  std::vector<Complex> c(static_cast<std::size_t>(total) + 1);
  std::vector<double> m(c.size());
  for (int k = 0; k <= total; ++k) {
    c[k] = fn.num().coeff(k) - fn.den().coeff(k - 1);
    m[k] = std::abs(fn.num().coeff(k)) + std::abs(fn.den().coeff(k - 1));
  }
  const ComplexPoly fix = ComplexPoly::from_computed(std::move(c), m);
  PeriodicPointSet out;
  out.period = n;
  out.total = total;
  int finite = 0;
  if (!fix.is_zero() && fix.degree() >= 1) {
    for (const auto& c : periodic_roots(f, n, fix, opts)) {
      ProjPoint p = c.value;
      if (opts.polish && c.multiplicity == 1) p = polish_periodic(f, p, n);
      out.points.push_back({p, c.multiplicity});
      finite += c.multiplicity;
    }
  }
  if (finite < total) out.points.push_back({ProjPoint::infinity(), total - finite});
  return out;
}

std::vector<std::vector<ProjPoint>> periodic_cycles(const RationalMap& f, int n,
                                                    const SpectrumOptions& opts) {
  constexpr double kSame = 1e-6;
  std::vector<ProjPoint> pool;
  for (const auto& p : fixed_points(f, n, opts).points) {
    bool lower = false;
    for (int q = 1; q < n && !lower; ++q) {
      if (n % q != 0) continue;
      lower = chordal_distance(orbit(f, p.point, q).back(), p.point) < kSame;
    }
    if (!lower) pool.push_back(p.point);
  }
  std::vector<std::vector<ProjPoint>> cycles;
  std::vector<bool> used(pool.size(), false);
  for (std::size_t i = 0; i < pool.size(); ++i) {
    if (used[i]) continue;
    used[i] = true;
    std::vector<ProjPoint> cycle{pool[i]};
    ProjPoint x = pool[i];
    for (int k = 1; k < n; ++k) {
      x = f(x);
      std::size_t best = pool.size();
      double dist = kSame;
      for (std::size_t j = 0; j < pool.size(); ++j) {
        if (used[j]) continue;
        const double dj = chordal_distance(pool[j], x);
        if (dj < dist) {
          dist = dj;
          best = j;
        }
      }
      if (best < pool.size()) {
        used[best] = true;
        cycle.push_back(pool[best]);
      } else {
        cycle.push_back(x);
      }
    }
    cycles.push_back(std::move(cycle));
  }
  return cycles;
}

Complex multiplier(const RationalMap& f, const ProjPoint& x, int n) {
  if (n < 1) throw Error(ErrorCode::InvalidInput, "period must be >= 1");
  const LocalImage li = chain(f, ChartPoint::from(x), n);
  const double dist = chordal_distance(li.image.to_point(), x);
  if (!(dist < kPeriodicTolerance))
    throw Error(ErrorCode::NotPeriodic, "point is not fixed by f^" + std::to_string(n) +
                                            " (chordal distance " + std::to_string(dist) + ")");
  return li.derivative;
}

std::vector<Complex> multiplier_spectrum(const RationalMap& f, int n, const SpectrumOptions& opts) {
  const PeriodicPointSet fix = fixed_points(f, n, opts);
  std::vector<Complex> s;
  s.reserve(fix.total);
  for (const auto& p : fix.points) {
    const Complex lambda = multiplier(f, p.point, n);
    for (int k = 0; k < p.multiplicity; ++k) s.push_back(lambda);
  }
  return s;
}

std::vector<double> length_spectrum(const RationalMap& f, int n, const SpectrumOptions& opts) {
  std::vector<double> out;
  for (const Complex& l : multiplier_spectrum(f, n, opts)) out.push_back(std::abs(l));
  return out;
}

namespace {

// Coefficients of prod (X - v_i / r): e_k (scaled) with signs stripped.
std::vector<Complex> expand(std::span<const Complex> values, double r) {
  const std::size_t n = values.size();
  // c[k] = e_k of the values processed so far.
  std::vector<Complex> c(n + 1);
  c[0] = 1.0;
  for (std::size_t i = 0; i < n; ++i) {
    const Complex v = values[i] / r;
    for (std::size_t k = i + 1; k >= 1; --k) c[k] += v * c[k - 1];
  }
  return {c.begin() + 1, c.end()};
}

}  // namespace

std::vector<Complex> spectrum_coordinates(std::span<const Complex> values) {
  return expand(values, 1.0);
}

std::vector<Complex> scaled_spectrum_coordinates(std::span<const Complex> values, double& scale) {
  scale = 1.0;
  for (const auto& v : values) scale = std::max(scale, std::abs(v));
  return expand(values, scale);
}

PeriodSpectrum make_period_spectrum(int n, std::vector<Complex> multipliers) {
  PeriodSpectrum p;
  p.n = n;
  p.sigma = scaled_spectrum_coordinates(multipliers, p.scale);
  p.multipliers = std::move(multipliers);
  return p;
}

SpectrumTable tau(const RationalMap& f, int n_max, const SpectrumOptions& opts) {
  if (n_max < 1) throw Error(ErrorCode::InvalidInput, "n_max must be >= 1");
  SpectrumTable t;
  t.degree = f.degree();
  t.n_max = n_max;
  for (int n = 1; n <= n_max; ++n)
    t.periods.push_back(make_period_spectrum(n, multiplier_spectrum(f, n, opts)));
  return t;
}

SpectrumComparison compare_spectra(const SpectrumTable& a, const SpectrumTable& b, double tol) {
  if (a.degree != b.degree || a.n_max != b.n_max || a.periods.size() != b.periods.size())
    throw Error(ErrorCode::ShapeMismatch, "spectrum tables differ in degree or n_max");
  SpectrumComparison out;
  for (std::size_t i = 0; i < a.periods.size(); ++i) {
    const PeriodSpectrum& pa = a.periods[i];
    const PeriodSpectrum& pb = b.periods[i];
    if (pa.n != pb.n || pa.sigma.size() != pb.sigma.size())
      throw Error(ErrorCode::ShapeMismatch, "spectrum tables differ at period " +
                                                std::to_string(pa.n));
    const double r = std::max(pa.scale, pb.scale);
    const double qa = pa.scale / r, qb = pb.scale / r;
    double fa = 1.0, fb = 1.0;
    for (std::size_t k = 0; k < pa.sigma.size(); ++k) {
      fa *= qa;
      fb *= qb;
      const Complex x = pa.sigma[k] * fa;
      const Complex y = pb.sigma[k] * fb;
      out.distance = std::max(out.distance, std::abs(x - y) / (1 + std::abs(x) + std::abs(y)));
    }
  }
  out.equal = out.distance < tol;
  return out;
}

Complex index_sum_check(const RationalMap& f, const SpectrumOptions& opts) {
  const PeriodicPointSet fix = fixed_points(f, 1, opts);
  Complex sum{};
  for (const auto& p : fix.points) {
    const Complex lambda = multiplier(f, p.point, 1);
    if (std::abs(lambda - 1.0) < 1e-3)
      throw Error(ErrorCode::NearParabolic, "fixed point with multiplier near 1");
    sum += static_cast<double>(p.multiplicity) / (1.0 - lambda);
  }
  return sum;
}

}  // namespace specrig
