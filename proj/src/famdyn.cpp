#include "specrig/famdyn.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>
#include <numbers>

namespace specrig {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

// Coefficients of the z-polynomials of f_t, padded to length d + 1.
void specialise(const FamilySpec& F, Complex t, std::vector<Complex>& p, std::vector<Complex>& q) {
  const auto d = static_cast<std::size_t>(F.degree);
  p.assign(d + 1, Complex{});
  q.assign(d + 1, Complex{});
  for (std::size_t k = 0; k < F.num_coeffs.size() && k <= d; ++k) p[k] = F.num_coeffs[k](t);
  for (std::size_t k = 0; k < F.den_coeffs.size() && k <= d; ++k) q[k] = F.den_coeffs[k](t);
}

[[noreturn]] void degenerate(Complex t, const std::string& why) {
  char buf[96];
  std::snprintf(buf, sizeof buf, "at t = (%.6g, %.6g): ", t.real(), t.imag());
  throw Error(ErrorCode::DegenerateParameter, buf + why);
}

double cycle_multiplier(const RationalMap& f, std::span<const ProjPoint> orbit, int m, int p) {
  double lam = 1;
  for (int k = m; k < m + p; ++k) lam *= f.spherical_derivative(orbit[k]);
  return lam;
}

}  // namespace

ProjPoint MarkedPoint::at(Complex t) const {
  const auto [x, y] = lift(t);
  if (y == Complex{}) return ProjPoint::infinity();
  return x / y;
}

const MarkedPoint& FamilySpec::marked_point(const std::string& name) const {
  const auto it = marked.find(name);
  if (it == marked.end()) throw Error(ErrorCode::InvalidInput, "unknown marked point '" + name + "'");
  return it->second;
}

FamilySpec unicritical_family(int d) {
  if (d < 2) throw Error(ErrorCode::InvalidInput, "unicritical family needs d >= 2");
  FamilySpec F;
  F.degree = d;
  F.num_coeffs.assign(static_cast<std::size_t>(d) + 1, ComplexPoly{});
  F.num_coeffs[0] = ComplexPoly::z();
  F.num_coeffs[d] = ComplexPoly::constant(1.0);
  F.den_coeffs = {ComplexPoly::constant(1.0)};
  F.marked["critical"] = MarkedPoint{ComplexPoly{}, ComplexPoly::constant(1.0)};
  F.marked["value"] = MarkedPoint{ComplexPoly::z(), ComplexPoly::constant(1.0)};
  return F;
}

RationalMap family_eval(const FamilySpec& F, Complex t) {
  if (!std::isfinite(t.real()) || !std::isfinite(t.imag()))
    throw Error(ErrorCode::InvalidInput, "family_eval: parameter must be finite");
  std::vector<Complex> p, q;
  specialise(F, t, p, q);
  ComplexPoly num(std::move(p)), den(std::move(q));
  if (num.is_zero() || den.is_zero()) degenerate(t, "numerator or denominator vanishes");
  if (std::max(num.degree(), den.degree()) != F.degree) degenerate(t, "degree drops");
  try {
    return ratmap_new(std::move(num), std::move(den));
  } catch (const Error& e) {
    if (e.code() == ErrorCode::DegenerateMap) degenerate(t, "resultant vanishes");
    throw;
  }
}

std::vector<ProjPoint> marked_orbit(const FamilySpec& F, const MarkedPoint& a, Complex t, int n) {
  const RationalMap f = family_eval(F, t);
  return orbit(f, a.at(t), n);
}

OrbitClassification classify_orbit(std::span<const ProjPoint> orbit, double tol) {
  OrbitClassification out;
  const int len = static_cast<int>(orbit.size());
  int growth = 0;
  for (int k = 1; k < len; ++k) {
    growth = orbit[k].modulus() > orbit[k - 1].modulus() ? growth + 1 : 0;
    if (orbit[k].modulus() > kEscapeBound && growth >= kEscapeGrowthSteps) {
      out.status = OrbitStatus::Escaping;
      out.first = k;
      return out;
    }
  }
  for (int m = 0; m < len; ++m) {
    for (int p = 1; m + p < len; ++p) {
      if (chordal_distance(orbit[m + p], orbit[m]) < tol) {
        out.status = OrbitStatus::Periodic;
        out.preperiod = m;
        out.period = p;
        out.first = m;
        out.second = m + p;
        return out;
      }
    }
  }
  return out;
}

PcfVerdict is_pcf(const RationalMap& f, int max_iters, double tol) {
  PcfVerdict v;
  v.critical = critical_points(f);
  v.pcf = true;
  for (const auto& c : v.critical) {
    const auto orb = orbit(f, c.point, max_iters);
    v.orbits.push_back(classify_orbit(orb, tol));
    const OrbitStatus s = v.orbits.back().status;
    if (s != OrbitStatus::Periodic) v.pcf = false;
    if (s == OrbitStatus::Undecided) v.undecided = true;
  }
  return v;
}

bool is_hyperbolic_disjoint(const RationalMap& f, int max_iters) {
  const auto crit = critical_points(f);
  if (static_cast<int>(crit.size()) != 2 * f.degree() - 2) return false;
  std::vector<std::vector<ProjPoint>> orbits;
  std::vector<OrbitClassification> cls;
  for (const auto& c : crit) {
    if (c.multiplicity != 1) return false;
    orbits.push_back(orbit(f, c.point, max_iters));
    cls.push_back(classify_orbit(orbits.back()));
    if (cls.back().status != OrbitStatus::Periodic || cls.back().preperiod != 0) return false;
  }
  for (std::size_t i = 0; i < crit.size(); ++i)
    for (std::size_t j = i + 1; j < crit.size(); ++j)
      for (int k = 0; k < cls[i].period; ++k)
        if (chordal_distance(orbits[i][k], crit[j].point) < kOrbitTolerance) return false;
  return true;
}

GreenValue green_value(const FamilySpec& F, const MarkedPoint& a, Complex t, int n_iter) {
  if (n_iter < 0) throw Error(ErrorCode::InvalidInput, "green_value: n_iter must be >= 0");
  family_eval(F, t);
  std::vector<Complex> p, q;
  specialise(F, t, p, q);
  const int d = F.degree;

  auto [x, y] = a.lift(t);
  double s = std::max(std::abs(x), std::abs(y));
  if (!(s > 0) || !std::isfinite(s)) degenerate(t, "marked point lift vanishes");
  GreenValue g;
  g.value = std::log(s);
  x /= s;
  y /= s;
  std::vector<Complex> xp(d + 1), yp(d + 1);
  double weight = 1;
  for (int k = 1; k <= n_iter; ++k) {
    xp[0] = yp[0] = 1.0;
    for (int j = 1; j <= d; ++j) {
      xp[j] = xp[j - 1] * x;
      yp[j] = yp[j - 1] * y;
    }
    Complex X{}, Y{};
    for (int j = 0; j <= d; ++j) {
      X += p[j] * xp[j] * yp[d - j];
      Y += q[j] * xp[j] * yp[d - j];
    }
    s = std::max(std::abs(X), std::abs(Y));
    if (!(s > 0) || !std::isfinite(s)) degenerate(t, "lift collapses along the orbit");
    weight /= d;
    g.increment = weight * std::log(s);
    g.value += g.increment;
    x = X / s;
    y = Y / s;
  }
  return g;
}

GridMeasure bifurcation_grid(const FamilySpec& F, const MarkedPoint& a, const GridWindow& window,
                             int n_iter, Exec exec) {
  if (window.nx < 16 || window.ny < 16)
    throw Error(ErrorCode::InvalidInput, "bifurcation_grid: resolution must be at least 16 x 16");
  if (!(window.re_max > window.re_min) || !(window.im_max > window.im_min))
    throw Error(ErrorCode::InvalidInput, "bifurcation_grid: empty window");

  const std::size_t cells = window.cells();
  std::vector<double> g(cells), lap(cells);
  kernels::fill_grid(
      exec, window,
      [&](Complex t) {
        try {
          return green_value(F, a, t, n_iter).value;
        } catch (const Error&) {
          return std::numeric_limits<double>::quiet_NaN();
        }
      },
      std::span<double>(g));
  kernels::laplacian(exec, window, g, lap);

  GridMeasure mu;
  mu.window = window;
  mu.masses.assign(cells, 0.0);
  double positive = 0, negative = 0;
  const double norm = 1.0 / (2 * std::numbers::pi);
  for (int j = 0; j < window.ny; ++j) {
    for (int i = 0; i < window.nx; ++i) {
      const std::size_t c = window.index(i, j);
      if (std::isnan(g[c])) {
        ++mu.masked_cells;
        continue;
      }
      const double m = lap[c] * norm;
      if (m > 0) mu.masses[c] = m;
      const bool interior = i > 0 && j > 0 && i + 1 < window.nx && j + 1 < window.ny &&
                            !std::isnan(g[c - 1]) && !std::isnan(g[c + 1]) &&
                            !std::isnan(g[c - window.nx]) && !std::isnan(g[c + window.nx]);
      if (interior) (m > 0 ? positive : negative) += std::abs(m);
    }
  }
  for (const double m : mu.masses) mu.total_mass += m;
  mu.clamped_fraction = positive + negative > 0 ? negative / (positive + negative) : 0.0;
  return mu;
}

GridMeasure sum_measures(std::span<const GridMeasure> grids) {
  if (grids.empty()) throw Error(ErrorCode::InvalidInput, "sum_measures: no grids");
  GridMeasure out = grids.front();
  for (std::size_t k = 1; k < grids.size(); ++k) {
    const GridWindow& w = grids[k].window;
    const GridWindow& v = out.window;
    if (w.nx != v.nx || w.ny != v.ny || w.re_min != v.re_min || w.re_max != v.re_max ||
        w.im_min != v.im_min || w.im_max != v.im_max)
      throw Error(ErrorCode::ShapeMismatch, "sum_measures: windows differ");
    for (std::size_t c = 0; c < out.masses.size(); ++c) out.masses[c] += grids[k].masses[c];
    out.clamped_fraction = std::max(out.clamped_fraction, grids[k].clamped_fraction);
    out.masked_cells = std::max(out.masked_cells, grids[k].masked_cells);
  }
  out.total_mass = 0;
  for (const double m : out.masses) out.total_mass += m;
  return out;
}

GridMeasure bifurcation_measure(const FamilySpec& F, std::span<const std::string> critical,
                                const GridWindow& window, int n_iter, Exec exec) {
  std::vector<GridMeasure> grids;
  for (const auto& name : critical)
    grids.push_back(bifurcation_grid(F, F.marked_point(name), window, n_iter, exec));
  return sum_measures(grids);
}

double equidistribution_discrepancy(std::span<const Complex> points, const GridMeasure& mu,
                                    int coarse) {
  if (coarse < 1) throw Error(ErrorCode::InvalidInput, "equidistribution: coarse must be >= 1");
  if (points.empty()) throw Error(ErrorCode::InvalidInput, "equidistribution: no points");
  if (!(mu.total_mass > 0)) throw Error(ErrorCode::InvalidInput, "equidistribution: zero mass");
  const GridWindow& w = mu.window;
  const auto nb = static_cast<std::size_t>(coarse);
  std::vector<double> mass(nb * nb, 0.0), count(nb * nb, 0.0);
  for (int j = 0; j < w.ny; ++j)
    for (int i = 0; i < w.nx; ++i) {
      const std::size_t bi = static_cast<std::size_t>(i) * nb / w.nx;
      const std::size_t bj = static_cast<std::size_t>(j) * nb / w.ny;
      mass[bj * nb + bi] += mu.masses[w.index(i, j)];
    }
  auto block = [&](double x, double lo, double hi) {
    const double f = std::floor((x - lo) / (hi - lo) * coarse);
    return static_cast<std::size_t>(std::clamp(f, 0.0, static_cast<double>(coarse - 1)));
  };
  for (const Complex& p : points)
    count[block(p.imag(), w.im_min, w.im_max) * nb + block(p.real(), w.re_min, w.re_max)] += 1;
  double worst = 0;
  for (std::size_t b = 0; b < nb * nb; ++b)
    worst = std::max(worst, std::abs(count[b] / static_cast<double>(points.size()) -
                                     mass[b] / mu.total_mass));
  return worst;
}

double ce_exponent_estimate(const RationalMap& f, const ProjPoint& c, int N, int n_max) {
  if (N < 0 || n_max < 2) throw Error(ErrorCode::InvalidInput, "ce_exponent_estimate: need N >= 0, n_max >= 2");
  ProjPoint x = c;
  for (int k = 0; k < N; ++k) x = f(x);
  std::vector<double> cum(static_cast<std::size_t>(n_max) + 1, 0.0);
  for (int n = 1; n <= n_max; ++n) {
    const double s = f.spherical_derivative(x);
    if (!(s > 0) || !std::isfinite(s))
      throw Error(ErrorCode::DerivativeVanishes,
                  "orbit meets a critical point after " + std::to_string(N + n - 1) + " steps");
    cum[n] = cum[n - 1] + std::log(s);
    x = f(x);
  }
  double sx = 0, sy = 0, sxx = 0, sxy = 0, cnt = 0;
  for (int n = n_max / 2; n <= n_max; ++n) {
    sx += n;
    sy += cum[n];
    sxx += static_cast<double>(n) * n;
    sxy += n * cum[n];
    cnt += 1;
  }
  return (cnt * sxy - sx * sy) / (cnt * sxx - sx * sx);
}

double recurrence_exponent_estimate(const RationalMap& f, const ProjPoint& c, int n_max) {
  if (f.degree() < 2) throw Error(ErrorCode::InvalidInput, "recurrence estimate needs d >= 2");
  const auto crit = critical_points(f);
  // Distances at rounding level count as collisions.
  constexpr double kCollision = 1e-14;
  double s = 0;
  ProjPoint x = c;
  for (int k = 1; k <= n_max; ++k) {
    x = f(x);
    double dist = 1;
    for (const auto& cp : crit) dist = std::min(dist, chordal_distance(x, cp.point));
    if (dist <= kCollision) return kInf;
    if (k >= 2) s = std::max(s, -std::log(dist) / std::log(static_cast<double>(k)));
  }
  return s;
}

SeparationStats separation_statistics(const RationalMap& f, const ProjPoint& a, const ProjPoint& b,
                                      int n, double delta) {
  if (n < 1) throw Error(ErrorCode::InvalidInput, "separation_statistics: n must be >= 1");
  ProjPoint x = a, y = b;
  int separated = 0;
  double sum = 0;
  for (int k = 0; k < n; ++k) {
    const double dist = chordal_distance(x, y);
    if (dist >= delta) ++separated;
    sum += dist > 0 ? std::max(-std::log(dist), 0.0) : kInf;
    x = f(x);
    y = f(y);
  }
  return {static_cast<double>(separated) / n, sum / n};
}

DynamicRelation dynamically_related_probe(const RationalMap& f, const ProjPoint& a,
                                          const ProjPoint& b, int bound) {
  DynamicRelation out;
  if (bound < 0) return out;
  const auto oa = orbit(f, a, bound);
  const auto ob = orbit(f, b, bound);
  // log of the spherical derivative of f^k at the starting point.
  auto log_derivatives = [&](const std::vector<ProjPoint>& o) {
    std::vector<double> ld(o.size(), 0.0);
    for (std::size_t k = 1; k < o.size(); ++k)
      ld[k] = ld[k - 1] + std::log(f.spherical_derivative(o[k - 1]));
    return ld;
  };
  const auto la = log_derivatives(oa);
  const auto lb = log_derivatives(ob);
  const double floor = std::log(1e-6);

  for (int s = 0; s <= 2 * bound; ++s) {
    for (int m = std::max(0, s - bound); m <= std::min(s, bound); ++m) {
      const int n = s - m;
      if (chordal_distance(oa[m], ob[n]) >= kOrbitTolerance) continue;
      if ((m > 0 && !(la[m] >= floor)) || (n > 0 && !(lb[n] >= floor))) continue;
      out.kind = DynamicRelation::Kind::Collision;
      out.m = m;
      out.n = n;
      return out;
    }
  }
  auto certified_preperiodic = [&](const std::vector<ProjPoint>& o) {
    const auto cls = classify_orbit(o);
    if (cls.status != OrbitStatus::Periodic) return false;
    return cls.preperiod == 0 || cycle_multiplier(f, o, cls.preperiod, cls.period) >= 1.0;
  };
  if (certified_preperiodic(oa) && certified_preperiodic(ob))
    out.kind = DynamicRelation::Kind::BothPreperiodic;
  return out;
}

SimilarityRun similarity_frames(const FamilySpec& F, const MarkedPoint& a, Complex t0,
                                std::span<const int> periods, double window_radius, int samples) {
  if (samples < 2 || !(window_radius > 0))
    throw Error(ErrorCode::InvalidInput, "similarity_frames: need samples >= 2 and radius > 0");
  family_eval(F, t0);
  SimilarityRun run;
  run.radius = window_radius;
  run.samples = samples;

  std::vector<std::size_t> disk;
  std::vector<Complex> taus;
  for (int jy = 0; jy < samples; ++jy)
    for (int jx = 0; jx < samples; ++jx) {
      const Complex tau = window_radius * Complex(-1.0 + 2.0 * jx / (samples - 1),
                                                  -1.0 + 2.0 * jy / (samples - 1));
      if (std::abs(tau) <= window_radius * (1 + 1e-12)) disk.push_back(taus.size());
      taus.push_back(tau);
    }

  const SimilarityFrame* previous = nullptr;
  run.frames.reserve(periods.size());
  for (const int n : periods) {
    SimilarityFrame frame;
    frame.n = n;
    auto xi = [&](Complex t) { return marked_orbit(F, a, t, n).back(); };
    const ProjPoint base = xi(t0);
    // Affine coordinate unless the orbit sits at infinity.
    const bool inverted = base.is_infinity();
    auto chart = [&](Complex t) -> Complex {
      const ProjPoint p = xi(t);
      if (!inverted) return p.is_infinity() ? Complex(kInf, 0) : p.value();
      return p.is_infinity() ? Complex{} : 1.0 / p.value();
    };
    // Central differences, halving the step until two estimates agree.
    double h = 1e-2 * std::max(1.0, std::abs(t0));
    Complex deriv = (chart(t0 + h) - chart(t0 - h)) / (2 * h);
    for (int it = 0; it < 60 && h > 1e-14; ++it) {
      h /= 2;
      const Complex next = (chart(t0 + h) - chart(t0 - h)) / (2 * h);
      const bool done = std::abs(next - deriv) <= 1e-6 * std::abs(next);
      deriv = next;
      if (done) break;
    }
    const double mod = std::abs(deriv);
    if (!(mod >= kDerivativeFloor) || !std::isfinite(mod)) {
      frame.error = ErrorCode::DerivativeTooSmall;
      run.frames.push_back(std::move(frame));
      continue;
    }
    frame.rho = 1.0 / mod;
    frame.values.reserve(taus.size());
    for (const Complex& tau : taus) frame.values.push_back(xi(t0 + frame.rho * tau));
    for (const std::size_t k : disk)
      frame.spread = std::max(frame.spread, chordal_distance(frame.values[k], base));
    run.frames.push_back(std::move(frame));
    const SimilarityFrame& cur = run.frames.back();
    if (previous) {
      double dist = 0;
      for (const std::size_t k : disk)
        dist = std::max(dist, chordal_distance(cur.values[k], previous->values[k]));
      run.consecutive_distance.push_back(dist);
    }
    previous = &cur;
  }
  return run;
}

}  // namespace specrig
