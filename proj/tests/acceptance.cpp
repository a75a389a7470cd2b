// Runs the sixteen acceptance criteria and prints one PASS/FAIL line each.
// Exit status is the number of failed criteria (capped at 1).

#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <numbers>
#include <random>
#include <sstream>
#include <string>

#include "specrig/cli.hpp"
#include "specrig/famdyn.hpp"
#include "specrig/moduli.hpp"
#include "specrig/spectrum.hpp"
#include "test_support.hpp"

using namespace specrig;
using namespace specrig::testing;

namespace {

struct Verdict {
  bool pass = true;
  std::string detail;

  void require(bool ok, const std::string& what) {
    if (!ok) {
      pass = false;
      if (!detail.empty()) detail += "; ";
      detail += what;
    }
  }
};

std::string num(double x) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.3g", x);
  return buf;
}

RationalMap quad(Complex c) { return ratmap_new({c, 0.0, 1.0}, {1.0}); }

// |P(x)| / (1 + max |a_k|) for P = num_n - z den_n of formal degree d^n + 1,
// taken in the 1/z chart outside the unit disk.
double fixed_point_residual(const RationalMap& fn, const ProjPoint& x, int formal) {
  const ComplexPoly p = fn.num() - ComplexPoly::z() * fn.den();
  const double scale = 1 + p.max_abs_coeff();
  if (x.is_infinity()) return std::abs(p.coeff(formal)) / scale;
  const Complex z = x.value();
  if (std::abs(z) <= 1) return std::abs(p(z)) / scale;
  return std::abs(p.reversed(formal)(1.0 / z)) / scale;
}

const GridWindow kMandelWindow{-2.5, 1.0, -1.75, 1.75, 256, 256};

std::vector<RationalMap> criterion1_maps() {
  std::mt19937_64 rng(2024);
  std::vector<RationalMap> maps;
  for (int i = 0; i < 50; ++i) maps.push_back(random_map(rng, 2 + i % 2));
  return maps;
}

Verdict fixed_point_count() {
  Verdict v;
  const auto start = std::chrono::steady_clock::now();
  double worst = 0;
  int bad_counts = 0;
  for (const RationalMap& f : criterion1_maps()) {
    for (int n = 1; n <= 3; ++n) {
      const PeriodicPointSet s = fixed_points(f, n);
      const int expect = static_cast<int>(std::pow(f.degree(), n)) + 1;
      int total = 0;
      for (const auto& p : s.points) total += p.multiplicity;
      if (total != expect || s.total != expect) ++bad_counts;
      const RationalMap fn = ratmap_iterate(f, n);
      for (const auto& p : s.points) worst = std::max(worst, fixed_point_residual(fn, p.point, expect));
    }
  }
  const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  v.require(bad_counts == 0, std::to_string(bad_counts) + " wrong counts");
  v.require(worst < 1e-8, "residual " + num(worst));
  v.require(secs < 30, "runtime " + num(secs) + " s");
  v.detail = v.pass ? "150 sets, max residual " + num(worst) + ", " + num(secs) + " s" : v.detail;
  return v;
}

Verdict conjugation_invariance() {
  Verdict v;
  std::mt19937_64 rng(2025);
  double worst = 0;
  int unequal = 0;
  for (int i = 0; i < 50; ++i) {
    const RationalMap f = random_map(rng, 2 + i % 2);
    const RationalMap g = ratmap_conjugate(f, random_mobius(rng));
    const auto c = compare_spectra(tau(f, 3), tau(g, 3));
    worst = std::max(worst, c.distance);
    if (!c.equal) ++unequal;
  }
  v.require(unequal == 0, std::to_string(unequal) + " pairs unequal");
  v.require(worst < 1e-6, "distance " + num(worst));
  if (v.pass) v.detail = "50 pairs, max distance " + num(worst);
  return v;
}

Verdict index_identity() {
  Verdict v;
  double worst = 0;
  int used = 0;
  for (const RationalMap& f : criterion1_maps()) {
    try {
      worst = std::max(worst, std::abs(index_sum_check(f) - 1.0));
      ++used;
    } catch (const Error& e) {
      if (e.code() != ErrorCode::NearParabolic) throw;
    }
  }
  v.require(worst < 1e-6, "deviation " + num(worst));
  if (v.pass) v.detail = std::to_string(used) + " maps, max deviation " + num(worst);
  return v;
}

Verdict milnor_injectivity() {
  Verdict v;
  std::mt19937_64 rng(2026);
  int disagreements = 0;
  double worst = 0;
  for (int i = 0; i < 100; ++i) {
    const RationalMap f = random_map(rng, 2);
    const RationalMap g = i % 2 ? ratmap_conjugate(f, random_mobius(rng)) : random_map(rng, 2);
    const bool tau_equal = compare_spectra(tau(f, 1), tau(g, 1)).equal;
    if (tau_equal != conjugacy_test(f, g).has_value()) ++disagreements;
    worst = std::max({worst, milnor_coordinates(f).relation_residual,
                      milnor_coordinates(g).relation_residual});
  }
  v.require(disagreements == 0, std::to_string(disagreements) + " disagreements");
  v.require(worst < 1e-8, "relation residual " + num(worst));
  if (v.pass) v.detail = "100 pairs, 0 disagreements, relation residual " + num(worst);
  return v;
}

Verdict power_map_closed_form() {
  Verdict v;
  for (int d = 2; d <= 3; ++d)
    for (int n = 1; n <= 3; ++n) {
      const int dn = static_cast<int>(std::pow(d, n));
      std::vector<Complex> expect = {0.0, 0.0};
      expect.insert(expect.end(), dn - 1, static_cast<double>(dn));
      const auto s = multiplier_spectrum(exceptional_map(ExceptionalKind::Power, d), n);
      v.require(same_multiset(s, expect, 1e-8), "d=" + std::to_string(d) + " n=" + std::to_string(n));
    }
  if (v.pass) v.detail = "d in {2,3}, n <= 3";
  return v;
}

Verdict lattes_rigidity() {
  Verdict v;
  const LattesParams params[] = {{1.0, 1.0}, {2.0, 3.0}, {-1.0, 1.0}};
  std::vector<SpectrumTable> tables;
  for (const auto& p : params) tables.push_back(tau(flexible_lattes(p), 2));
  double worst = 0;
  for (int i = 0; i < 3; ++i)
    for (int j = i + 1; j < 3; ++j) worst = std::max(worst, compare_spectra(tables[i], tables[j]).distance);
  v.require(worst < 1e-6, "spectrum distance " + num(worst));

  std::mt19937_64 rng(2027);
  double dup = 0;
  for (const auto& p : params) {
    const RationalMap f = flexible_lattes(p);
    for (int s = 0; s < 20; ++s) {
      const Complex x = rand_unit(rng) * 2.0;
      const Complex y = std::sqrt(x * x * x + p.a * x + p.b);
      const Complex lambda = (3.0 * x * x + p.a) / (2.0 * y);
      dup = std::max(dup, chordal_distance(f(x), lambda * lambda - 2.0 * x));
    }
  }
  v.require(dup < 1e-9, "duplication residual " + num(dup));
  if (v.pass) v.detail = "distance " + num(worst) + ", duplication residual " + num(dup);
  return v;
}

Verdict elementary_equivalence() {
  Verdict v;
  const RationalMap a = ratmap_new({1.0, 3.0, 3.0, 1.0}, {1.0});
  const RationalMap b = ratmap_new({1.0, 0.0, 0.0, 1.0}, {1.0});
  double worst = compare_spectra(tau(a, 2), tau(b, 2)).distance;
  std::mt19937_64 rng(2028);
  for (int i = 0; i < 20; ++i) {
    const int d1 = 1 + i % 2;
    const int d2 = d1 == 1 ? 2 : 1 + (i / 2) % 2;
    const auto [f, g] = elementary_transform(random_map(rng, d1), random_map(rng, d2));
    worst = std::max(worst, compare_spectra(tau(f, 2), tau(g, 2)).distance);
  }
  v.require(worst < 1e-6, "distance " + num(worst));
  if (v.pass) v.detail = "21 pairs, max distance " + num(worst);
  return v;
}

Verdict chebyshev_semiconjugacy() {
  Verdict v;
  const RationalMap t2 = quad(-2.0), z2 = quad(0.0);
  const auto h = semiconjugacy_search(t2, z2, 2);
  v.require(h.has_value(), "no h found");
  if (!h) return v;
  const double r = semiconjugacy_residual(t2, z2, *h);
  double dev = 0;
  for (const auto& p : sample_points())
    dev = std::max(dev, chordal_distance((*h)(p), p.value() + 1.0 / p.value()));
  v.require(r < 1e-7, "residual " + num(r));
  v.require(dev < 1e-9, "deviation from z + 1/z " + num(dev));
  if (v.pass) v.detail = "residual " + num(r) + ", |h - (z + 1/z)| " + num(dev);
  return v;
}

// Classification of the finite critical point 0.
OrbitClassification critical_zero(const PcfVerdict& p) {
  for (std::size_t i = 0; i < p.critical.size(); ++i)
    if (!p.critical[i].point.is_infinity()) return p.orbits[i];
  return {};
}

Verdict pcf_detection() {
  Verdict v;
  const PcfVerdict a = is_pcf(quad(-1.0)), b = is_pcf(quad(-2.0)), c = is_pcf(quad(0.26));
  const auto ca = critical_zero(a), cb = critical_zero(b), cc = critical_zero(c);
  v.require(a.pcf && ca.status == OrbitStatus::Periodic && ca.preperiod == 0 && ca.period == 2,
            "z^2 - 1");
  v.require(b.pcf && cb.status == OrbitStatus::Periodic && cb.preperiod == 2 && cb.period == 1,
            "z^2 - 2");
  v.require(!c.pcf && !c.undecided && cc.status == OrbitStatus::Escaping, "z^2 + 0.26");
  v.require(is_hyperbolic_disjoint(quad(-1.0)), "hyperbolic(z^2 - 1)");
  v.require(!is_hyperbolic_disjoint(quad(-2.0)), "not hyperbolic(z^2 - 2)");
  if (v.pass) v.detail = "(0,2), (2,1), escaping; hyperbolic true/false";
  return v;
}

FamilySpec fixed_point_family() {
  FamilySpec F;
  F.degree = 2;
  F.num_coeffs = {ComplexPoly{0.0, 1.0, -1.0}, ComplexPoly{}, ComplexPoly{1.0}};
  F.den_coeffs = {ComplexPoly{1.0}};
  F.marked["critical"] = MarkedPoint{ComplexPoly{}, ComplexPoly{1.0}};
  F.marked["fixed"] = MarkedPoint{ComplexPoly::z(), ComplexPoly{1.0}};
  return F;
}

Verdict passive_marked_point() {
  Verdict v;
  const FamilySpec F = fixed_point_family();
  const double active = bifurcation_grid(F, F.marked_point("critical"), kMandelWindow, 200).total_mass;
  const double passive = bifurcation_grid(F, F.marked_point("fixed"), kMandelWindow, 200).total_mass;
  v.require(passive < 1e-3 * active, "ratio " + num(passive / active));
  if (v.pass) v.detail = "passive/active mass " + num(passive / active);
  return v;
}

Verdict equidistribution() {
  Verdict v;
  const auto start = std::chrono::steady_clock::now();
  const FamilySpec F = unicritical_family(2);
  const GridMeasure mu = bifurcation_grid(F, F.marked_point("critical"), kMandelWindow, 200);
  const double d6 = equidistribution_discrepancy(pcf_parameters_unicritical(2, 6), mu, 8);
  const double d12 = equidistribution_discrepancy(pcf_parameters_unicritical(2, 12), mu, 8);
  const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  v.require(d12 < d6, "D12 " + num(d12) + " >= D6 " + num(d6));
  v.require(secs < 300, "runtime " + num(secs) + " s");
  if (v.pass) v.detail = "D6 " + num(d6) + ", D12 " + num(d12) + ", " + num(secs) + " s";
  return v;
}

Verdict grid_stability() {
  Verdict v;
  const FamilySpec F = unicritical_family(2);
  GridWindow fine = kMandelWindow;
  fine.nx = fine.ny = 512;
  const GridMeasure a = bifurcation_grid(F, F.marked_point("critical"), kMandelWindow, 200);
  const GridMeasure b = bifurcation_grid(F, F.marked_point("critical"), fine, 200);
  const double rel = std::abs(a.total_mass - b.total_mass) / b.total_mass;
  v.require(rel < 0.05, "relative change " + num(rel));
  v.require(a.clamped_fraction < 0.1 && b.clamped_fraction < 0.1,
            "clamped " + num(a.clamped_fraction) + "/" + num(b.clamped_fraction));
  if (v.pass)
    v.detail = "mass " + num(a.total_mass) + " vs " + num(b.total_mass) + ", clamped " +
               num(std::max(a.clamped_fraction, b.clamped_fraction));
  return v;
}

Verdict green_asymptotic() {
  Verdict v;
  const FamilySpec F = unicritical_family(2);
  const MarkedPoint& crit = F.marked_point("critical");
  const MarkedPoint& value = F.marked_point("value");
  const double g = green_value(F, crit, 100.0, 200).value;
  v.require(std::abs(g - 0.5 * std::log(100.0)) < 0.05, "g(100) = " + num(g));
  std::mt19937_64 rng(2029);
  std::uniform_real_distribution<double> u(-3.0, 3.0);
  double worst = 0;
  for (int found = 0; found < 100;) {
    const Complex t(u(rng), u(rng));
    const double g0 = green_value(F, crit, t, 200).value;
    if (!(g0 > 1e-6)) continue;
    ++found;
    worst = std::max(worst, std::abs(green_value(F, value, t, 200).value - 2 * g0));
  }
  v.require(worst < 1e-6, "functional equation residual " + num(worst));
  if (v.pass) v.detail = "|g - log 10| " + num(std::abs(g - std::log(10.0))) + ", residual " + num(worst);
  return v;
}

Verdict ce_recurrence() {
  Verdict v;
  const double ce = ce_exponent_estimate(quad(-2.0), 0.0, 2, 20);
  v.require(std::abs(ce - std::log(4.0)) <= 0.02, "CE " + num(ce));
  const double pr = recurrence_exponent_estimate(quad(-1.0), 0.0, 20);
  v.require(std::isinf(pr), "recurrence " + num(pr));
  if (v.pass) v.detail = "CE " + num(ce) + ", recurrence sentinel inf";
  return v;
}

Verdict similarity() {
  Verdict v;
  const FamilySpec F = unicritical_family(2);
  const MarkedPoint& crit = F.marked_point("critical");
  const int periods[] = {6, 8, 10};
  const SimilarityRun run = similarity_frames(F, crit, -2.0, periods, 1.0, 33);
  for (const auto& f : run.frames) {
    v.require(!f.error, "frame " + std::to_string(f.n) + " skipped");
    // regression bounds
    v.require(f.spread > 0.2772 && f.spread < 0.2812, "spread " + num(f.spread));
  }
  const auto& cd = run.consecutive_distance;
  v.require(cd.size() == 2 && cd[1] < cd[0], "consecutive distances not decreasing");
  const SimilarityRun centre = similarity_frames(F, crit, 0.0, periods, 1.0, 9);
  bool fired = false;
  for (const auto& f : centre.frames) fired |= f.error == ErrorCode::DerivativeTooSmall;
  v.require(fired, "DerivativeTooSmall did not fire at t0 = 0 (|d xi_n/dt| = 1 there)");
  if (v.pass) v.detail = "spreads in bounds, distances decreasing";
  return v;
}

Verdict determinism() {
  Verdict v;
  const std::vector<std::vector<std::string>> commands = {
      {"spectrum", "--map", SPECRIG_DATA_DIR "/conj_g.json", "--n", "3"},
      {"centers", "--period", "8"},
      {"--format", "pgm", "bifgrid", "--res", "128"},
      {"--format", "csv", "bifgrid", "--res", "128"},
      {"similarity", "--samples", "9"},
  };
  for (const auto& cmd : commands) {
    std::ostringstream o1, o2, e;
    const int c1 = cli::run(cmd, o1, e), c2 = cli::run(cmd, o2, e);
    v.require(c1 == 0 && c2 == 0 && !o1.str().empty() && o1.str() == o2.str(), cmd[0] + " differs");
  }
  std::ostringstream s, p, e;
  cli::run({"--threads", "1", "--format", "pgm", "bifgrid", "--res", "128"}, s, e);
  cli::run({"--threads", "4", "--format", "pgm", "bifgrid", "--res", "128"}, p, e);
  v.require(s.str() == p.str(), "thread count changes the grid");
  if (v.pass) v.detail = "5 commands repeated, 1 vs 4 threads identical";
  return v;
}

}  // namespace

int main() {
  const std::pair<const char*, std::function<Verdict()>> criteria[] = {
      {"fixed-point count", fixed_point_count},
      {"conjugation invariance of tau", conjugation_invariance},
      {"index identity", index_identity},
      {"Milnor injectivity d = 2", milnor_injectivity},
      {"power-map closed form", power_map_closed_form},
      {"flexible Lattes", lattes_rigidity},
      {"elementary equivalence", elementary_equivalence},
      {"Chebyshev semiconjugacy", chebyshev_semiconjugacy},
      {"PCF detection", pcf_detection},
      {"passive marked point", passive_marked_point},
      {"equidistribution", equidistribution},
      {"grid stability", grid_stability},
      {"Green asymptotic", green_asymptotic},
      {"CE / recurrence", ce_recurrence},
      {"similarity", similarity},
      {"determinism", determinism},
  };
  int failed = 0;
  int index = 0;
  for (const auto& [name, fn] : criteria) {
    ++index;
    Verdict v;
    try {
      v = fn();
    } catch (const std::exception& e) {
      v.pass = false;
      v.detail = std::string("exception: ") + e.what();
    }
    if (!v.pass) ++failed;
    std::printf("%s %2d %s: %s\n", v.pass ? "PASS" : "FAIL", index, name, v.detail.c_str());
    std::fflush(stdout);
  }
  std::printf("%d/%d criteria passed\n", index - failed, index);
  return failed == 0 ? 0 : 1;
}
