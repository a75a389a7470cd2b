#include "specrig/moduli.hpp"

#include <Eigen/Dense>
#include <array>
#include <cmath>
#include <functional>
#include <numbers>
#include <string>

#include "specrig/error.hpp"

namespace specrig {

std::vector<ProjPoint> sample_points() {
  std::vector<ProjPoint> pts;
  for (const double r : {0.7, 1.3})
    for (int k = 0; k < 32; ++k)
      pts.push_back(std::polar(r, 2 * std::numbers::pi * (k + 0.37) / 32));
  return pts;
}

namespace {

constexpr double kDistinct = 1e-6;

struct Marker {
  ProjPoint point;
  int period = 1;
  Complex lambda;
  int multiplicity = 1;
};

// Fixed points, then points of exact period 2; simple points first in each
// period so that triples avoid the less accurate cluster centroids.
std::vector<Marker> markers(const RationalMap& f, const SpectrumOptions& opts) {
  std::vector<Marker> simple, multiple;
  for (const auto& p : fixed_points(f, 1, opts).points) {
    Marker m{p.point, 1, multiplier(f, p.point, 1), p.multiplicity};
    (p.multiplicity == 1 ? simple : multiple).push_back(m);
  }
  std::vector<Marker> out(simple);
  out.insert(out.end(), multiple.begin(), multiple.end());
  for (const auto& cycle : periodic_cycles(f, 2, opts))
    for (const auto& x : cycle) out.push_back({x, 2, multiplier(f, x, 2), 1});
  return out;
}

bool same_multiplier(Complex a, Complex b) { return std::abs(a - b) <= 1e-5 * (1 + std::abs(a)); }

}  // namespace

std::optional<ConjugacyWitness> conjugacy_test(const RationalMap& f, const RationalMap& g,
                                               const SpectrumOptions& opts) {
  if (f.degree() != g.degree())
    throw Error(ErrorCode::ShapeMismatch, "conjugacy test needs maps of equal degree");
  const std::vector<Marker> mf = markers(f, opts);
  std::vector<Marker> triple;
  for (const auto& m : mf) {
    bool distinct = true;
    for (const auto& t : triple) distinct &= chordal_distance(t.point, m.point) > kDistinct;
    if (distinct) triple.push_back(m);
    if (triple.size() == 3) break;
  }
  if (triple.size() < 3)
    throw Error(ErrorCode::InsufficientMarkers,
                "fewer than three distinct points of period <= 2");
  const std::vector<Marker> mg = markers(g, opts);
  const std::vector<ProjPoint> samples = sample_points();

  std::array<std::vector<std::size_t>, 3> options;
  for (int i = 0; i < 3; ++i)
    for (std::size_t j = 0; j < mg.size(); ++j)
      if (mg[j].period == triple[i].period && same_multiplier(mg[j].lambda, triple[i].lambda))
        options[i].push_back(j);

  const std::array<ProjPoint, 3> from{triple[0].point, triple[1].point, triple[2].point};
  for (const std::size_t j0 : options[0])
    for (const std::size_t j1 : options[1])
      for (const std::size_t j2 : options[2]) {
        if (j0 == j1 || j0 == j2 || j1 == j2) continue;
        std::optional<MobiusTransform> phi;
        try {
          phi = MobiusTransform::from_triples(from, {mg[j0].point, mg[j1].point, mg[j2].point});
        } catch (const Error&) {
          continue;
        }
        const MobiusTransform inv = phi->inverse();
        double residual = 0;
        for (const auto& w : samples) {
          residual = std::max(residual, chordal_distance((*phi)(f(inv(w))), g(w)));
          if (!(residual < kConjugacyTolerance)) break;
        }
        if (residual < kConjugacyTolerance) return ConjugacyWitness{*phi, residual};
      }
  return std::nullopt;
}

MilnorCoordinates milnor_coordinates(const RationalMap& f, const SpectrumOptions& opts) {
  if (f.degree() != 2) throw Error(ErrorCode::InvalidInput, "Milnor coordinates need degree 2");
  const auto s = multiplier_spectrum(f, 1, opts);
  const auto e = spectrum_coordinates(s);
  return {e[0], e[1], e[2], std::abs(e[2] - (e[0] - 2.0))};
}

RationalMap exceptional_map(ExceptionalKind kind, int d) {
  if (d < 2) throw Error(ErrorCode::InvalidInput, "exceptional maps need degree >= 2");
  if (kind == ExceptionalKind::Power) return ratmap_new(ComplexPoly::monomial(1.0, d), {1.0});
  ComplexPoly prev = ComplexPoly::constant(2.0), cur = ComplexPoly::z();
  for (int k = 1; k < d; ++k) {
    ComplexPoly next = ComplexPoly::z() * cur - prev;
    prev = std::move(cur);
    cur = std::move(next);
  }
  return ratmap_new(cur, {1.0});
}

RationalMap flexible_lattes(const LattesParams& p) {
  const Complex a = p.a, b = p.b;
  const Complex disc = 4.0 * a * a * a + 27.0 * b * b;
  const double scale = 4 * std::pow(std::abs(a), 3) + 27 * std::norm(b);
  if (!(scale > 0) || !(std::abs(disc) > 1e-10 * scale))
    throw Error(ErrorCode::SingularCurve, "curve y^2 = x^3 + ax + b is singular");
  return ratmap_new({a * a, -8.0 * b, -2.0 * a, 0.0, 1.0}, {4.0 * b, 4.0 * a, 0.0, 4.0});
}

std::pair<RationalMap, RationalMap> elementary_transform(const RationalMap& h1,
                                                         const RationalMap& h2) {
  if (h1.degree() * h2.degree() < 2)
    throw Error(ErrorCode::InvalidInput, "elementary transformation needs total degree >= 2");
  return {ratmap_compose(h1, h2), ratmap_compose(h2, h1)};
}

double semiconjugacy_residual(const RationalMap& f, const RationalMap& g, const RationalMap& h) {
  double r = 0;
  for (const auto& z : sample_points()) r = std::max(r, chordal_distance(f(h(z)), h(g(z))));
  return r;
}

namespace {

using Vec = Eigen::VectorXcd;

std::array<Complex, 2> homogeneous(const ProjPoint& p) {
  if (p.is_infinity()) return {1.0, 0.0};
  const Complex z = p.value();
  std::array<Complex, 2> v = std::abs(z) <= 1.0 ? std::array<Complex, 2>{z, 1.0}
                                                : std::array<Complex, 2>{1.0, 1.0 / z};
  const double n = std::hypot(std::abs(v[0]), std::abs(v[1]));
  return {v[0] / n, v[1] / n};
}

// Degree-k binary form sum c_j X^j Y^(k-j).
Complex form(const Complex* c, int k, Complex x, Complex y) {
  Complex s{}, yk = 1.0;
  std::vector<Complex> yp(k + 1);
  for (int j = 0; j <= k; ++j) {
    yp[j] = yk;
    yk *= y;
  }
  Complex xj = 1.0;
  for (int j = 0; j <= k; ++j) {
    s += c[j] * xj * yp[k - j];
    xj *= x;
  }
  return s;
}

// Resultant of the binary forms P, Q of formal degree k, for the unit
// coefficient vector v = (P, Q). Near zero when h is nearly constant.
double joint_resultant(const Vec& v, int k) {
  Eigen::MatrixXcd s = Eigen::MatrixXcd::Zero(2 * k, 2 * k);
  for (int r = 0; r < k; ++r)
    for (int j = 0; j <= k; ++j) {
      s(r, r + j) = v(k - j);
      s(k + r, r + j) = v(2 * k + 1 - j);
    }
  return std::abs(s.partialPivLu().determinant());
}

std::optional<RationalMap> to_map(Vec v, int k) {
  v.normalize();
  if (!(joint_resultant(v, k) > 1e-6)) return std::nullopt;
  std::vector<Complex> p(v.data(), v.data() + k + 1), q(v.data() + k + 1, v.data() + 2 * k + 2);
  try {
    RationalMap h = ratmap_new(ComplexPoly(p), ComplexPoly(q));
    if (h.degree() != k) return std::nullopt;
    return h;
  } catch (const Error&) {
    return std::nullopt;
  }
}

struct Node {
  ProjPoint x, y;
};

// Null vector of the rows y1 P(x) - y0 Q(x) = 0.
std::optional<Vec> interpolate(const std::vector<Node>& nodes, int k) {
  const int cols = 2 * k + 2;
  Eigen::MatrixXcd a(static_cast<Eigen::Index>(nodes.size()), cols);
  for (std::size_t i = 0; i < nodes.size(); ++i) {
    const auto [x0, x1] = homogeneous(nodes[i].x);
    const auto [y0, y1] = homogeneous(nodes[i].y);
    for (int j = 0; j <= k; ++j) {
      const Complex mono = std::pow(x0, j) * std::pow(x1, k - j);
      a(i, j) = y1 * mono;
      a(i, k + 1 + j) = -y0 * mono;
    }
  }
  Eigen::JacobiSVD<Eigen::MatrixXcd> svd(a, Eigen::ComputeFullV);
  const auto& sv = svd.singularValues();
  if (a.rows() >= cols && sv(cols - 1) > 1e-6 * sv(0)) return std::nullopt;
  return Vec(svd.matrixV().col(cols - 1));
}

// Homogeneous residual of f o h = h o g at the samples, each row scaled by
// the sizes of the two sides at the current coefficients.
class Residual {
 public:
  Residual(const RationalMap& f, const RationalMap& g, int k) : f_(f), k_(k) {
    for (const auto& z : sample_points()) {
      const auto [x, y] = homogeneous(z);
      const auto gz = g.lift(x, y);
      pts_.push_back({x, y});
      gpts_.push_back(gz);
    }
  }

  Vec operator()(const Vec& c, const std::vector<double>& w) const {
    Vec r(static_cast<Eigen::Index>(pts_.size()));
    for (std::size_t i = 0; i < pts_.size(); ++i) {
      const auto [a0, a1] = sides(c, i);
      r(i) = (a0[0] * a1[1] - a0[1] * a1[0]) * w[i];
    }
    return r;
  }

  std::vector<double> weights(const Vec& c) const {
    std::vector<double> w;
    for (std::size_t i = 0; i < pts_.size(); ++i) {
      const auto [a0, a1] = sides(c, i);
      const double n = std::hypot(std::abs(a0[0]), std::abs(a0[1])) *
                       std::hypot(std::abs(a1[0]), std::abs(a1[1]));
      w.push_back(n > 0 ? 1.0 / n : 1.0);
    }
    return w;
  }

 private:
  std::pair<std::array<Complex, 2>, std::array<Complex, 2>> sides(const Vec& c,
                                                                    std::size_t i) const {
    const Complex* p = c.data();
    const Complex* q = c.data() + k_ + 1;
    const auto [x, y] = pts_[i];
    const auto lhs = f_.lift(form(p, k_, x, y), form(q, k_, x, y));
    const auto [gx, gy] = gpts_[i];
    return {lhs, {form(p, k_, gx, gy), form(q, k_, gx, gy)}};
  }

  const RationalMap& f_;
  int k_;
  std::vector<std::array<Complex, 2>> pts_, gpts_;
};

// Levenberg-Marquardt on the coefficient vector with a forward-difference
// Jacobian; the residual is holomorphic in c once the weights are frozen.
Vec refine(const RationalMap& f, const RationalMap& g, int k, Vec c) {
  const Residual res(f, g, k);
  c.normalize();
  double mu = 1e-3;
  for (int it = 0; it < 40; ++it) {
    const auto w = res.weights(c);
    const Vec r = res(c, w);
    const double cost = r.squaredNorm();
    if (cost < 1e-30) break;
    Eigen::MatrixXcd jac(r.size(), c.size());
    for (Eigen::Index m = 0; m < c.size(); ++m) {
      Vec cp = c;
      const double h = 1e-7 * std::max(1.0, std::abs(c(m)));
      cp(m) += h;
      jac.col(m) = (res(cp, w) - r) / h;
    }
    const Eigen::MatrixXcd jtj = jac.adjoint() * jac;
    const Vec jtr = jac.adjoint() * r;
    bool improved = false;
    for (int tries = 0; tries < 8 && !improved; ++tries) {
      Eigen::MatrixXcd lhs = jtj;
      lhs.diagonal().array() += mu * (1 + jtj.diagonal().real().array());
      Vec next = c - lhs.ldlt().solve(jtr);
      next.normalize();
      if (res(next, res.weights(next)).squaredNorm() < cost) {
        c = next;
        mu = std::max(mu / 10, 1e-12);
        improved = true;
      } else {
        mu *= 10;
      }
    }
    if (!improved) break;
  }
  return c;
}

}  // namespace

std::optional<RationalMap> semiconjugacy_search(const RationalMap& f, const RationalMap& g,
                                                int deg_h, const SpectrumOptions& opts) {
  if (f.degree() != g.degree())
    throw Error(ErrorCode::ShapeMismatch, "semiconjugacy search needs maps of equal degree");
  if (deg_h < 1 || deg_h > 4) throw Error(ErrorCode::InvalidInput, "deg_h must lie in 1..4");
  const int needed = 2 * deg_h + 1;

  // Whole cycles of g until the interpolation problem is determined.
  std::vector<std::vector<ProjPoint>> cycles;
  std::vector<std::vector<ProjPoint>> targets;
  int nodes = 0;
  for (int p = 1; nodes < needed; ++p) {
    if (std::pow(static_cast<double>(g.degree()), p) + 1 > opts.root_degree_cap)
      throw Error(ErrorCode::DegreeCapExceeded, "not enough periodic nodes under the degree cap");
    const auto cs = periodic_cycles(g, p, opts);
    if (cs.empty()) continue;
    std::vector<ProjPoint> fix;
    for (const auto& q : fixed_points(f, p, opts).points) fix.push_back(q.point);
    for (const auto& c : cs) {
      if (nodes >= needed) break;
      cycles.push_back(c);
      targets.push_back(fix);
      nodes += static_cast<int>(c.size());
    }
  }

  std::vector<std::size_t> choice(cycles.size(), 0);
  std::optional<RationalMap> found;
  std::function<void(std::size_t)> descend = [&](std::size_t level) {
    if (found) return;
    if (level == cycles.size()) {
      std::vector<Node> nodes_list;
      for (std::size_t c = 0; c < cycles.size(); ++c) {
        ProjPoint y = targets[c][choice[c]];
        for (const auto& x : cycles[c]) {
          nodes_list.push_back({x, y});
          y = f(y);
        }
      }
      const auto v = interpolate(nodes_list, deg_h);
      if (!v) return;
      auto h = to_map(*v, deg_h);
      if (!h) return;
      double r = semiconjugacy_residual(f, g, *h);
      if (r >= kSemiconjugacyTolerance && r < 1e-3) {
        if (auto hr = to_map(refine(f, g, deg_h, *v), deg_h)) {
          const double rr = semiconjugacy_residual(f, g, *hr);
          if (rr < r) {
            h = hr;
            r = rr;
          }
        }
      }
      if (r < kSemiconjugacyTolerance) found = h;
      return;
    }
    for (std::size_t i = 0; i < targets[level].size() && !found; ++i) {
      choice[level] = i;
      descend(level + 1);
    }
  };
  descend(0);
  return found;
}

}  // namespace specrig
