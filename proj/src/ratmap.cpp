#include "specrig/ratmap.hpp"

#include <cmath>
#include <cstdio>
#include <limits>

#include "specrig/error.hpp"

namespace specrig {

double ProjPoint::modulus() const {
  return inf_ ? std::numeric_limits<double>::infinity() : std::abs(z_);
}

ChartPoint ChartPoint::from(const ProjPoint& p) {
  if (p.is_infinity()) return {0.0, true};
  const Complex z = p.value();
  if (std::abs(z) <= 1.0) return {z, false};
  return {1.0 / z, true};
}

ProjPoint ChartPoint::to_point() const {
  if (!inverted) return u;
  if (u == Complex{}) return ProjPoint::infinity();
  const Complex z = 1.0 / u;
  if (!std::isfinite(z.real()) || !std::isfinite(z.imag())) return ProjPoint::infinity();
  return z;
}

double chordal_distance(const ProjPoint& x, const ProjPoint& y) {
  const ChartPoint a = ChartPoint::from(x);
  const ChartPoint b = ChartPoint::from(y);
  const double na = std::sqrt(1.0 + std::norm(a.u));
  const double nb = std::sqrt(1.0 + std::norm(b.u));
  if (a.inverted == b.inverted) return std::abs(a.u - b.u) / (na * nb);
  return std::abs(1.0 - a.u * b.u) / (na * nb);
}

MobiusTransform::MobiusTransform(Complex a, Complex b, Complex c, Complex d) : m_{a, b, c, d} {
  double fro = 0;
  for (const auto& e : m_) fro += std::norm(e);
  fro = std::sqrt(fro);
  if (!(fro > 0) || !std::isfinite(fro))
    throw Error(ErrorCode::DegenerateMap, "Mobius matrix is zero or non-finite");
  for (auto& e : m_) e /= fro;
  if (std::abs(m_[0] * m_[3] - m_[1] * m_[2]) <= 1e-12)
    throw Error(ErrorCode::DegenerateMap, "Mobius determinant vanishes");
}

namespace {

// Matrix of the transform sending (z1, z2, z3) to (0, infinity, 1).
std::array<Complex, 4> to_standard(const std::array<ProjPoint, 3>& z) {
  const bool i1 = z[0].is_infinity(), i2 = z[1].is_infinity(), i3 = z[2].is_infinity();
  const Complex z1 = z[0].value(), z2 = z[1].value(), z3 = z[2].value();
  if (i1) return {0.0, z3 - z2, 1.0, -z2};
  if (i2) return {1.0, -z1, 0.0, z3 - z1};
  if (i3) return {1.0, -z1, 1.0, -z2};
  return {z3 - z2, -z1 * (z3 - z2), z3 - z1, -z2 * (z3 - z1)};
}

}  // namespace

MobiusTransform MobiusTransform::from_triples(const std::array<ProjPoint, 3>& from,
                                              const std::array<ProjPoint, 3>& to) {
  const auto s = to_standard(from);
  const auto t = to_standard(to);
  const MobiusTransform ms(s[0], s[1], s[2], s[3]);
  const MobiusTransform mt(t[0], t[1], t[2], t[3]);
  return mt.inverse().compose(ms);
}

ProjPoint MobiusTransform::operator()(const ProjPoint& x) const {
  const auto [a, b, c, d] = m_;
  Complex num, den;
  if (x.is_infinity()) {
    num = a;
    den = c;
  } else if (std::abs(x.value()) <= 1.0) {
    num = a * x.value() + b;
    den = c * x.value() + d;
  } else {
    const Complex u = 1.0 / x.value();
    num = a + b * u;
    den = c + d * u;
  }
  if (den == Complex{}) return ProjPoint::infinity();
  const Complex z = num / den;
  if (!std::isfinite(z.real()) || !std::isfinite(z.imag())) return ProjPoint::infinity();
  return z;
}

MobiusTransform MobiusTransform::inverse() const {
  return {m_[3], -m_[1], -m_[2], m_[0]};
}

MobiusTransform MobiusTransform::compose(const MobiusTransform& o) const {
  const auto& x = m_;
  const auto& y = o.m_;
  return {x[0] * y[0] + x[1] * y[2], x[0] * y[1] + x[1] * y[3], x[2] * y[0] + x[3] * y[2],
          x[2] * y[1] + x[3] * y[3]};
}

RationalMap::RationalMap(ComplexPoly num, ComplexPoly den, int degree)
    : num_(std::move(num)), den_(std::move(den)), degree_(degree) {
  const Complex lead = den_.degree() >= 1 ? den_.leading() : num_.leading();
  num_ *= 1.0 / lead;
  den_ *= 1.0 / lead;
  rnum_ = num_.reversed(degree_);
  rden_ = den_.reversed(degree_);
}

RationalMap RationalMap::make(ComplexPoly num, ComplexPoly den) {
  if (num.is_zero() && den.is_zero())
    throw Error(ErrorCode::InvalidInput, "numerator and denominator both zero");
  if (!num.all_finite() || !den.all_finite())
    throw Error(ErrorCode::NonFinite, "non-finite coefficient in rational map");
  const int d = std::max(num.degree(), den.degree());
  if (d < 1) throw Error(ErrorCode::DegenerateMap, "constant map has degree 0");
  const double res = scaled_resultant(num, den);
  if (!(res > kDegenerateResultant)) {
    char buf[96];
    std::snprintf(buf, sizeof buf, "numerator and denominator share a root (scaled resultant %.3g)",
                  res);
    throw Error(ErrorCode::DegenerateMap, buf);
  }
  return RationalMap(std::move(num), std::move(den), d);
}

RationalMap RationalMap::make_trusted(ComplexPoly num, ComplexPoly den, int degree) {
  if (num.is_zero() || den.is_zero() || std::max(num.degree(), den.degree()) != degree)
    throw Error(ErrorCode::DegenerateMap, "degree dropped during composition");
  if (!num.all_finite() || !den.all_finite())
    throw Error(ErrorCode::NonFinite, "rational map coefficients overflowed");
  return RationalMap(std::move(num), std::move(den), degree);
}

RationalMap ratmap_new(ComplexPoly num, ComplexPoly den) {
  return RationalMap::make(std::move(num), std::move(den));
}

LocalImage RationalMap::local(const ChartPoint& x, std::optional<bool> image_inverted) const {
  const ComplexPoly& pa = x.inverted ? rnum_ : num_;
  const ComplexPoly& pb = x.inverted ? rden_ : den_;
  const auto [a, da] = pa.eval_with_derivative(x.u);
  const auto [b, db] = pb.eval_with_derivative(x.u);
  const bool inv = image_inverted.value_or(std::abs(a) > std::abs(b));
  LocalImage out;
  if (!inv) {
    out.image = {a / b, false};
    out.derivative = (da * b - a * db) / (b * b);
  } else {
    out.image = {b / a, true};
    out.derivative = (db * a - b * da) / (a * a);
  }
  return out;
}

ProjPoint RationalMap::operator()(const ProjPoint& x) const {
  return local(ChartPoint::from(x)).image.to_point();
}

double RationalMap::spherical_derivative(const ProjPoint& x) const {
  const ChartPoint c = ChartPoint::from(x);
  const LocalImage li = local(c);
  return std::abs(li.derivative) * (1.0 + std::norm(c.u)) / (1.0 + std::norm(li.image.u));
}

std::array<Complex, 2> RationalMap::lift(Complex x, Complex y) const {
  Complex p{}, q{};
  Complex xk = 1.0;
  std::vector<Complex> yp(static_cast<std::size_t>(degree_) + 1);
  yp[0] = 1.0;
  for (int k = 1; k <= degree_; ++k) yp[k] = yp[k - 1] * y;
  for (int k = 0; k <= degree_; ++k) {
    p += num_.coeff(k) * xk * yp[degree_ - k];
    q += den_.coeff(k) * xk * yp[degree_ - k];
    xk *= x;
  }
  return {p, q};
}

namespace {

// Coefficients together with a bound on the magnitude of the terms summed
// into each one.
struct Tracked {
  std::vector<Complex> c;
  std::vector<double> m;
};

Tracked tracked(const ComplexPoly& p) {
  Tracked t;
  t.c.assign(p.coeffs().begin(), p.coeffs().end());
  for (const auto& x : t.c) t.m.push_back(std::abs(x));
  return t;
}

Tracked multiply(const Tracked& a, const Tracked& b) {
  Tracked r;
  if (a.c.empty() || b.c.empty()) return r;
  r.c.assign(a.c.size() + b.c.size() - 1, Complex{});
  r.m.assign(r.c.size(), 0.0);
  for (std::size_t i = 0; i < a.c.size(); ++i)
    for (std::size_t j = 0; j < b.c.size(); ++j) {
      r.c[i + j] += a.c[i] * b.c[j];
      r.m[i + j] += a.m[i] * b.m[j];
    }
  return r;
}

void add_scaled(Tracked& acc, const Tracked& t, Complex s) {
  if (t.c.size() > acc.c.size()) {
    acc.c.resize(t.c.size());
    acc.m.resize(t.c.size());
  }
  const double as = std::abs(s);
  for (std::size_t k = 0; k < t.c.size(); ++k) {
    acc.c[k] += s * t.c[k];
    acc.m[k] += as * t.m[k];
  }
}

}  // namespace

RationalMap ratmap_compose(const RationalMap& outer, const RationalMap& inner, bool validate) {
  const int d = outer.degree();
  const Tracked a = tracked(inner.num());
  const Tracked b = tracked(inner.den());
  std::vector<Tracked> apow(d + 1), bpow(d + 1);
  apow[0] = bpow[0] = Tracked{{1.0}, {1.0}};
  for (int k = 1; k <= d; ++k) {
    apow[k] = multiply(apow[k - 1], a);
    bpow[k] = multiply(bpow[k - 1], b);
  }
  Tracked num, den;
  for (int k = 0; k <= d; ++k) {
    const Complex p = outer.num().coeff(k), q = outer.den().coeff(k);
    if (p == Complex{} && q == Complex{}) continue;
    const Tracked term = multiply(apow[k], bpow[d - k]);
    if (p != Complex{}) add_scaled(num, term, p);
    if (q != Complex{}) add_scaled(den, term, q);
  }
  ComplexPoly pn = ComplexPoly::from_computed(std::move(num.c), num.m);
  ComplexPoly pd = ComplexPoly::from_computed(std::move(den.c), den.m);
  if (validate) return RationalMap::make(std::move(pn), std::move(pd));
  return RationalMap::make_trusted(std::move(pn), std::move(pd), d * inner.degree());
}

RationalMap ratmap_iterate(const RationalMap& f, int n, int degree_cap) {
  if (n < 1) throw Error(ErrorCode::InvalidInput, "iterate needs n >= 1");
  long long deg = 1;
  for (int i = 0; i < n; ++i) {
    deg *= f.degree();
    if (deg > degree_cap)
      throw Error(ErrorCode::DegreeCapExceeded,
                  "formal degree of f^" + std::to_string(n) + " exceeds cap " +
                      std::to_string(degree_cap));
  }
  RationalMap g = f;
  for (int i = 1; i < n; ++i) g = ratmap_compose(f, g, false);
  return g;
}

RationalMap ratmap_conjugate(const RationalMap& f, const MobiusTransform& phi) {
  auto as_map = [](const MobiusTransform& m) {
    return RationalMap::make(ComplexPoly({m.b(), m.a()}), ComplexPoly({m.d(), m.c()}));
  };
  const RationalMap inner = ratmap_compose(f, as_map(phi.inverse()), false);
  return ratmap_compose(as_map(phi), inner, true);
}

std::vector<CriticalPoint> critical_points(const RationalMap& f, const RootOptions& opts) {
  const int d = f.degree();
  if (d < 2) throw Error(ErrorCode::InvalidInput, "critical points need degree >= 2");
  const ComplexPoly w = f.num().derivative() * f.den() - f.num() * f.den().derivative();
  std::vector<CriticalPoint> out;
  int finite = 0;
  if (!w.is_zero() && w.degree() >= 1) {
    for (const auto& c : poly_roots(w, opts)) {
      out.push_back({c.value, c.multiplicity});
      finite += c.multiplicity;
    }
  }
  if (finite < 2 * d - 2) out.push_back({ProjPoint::infinity(), 2 * d - 2 - finite});
  return out;
}

std::vector<ProjPoint> orbit(const RationalMap& f, const ProjPoint& x, int n) {
  std::vector<ProjPoint> out;
  out.reserve(static_cast<std::size_t>(n) + 1);
  out.push_back(x);
  for (int k = 0; k < n; ++k) out.push_back(f(out.back()));
  return out;
}

}  // namespace specrig
