#include "specrig/io.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <limits>
#include <ostream>
#include <set>
#include <sstream>

namespace specrig {

namespace {

[[noreturn]] void invalid(const std::string& what) { throw Error(ErrorCode::InvalidInput, what); }

const Json& field(const Json& j, const char* key) {
  if (!j.is_object()) invalid(std::string("expected an object with key '") + key + "'");
  const auto it = j.find(key);
  if (it == j.end()) invalid(std::string("missing key '") + key + "'");
  return *it;
}

int int_from_json(const Json& j, const char* what) {
  if (!j.is_number_integer()) invalid(std::string(what) + " must be an integer");
  return j.get<int>();
}

void check_keys(const Json& j, std::initializer_list<const char*> allowed, const char* what) {
  for (const auto& [k, v] : j.items()) {
    if (std::none_of(allowed.begin(), allowed.end(), [&](const char* a) { return k == a; }))
      invalid(std::string("unknown key '") + k + "' in " + what);
  }
}

// Shortest decimal that reads back to the same double.
std::string fmt(double x) {
  if (std::isnan(x)) return "nan";
  if (std::isinf(x)) return x > 0 ? "inf" : "-inf";
  char buf[32];
  for (int prec = 15; prec <= 17; ++prec) {
    std::snprintf(buf, sizeof buf, "%.*g", prec, x);
    if (std::strtod(buf, nullptr) == x) break;
  }
  return buf;
}

}  // namespace

Json real_to_json(double x) {
  if (std::isfinite(x)) return x;
  if (std::isnan(x)) return "nan";
  return x > 0 ? "inf" : "-inf";
}

double real_from_json(const Json& j) {
  if (j.is_number()) return j.get<double>();
  if (j.is_string()) {
    const auto& s = j.get_ref<const std::string&>();
    if (s == "inf") return std::numeric_limits<double>::infinity();
    if (s == "-inf") return -std::numeric_limits<double>::infinity();
    if (s == "nan") return std::numeric_limits<double>::quiet_NaN();
  }
  invalid("expected a number, got " + j.dump());
}

Json complex_to_json(Complex z) { return Json::array({real_to_json(z.real()), real_to_json(z.imag())}); }

Complex complex_from_json(const Json& j) {
  if (j.is_number()) return j.get<double>();
  if (!j.is_array() || j.size() != 2) invalid("expected [re, im], got " + j.dump());
  return {real_from_json(j[0]), real_from_json(j[1])};
}

Json point_to_json(const ProjPoint& p) {
  return p.is_infinity() ? Json(nullptr) : complex_to_json(p.value());
}

ProjPoint point_from_json(const Json& j) {
  if (j.is_null()) return ProjPoint::infinity();
  return complex_from_json(j);
}

Json complex_list(std::span<const Complex> zs) {
  Json a = Json::array();
  for (const Complex& z : zs) a.push_back(complex_to_json(z));
  return a;
}

std::vector<Complex> complex_list_from_json(const Json& j) {
  if (!j.is_array()) invalid("expected a list of [re, im] pairs");
  std::vector<Complex> out;
  out.reserve(j.size());
  for (const auto& e : j) out.push_back(complex_from_json(e));
  return out;
}

Json to_json(const ComplexPoly& p) { return {{"coeffs", complex_list(p.coeffs())}}; }

ComplexPoly poly_from_json(const Json& j) {
  auto c = complex_list_from_json(field(j, "coeffs"));
  for (const Complex& z : c)
    if (!std::isfinite(z.real()) || !std::isfinite(z.imag()))
      throw Error(ErrorCode::NonFinite, "polynomial coefficient is not finite");
  return ComplexPoly(std::move(c));
}

Json to_json(const RationalMap& f) {
  return {{"degree", f.degree()}, {"num", to_json(f.num())}, {"den", to_json(f.den())}};
}

RationalMap map_from_json(const Json& j) {
  RationalMap f = ratmap_new(poly_from_json(field(j, "num")), poly_from_json(field(j, "den")));
  if (j.contains("degree") && int_from_json(j["degree"], "degree") != f.degree())
    invalid("map declares degree " + j["degree"].dump() + " but has degree " +
            std::to_string(f.degree()));
  return f;
}

Json to_json(const MobiusTransform& m) {
  return {{"m", Json::array({Json::array({complex_to_json(m.a()), complex_to_json(m.b())}),
                             Json::array({complex_to_json(m.c()), complex_to_json(m.d())})})}};
}

MobiusTransform mobius_from_json(const Json& j) {
  const Json& m = field(j, "m");
  if (!m.is_array() || m.size() != 2 || !m[0].is_array() || m[0].size() != 2 ||
      !m[1].is_array() || m[1].size() != 2)
    invalid("mobius \"m\" must be a 2x2 matrix of [re, im] pairs");
  return {complex_from_json(m[0][0]), complex_from_json(m[0][1]), complex_from_json(m[1][0]),
          complex_from_json(m[1][1])};
}

Json to_json(const SpectrumTable& t) {
  Json periods = Json::array();
  for (const auto& p : t.periods)
    periods.push_back({{"n", p.n},
                       {"multipliers", complex_list(p.multipliers)},
                       {"sigma", complex_list(p.sigma)},
                       {"scale", real_to_json(p.scale)}});
  return {{"degree", t.degree}, {"n_max", t.n_max}, {"periods", periods}};
}

SpectrumTable spectrum_from_json(const Json& j) {
  SpectrumTable t;
  t.degree = int_from_json(field(j, "degree"), "degree");
  t.n_max = int_from_json(field(j, "n_max"), "n_max");
  const Json& ps = field(j, "periods");
  if (!ps.is_array()) invalid("\"periods\" must be a list");
  for (const auto& e : ps) {
    PeriodSpectrum p;
    p.n = int_from_json(field(e, "n"), "n");
    p.multipliers = complex_list_from_json(field(e, "multipliers"));
    p.sigma = complex_list_from_json(field(e, "sigma"));
    p.scale = real_from_json(field(e, "scale"));
    if (p.sigma.size() != p.multipliers.size())
      throw Error(ErrorCode::ShapeMismatch, "sigma and multipliers differ in length");
    t.periods.push_back(std::move(p));
  }
  if (static_cast<int>(t.periods.size()) != t.n_max)
    throw Error(ErrorCode::ShapeMismatch, "table lists " + std::to_string(t.periods.size()) +
                                              " periods but n_max is " + std::to_string(t.n_max));
  return t;
}

void write_lengths_csv(std::ostream& os, const SpectrumTable& t) {
  for (const auto& p : t.periods) {
    os << p.n;
    for (const Complex& m : p.multipliers) os << ',' << fmt(std::abs(m));
    os << '\n';
  }
}

Json to_json(const ConjugacyWitness& w) {
  return {{"mobius", to_json(w.mobius)}, {"residual", real_to_json(w.residual)}};
}

ConjugacyWitness witness_from_json(const Json& j) {
  return {mobius_from_json(field(j, "mobius")), real_from_json(field(j, "residual"))};
}

Json to_json(const FamilySpec& F) {
  auto polys = [](const std::vector<ComplexPoly>& ps) {
    Json a = Json::array();
    for (const auto& p : ps) a.push_back(to_json(p));
    return a;
  };
  Json marked = Json::object();
  for (const auto& [name, m] : F.marked) marked[name] = {{"num", to_json(m.num)}, {"den", to_json(m.den)}};
  return {{"degree", F.degree},
          {"num_coeffs", polys(F.num_coeffs)},
          {"den_coeffs", polys(F.den_coeffs)},
          {"marked", marked}};
}

FamilySpec family_from_json(const Json& j) {
  FamilySpec F;
  F.degree = int_from_json(field(j, "degree"), "degree");
  if (F.degree < 1) invalid("family degree must be >= 1");
  auto polys = [&](const char* key) {
    const Json& a = field(j, key);
    if (!a.is_array() || a.empty() || a.size() > static_cast<std::size_t>(F.degree) + 1)
      invalid(std::string("\"") + key + "\" must list 1 to degree + 1 polynomials");
    std::vector<ComplexPoly> out;
    for (const auto& p : a) out.push_back(poly_from_json(p));
    return out;
  };
  F.num_coeffs = polys("num_coeffs");
  F.den_coeffs = polys("den_coeffs");
  if (j.contains("marked")) {
    const Json& m = j["marked"];
    if (!m.is_object()) invalid("\"marked\" must be an object");
    for (const auto& [name, v] : m.items()) {
      MarkedPoint p{poly_from_json(field(v, "num"))};
      if (v.contains("den")) p.den = poly_from_json(v["den"]);
      if (p.den.is_zero() && p.num.is_zero()) invalid("marked point '" + name + "' is 0/0");
      F.marked.emplace(name, std::move(p));
    }
  }
  return F;
}

Json to_json(const GridWindow& w) {
  return {{"re_min", w.re_min}, {"re_max", w.re_max}, {"im_min", w.im_min},
          {"im_max", w.im_max}, {"nx", w.nx},         {"ny", w.ny}};
}

GridWindow window_from_json(const Json& j) {
  GridWindow w;
  w.re_min = real_from_json(field(j, "re_min"));
  w.re_max = real_from_json(field(j, "re_max"));
  w.im_min = real_from_json(field(j, "im_min"));
  w.im_max = real_from_json(field(j, "im_max"));
  w.nx = int_from_json(field(j, "nx"), "nx");
  w.ny = int_from_json(field(j, "ny"), "ny");
  return w;
}

Json grid_header(const GridMeasure& g) {
  return {{"window", to_json(g.window)},
          {"resolution", Json::array({g.window.nx, g.window.ny})},
          {"total_mass", real_to_json(g.total_mass)},
          {"clamped_fraction", real_to_json(g.clamped_fraction)},
          {"masked_cells", g.masked_cells}};
}

void write_grid_pgm(std::ostream& os, const GridMeasure& g) {
  const GridWindow& w = g.window;
  double top = 0;
  for (double m : g.masses)
    if (std::isfinite(m)) top = std::max(top, m);
  os << "P5\n" << w.nx << ' ' << w.ny << "\n65535\n";
  std::string row(static_cast<std::size_t>(w.nx) * 2, '\0');
  for (int j = w.ny - 1; j >= 0; --j) {
    for (int i = 0; i < w.nx; ++i) {
      const double m = g.masses[w.index(i, j)];
      unsigned v = 0;
      if (top > 0 && std::isfinite(m)) v = static_cast<unsigned>(std::lround(m / top * 65535.0));
      row[2 * i] = static_cast<char>(v >> 8);
      row[2 * i + 1] = static_cast<char>(v & 0xff);
    }
    os.write(row.data(), static_cast<std::streamsize>(row.size()));
  }
}

void write_grid_csv(std::ostream& os, const GridMeasure& g) {
  const GridWindow& w = g.window;
  os << "x,y,mass\n";
  for (int j = 0; j < w.ny; ++j)
    for (int i = 0; i < w.nx; ++i) {
      const Complex c = w.center(i, j);
      os << fmt(c.real()) << ',' << fmt(c.imag()) << ',' << fmt(g.masses[w.index(i, j)]) << '\n';
    }
}

void write_parameters_csv(std::ostream& os, std::span<const Complex> points, PcfKind kind,
                          int period) {
  const char* k = kind == PcfKind::Center ? "center" : "misiurewicz";
  os << "re,im,kind,period\n";
  for (const Complex& z : points) os << fmt(z.real()) << ',' << fmt(z.imag()) << ',' << k << ',' << period << '\n';
}

void RunConfig::validate() const {
  if (precision_bits != 0 && (precision_bits < 64 || precision_bits > 4096))
    invalid("precision bits must lie in [64, 4096], got " + std::to_string(precision_bits));
  const std::pair<const char*, double> tols[] = {{"root_residual", tolerances.root_residual},
                                                 {"cluster_radius", tolerances.cluster_radius},
                                                 {"spectrum_compare", tolerances.spectrum_compare},
                                                 {"orbit", tolerances.orbit}};
  for (const auto& [name, v] : tols)
    if (!(v > 0) || !std::isfinite(v)) invalid(std::string("tolerance ") + name + " must be > 0");
  if (degree_cap < 1) invalid("degree cap must be >= 1");
  if (threads < 0) invalid("threads must be >= 0 (0 = auto)");
}

RootOptions RunConfig::root_options() const {
  RootOptions r;
  r.seed = seed;
  r.precision_bits = precision_bits;
  r.cluster_radius = tolerances.cluster_radius;
  r.acceptance = tolerances.root_residual;
  return r;
}

SpectrumOptions RunConfig::spectrum_options() const {
  SpectrumOptions s;
  s.roots = root_options();
  s.degree_cap = degree_cap;
  return s;
}

OutputFormat parse_format(const std::string& s) {
  if (s == "json") return OutputFormat::Json;
  if (s == "csv") return OutputFormat::Csv;
  if (s == "pgm") return OutputFormat::Pgm;
  invalid("unknown output format '" + s + "' (json, csv, pgm)");
}

std::string_view to_string(OutputFormat f) {
  switch (f) {
    case OutputFormat::Json: return "json";
    case OutputFormat::Csv: return "csv";
    case OutputFormat::Pgm: return "pgm";
  }
  return "json";
}

Json to_json(const RunConfig& c) {
  Json j = {{"precision", c.precision_bits == 0 ? Json("double") : Json{{"bits", c.precision_bits}}},
            {"tolerances",
             {{"root_residual", c.tolerances.root_residual},
              {"cluster_radius", c.tolerances.cluster_radius},
              {"spectrum_compare", c.tolerances.spectrum_compare},
              {"orbit", c.tolerances.orbit}}},
            {"degree_cap", c.degree_cap},
            {"seed", c.seed},
            {"threads", c.threads == 0 ? Json("auto") : Json(c.threads)}};
  if (c.format) j["format"] = std::string(to_string(*c.format));
  return j;
}

RunConfig config_from_json(const Json& j, RunConfig c) {
  if (!j.is_object()) invalid("config must be a JSON object");
  check_keys(j, {"precision", "tolerances", "degree_cap", "seed", "format", "threads"}, "config");
  if (j.contains("precision")) {
    const Json& p = j["precision"];
    if (p == "double") {
      c.precision_bits = 0;
    } else if (p.is_object()) {
      check_keys(p, {"bits"}, "precision");
      c.precision_bits = int_from_json(field(p, "bits"), "precision bits");
    } else {
      invalid("precision must be \"double\" or {\"bits\": n}");
    }
  }
  if (j.contains("tolerances")) {
    const Json& t = j["tolerances"];
    if (!t.is_object()) invalid("tolerances must be an object");
    check_keys(t, {"root_residual", "cluster_radius", "spectrum_compare", "orbit"}, "tolerances");
    if (t.contains("root_residual")) c.tolerances.root_residual = real_from_json(t["root_residual"]);
    if (t.contains("cluster_radius")) c.tolerances.cluster_radius = real_from_json(t["cluster_radius"]);
    if (t.contains("spectrum_compare"))
      c.tolerances.spectrum_compare = real_from_json(t["spectrum_compare"]);
    if (t.contains("orbit")) c.tolerances.orbit = real_from_json(t["orbit"]);
  }
  if (j.contains("degree_cap")) c.degree_cap = int_from_json(j["degree_cap"], "degree_cap");
  if (j.contains("seed")) {
    if (!j["seed"].is_number_integer() || j["seed"].get<std::int64_t>() < 0)
      invalid("seed must be a non-negative integer");
    c.seed = j["seed"].get<std::uint64_t>();
  }
  if (j.contains("format")) {
    if (!j["format"].is_string()) invalid("format must be a string");
    c.format = parse_format(j["format"].get<std::string>());
  }
  if (j.contains("threads")) {
    const Json& t = j["threads"];
    c.threads = t == "auto" ? 0 : int_from_json(t, "threads");
  }
  return c;
}

Json parse_json(const std::string& text) {
  try {
    return Json::parse(text);
  } catch (const Json::exception& e) {
    invalid(std::string("malformed JSON: ") + e.what());
  }
}

Json read_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) invalid("cannot open '" + path + "'");
  std::stringstream ss;
  ss << in.rdbuf();
  try {
    return Json::parse(ss.str());
  } catch (const Json::exception& e) {
    invalid("malformed JSON in '" + path + "': " + e.what());
  }
}

}  // namespace specrig
