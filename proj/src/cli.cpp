#include "specrig/cli.hpp"

#include <CLI11.hpp>

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <functional>
#include <optional>
#include <ostream>
#include <sstream>

#include "specrig/famdyn.hpp"
#include "specrig/io.hpp"
#include "specrig/moduli.hpp"
#include "specrig/spectrum.hpp"

namespace specrig::cli {

namespace {

[[noreturn]] void invalid(const std::string& what) { throw Error(ErrorCode::InvalidInput, what); }

std::vector<double> parse_reals(const std::string& s, const char* what) {
  std::vector<double> out;
  std::stringstream ss(s);
  std::string item;
  while (std::getline(ss, item, ',')) {
    char* end = nullptr;
    const double x = std::strtod(item.c_str(), &end);
    if (item.empty() || end != item.c_str() + item.size())
      invalid(std::string("cannot parse ") + what + " '" + s + "'");
    out.push_back(x);
  }
  return out;
}

// "re" or "re,im".
Complex parse_complex(const std::string& s, const char* what) {
  const auto v = parse_reals(s, what);
  if (v.size() == 1) return v[0];
  if (v.size() == 2) return {v[0], v[1]};
  invalid(std::string(what) + " must be 're' or 're,im', got '" + s + "'");
}

ProjPoint parse_point(const std::string& s, const char* what) {
  if (s == "inf") return ProjPoint::infinity();
  return parse_complex(s, what);
}

GridWindow parse_window(const std::string& s, int res) {
  const auto v = parse_reals(s, "window");
  if (v.size() != 4) invalid("window must be 're_min,re_max,im_min,im_max'");
  return {v[0], v[1], v[2], v[3], res, res};
}

std::vector<int> parse_ints(const std::string& s, const char* what) {
  std::vector<int> out;
  for (double x : parse_reals(s, what)) {
    if (x != std::floor(x)) invalid(std::string(what) + " must be integers");
    out.push_back(static_cast<int>(x));
  }
  return out;
}

PcfKind parse_kind(const std::string& s) {
  if (s == "center") return PcfKind::Center;
  if (s == "misiurewicz") return PcfKind::Misiurewicz;
  invalid("kind must be 'center' or 'misiurewicz', got '" + s + "'");
}

RationalMap load_map(const std::string& path) { return map_from_json(read_json_file(path)); }

const char* status_name(OrbitStatus s) {
  switch (s) {
    case OrbitStatus::Periodic: return "periodic";
    case OrbitStatus::Escaping: return "escaping";
    case OrbitStatus::Undecided: return "undecided";
  }
  return "undecided";
}

Json classification_json(const OrbitClassification& c) {
  return {{"status", status_name(c.status)}, {"preperiod", c.preperiod}, {"period", c.period}};
}

struct Output {
  std::optional<Json> json;
  std::optional<std::string> csv;
  std::optional<GridMeasure> grid;
  OutputFormat natural = OutputFormat::Json;
};

Output json_output(Json j) {
  Output o;
  o.json = std::move(j);
  return o;
}

void write_file(const std::filesystem::path& p, const std::function<void(std::ostream&)>& body) {
  std::ofstream f(p, std::ios::binary);
  if (!f) invalid("cannot write '" + p.string() + "'");
  body(f);
  if (!f) invalid("write to '" + p.string() + "' failed");
}

void emit(const Output& o, const RunConfig& cfg, const std::string& out_dir, std::ostream& out) {
  if (!out_dir.empty()) {
    const std::filesystem::path dir(out_dir);
    std::error_code ec;
    std::filesystem::create_directories(dir, ec);
    if (ec) invalid("cannot create '" + out_dir + "': " + ec.message());
    if (o.json) write_file(dir / "result.json", [&](std::ostream& f) { f << o.json->dump() << '\n'; });
    if (o.grid) write_file(dir / "grid.pgm", [&](std::ostream& f) { write_grid_pgm(f, *o.grid); });
    if (o.csv) write_file(dir / "points.csv", [&](std::ostream& f) { f << *o.csv; });
    return;
  }
  const OutputFormat fmt = cfg.format.value_or(o.natural);
  if (fmt == OutputFormat::Json && o.json) {
    out << o.json->dump() << '\n';
  } else if (fmt == OutputFormat::Csv && o.csv) {
    out << *o.csv;
  } else if (fmt == OutputFormat::Pgm && o.grid) {
    write_grid_pgm(out, *o.grid);
  } else {
    invalid("this subcommand has no " + std::string(to_string(fmt)) + " output");
  }
}

// Every value a subcommand reads, with its default.
struct Args {
  std::string config, out_dir, format, threads;
  std::optional<int> precision_bits, degree_cap;
  std::optional<std::uint64_t> seed;
  std::optional<double> root_tol, cluster_radius, spectrum_tol, orbit_tol;

  std::string map, a_file, b_file, f_file, g_file, h1_file, h2_file, family;
  int n = 1;
  int k = 2;
  int d = 2;
  int period = 1;
  int preperiod = 0;
  std::string kind = "center";
  std::vector<std::string> marked;
  std::string t = "0";
  std::string t0 = "-2";
  int n_iter = 200;
  std::string window = "-2.5,1,-1.75,1.75";
  int res = 256;
  int coarse = 8;
  std::string periods = "6,8,10";
  double radius = 1.0;
  int samples = 33;
  std::string lattes_a = "1", lattes_b = "1";
  std::string c = "0", pa = "0", pb = "0";
  int ce_N = 2;
  int n_max = 20;
  int sep_n = 1000;
  double delta = 0.1;
  int bound = 50;
  int max_iters = 500;
};

RunConfig resolve_config(const Args& a) {
  RunConfig cfg;
  if (!a.config.empty()) cfg = config_from_json(read_json_file(a.config), cfg);
  if (a.precision_bits) cfg.precision_bits = *a.precision_bits;
  if (a.degree_cap) cfg.degree_cap = *a.degree_cap;
  if (a.seed) cfg.seed = *a.seed;
  if (a.root_tol) cfg.tolerances.root_residual = *a.root_tol;
  if (a.cluster_radius) cfg.tolerances.cluster_radius = *a.cluster_radius;
  if (a.spectrum_tol) cfg.tolerances.spectrum_compare = *a.spectrum_tol;
  if (a.orbit_tol) cfg.tolerances.orbit = *a.orbit_tol;
  if (!a.format.empty()) cfg.format = parse_format(a.format);
  if (!a.threads.empty()) {
    if (a.threads == "auto") {
      cfg.threads = 0;
    } else {
      const auto v = parse_ints(a.threads, "threads");
      if (v.size() != 1 || v[0] < 1) invalid("threads must be a positive integer or 'auto'");
      cfg.threads = v[0];
    }
  }
  cfg.validate();
  return cfg;
}

FamilySpec load_family(const Args& a) {
  if (!a.family.empty()) return family_from_json(read_json_file(a.family));
  return unicritical_family(a.d);
}

std::vector<std::string> marked_names(const Args& a) {
  return a.marked.empty() ? std::vector<std::string>{"critical"} : a.marked;
}

SpectrumTable load_or_compute_table(const std::string& path, int n, const RunConfig& cfg) {
  const Json j = read_json_file(path);
  if (j.is_object() && j.contains("periods")) return spectrum_from_json(j);
  return tau(map_from_json(j), n, cfg.spectrum_options());
}

using Action = std::function<Output(const RunConfig&)>;

struct Command {
  CLI::App* app;
  Action action;
};

void add_map_option(CLI::App* s, Args& a) {
  s->add_option("--map", a.map, "rational map JSON file")->required();
}

void add_family_options(CLI::App* s, Args& a) {
  s->add_option("--family", a.family, "family JSON file (default: z^d + t)");
  s->add_option("--d", a.d, "degree of the unicritical family z^d + t");
}

std::vector<Command> build(CLI::App& app, Args& a) {
  std::vector<Command> cmds;
  auto sub = [&](CLI::App* parent, const char* name, const char* desc, Action act) {
    CLI::App* s = parent->add_subcommand(name, desc);
    cmds.push_back({s, std::move(act)});
    return s;
  };

  auto* s = sub(&app, "spectrum", "multiplier spectra S_1..S_n with scaled coordinates",
                [&](const RunConfig& cfg) {
                  return json_output(to_json(tau(load_map(a.map), a.n, cfg.spectrum_options())));
                });
  add_map_option(s, a);
  s->add_option("--n", a.n, "largest period")->check(CLI::PositiveNumber);

  s = sub(&app, "lengths", "length spectra L_1..L_n", [&](const RunConfig& cfg) {
    const SpectrumTable t = tau(load_map(a.map), a.n, cfg.spectrum_options());
    Json periods = Json::array();
    for (const auto& p : t.periods) {
      Json ls = Json::array();
      for (const Complex& m : p.multipliers) ls.push_back(real_to_json(std::abs(m)));
      periods.push_back({{"n", p.n}, {"lengths", ls}});
    }
    Output o = json_output({{"degree", t.degree}, {"n_max", t.n_max}, {"periods", periods}});
    std::ostringstream csv;
    write_lengths_csv(csv, t);
    o.csv = csv.str();
    return o;
  });
  add_map_option(s, a);
  s->add_option("--n", a.n, "largest period")->check(CLI::PositiveNumber);

  s = sub(&app, "compare", "compare the spectra of two maps or two spectrum tables",
          [&](const RunConfig& cfg) {
            const SpectrumTable ta = load_or_compute_table(a.a_file, a.n, cfg);
            const SpectrumTable tb = load_or_compute_table(a.b_file, a.n, cfg);
            const SpectrumComparison c = compare_spectra(ta, tb, cfg.tolerances.spectrum_compare);
            return json_output({{"equal", c.equal}, {"distance", real_to_json(c.distance)}});
          });
  s->add_option("--a", a.a_file, "map or spectrum JSON file")->required();
  s->add_option("--b", a.b_file, "map or spectrum JSON file")->required();
  s->add_option("--n", a.n, "largest period when spectra are computed")->check(CLI::PositiveNumber);

  s = sub(&app, "fixedpoints", "Fix(f^n) with multiplicities", [&](const RunConfig& cfg) {
    const PeriodicPointSet set = fixed_points(load_map(a.map), a.n, cfg.spectrum_options());
    Json pts = Json::array();
    for (const auto& p : set.points)
      pts.push_back({{"point", point_to_json(p.point)}, {"multiplicity", p.multiplicity}});
    return json_output({{"period", set.period}, {"total", set.total}, {"points", pts}});
  });
  add_map_option(s, a);
  s->add_option("--n", a.n, "period")->check(CLI::PositiveNumber);

  s = sub(&app, "critical", "critical points with multiplicities", [&](const RunConfig& cfg) {
    Json pts = Json::array();
    for (const auto& c : critical_points(load_map(a.map), cfg.root_options()))
      pts.push_back({{"point", point_to_json(c.point)}, {"multiplicity", c.multiplicity}});
    return json_output({{"critical", pts}});
  });
  add_map_option(s, a);

  s = sub(&app, "conj", "search for a Mobius conjugacy from f to g", [&](const RunConfig& cfg) {
    const auto w = conjugacy_test(load_map(a.f_file), load_map(a.g_file), cfg.spectrum_options());
    return json_output({{"conjugate", w.has_value()}, {"witness", w ? to_json(*w) : Json(nullptr)}});
  });
  s->add_option("f,--f", a.f_file, "map JSON file")->required();
  s->add_option("g,--g", a.g_file, "map JSON file")->required();

  s = sub(&app, "milnor", "Milnor coordinates of a quadratic map", [&](const RunConfig& cfg) {
    const MilnorCoordinates m = milnor_coordinates(load_map(a.map), cfg.spectrum_options());
    return json_output({{"sigma1", complex_to_json(m.sigma1)},
                        {"sigma2", complex_to_json(m.sigma2)},
                        {"sigma3", complex_to_json(m.sigma3)},
                        {"relation_residual", real_to_json(m.relation_residual)}});
  });
  add_map_option(s, a);

  s = sub(&app, "lattes", "flexible Lattes map of y^2 = x^3 + a x + b", [&](const RunConfig&) {
    return json_output(
        to_json(flexible_lattes({parse_complex(a.lattes_a, "a"), parse_complex(a.lattes_b, "b")})));
  });
  s->add_option("--a", a.lattes_a, "curve coefficient a as 're' or 're,im'");
  s->add_option("--b", a.lattes_b, "curve coefficient b as 're' or 're,im'");

  s = sub(&app, "elemtrans", "elementary transformation of h1, h2", [&](const RunConfig&) {
    const auto [fg, gf] = elementary_transform(load_map(a.h1_file), load_map(a.h2_file));
    return json_output({{"h1_o_h2", to_json(fg)}, {"h2_o_h1", to_json(gf)}});
  });
  s->add_option("h1,--h1", a.h1_file, "map JSON file")->required();
  s->add_option("h2,--h2", a.h2_file, "map JSON file")->required();

  s = sub(&app, "semiconj", "search for h of degree k with f o h = h o g", [&](const RunConfig& cfg) {
    const RationalMap f = load_map(a.f_file), g = load_map(a.g_file);
    const auto h = semiconjugacy_search(f, g, a.k, cfg.spectrum_options());
    return json_output({{"found", h.has_value()},
                        {"h", h ? to_json(*h) : Json(nullptr)},
                        {"residual", h ? real_to_json(semiconjugacy_residual(f, g, *h)) : Json(nullptr)}});
  });
  s->add_option("--f", a.f_file, "map JSON file")->required();
  s->add_option("--g", a.g_file, "map JSON file")->required();
  s->add_option("--k", a.k, "degree of h (1..4)");

  s = sub(&app, "pcf", "classify every critical orbit", [&](const RunConfig& cfg) {
    const PcfVerdict v = is_pcf(load_map(a.map), a.max_iters, cfg.tolerances.orbit);
    Json crit = Json::array();
    for (std::size_t i = 0; i < v.critical.size(); ++i) {
      Json c = classification_json(v.orbits[i]);
      c["point"] = point_to_json(v.critical[i].point);
      c["multiplicity"] = v.critical[i].multiplicity;
      crit.push_back(c);
    }
    return json_output({{"pcf", v.pcf}, {"undecided", v.undecided}, {"critical", crit}});
  });
  add_map_option(s, a);
  s->add_option("--max-iters", a.max_iters, "orbit length")->check(CLI::PositiveNumber);

  s = sub(&app, "hyperbolic", "disjoint-type hyperbolicity test", [&](const RunConfig&) {
    return json_output({{"hyperbolic_disjoint", is_hyperbolic_disjoint(load_map(a.map), a.max_iters)}});
  });
  add_map_option(s, a);
  s->add_option("--max-iters", a.max_iters, "orbit length")->check(CLI::PositiveNumber);

  s = sub(&app, "green", "Green value of a marked point at parameter t", [&](const RunConfig&) {
    const FamilySpec F = load_family(a);
    const GreenValue g =
        green_value(F, F.marked_point(marked_names(a).front()), parse_complex(a.t, "t"), a.n_iter);
    return json_output({{"value", real_to_json(g.value)}, {"increment", real_to_json(g.increment)}});
  });
  add_family_options(s, a);
  s->add_option("--marked", a.marked, "marked point name (default critical)");
  s->add_option("--t", a.t, "parameter as 're' or 're,im'");
  s->add_option("--n-iter", a.n_iter, "iterations")->check(CLI::PositiveNumber);

  s = sub(&app, "bifgrid", "discrete bifurcation measure on a window", [&](const RunConfig&) {
    const FamilySpec F = load_family(a);
    const auto names = marked_names(a);
    Output o;
    o.grid = bifurcation_measure(F, names, parse_window(a.window, a.res), a.n_iter);
    o.json = grid_header(*o.grid);
    std::ostringstream csv;
    write_grid_csv(csv, *o.grid);
    o.csv = csv.str();
    return o;
  });
  add_family_options(s, a);
  s->add_option("--marked", a.marked, "marked points to sum (default critical)");
  s->add_option("--window", a.window, "re_min,re_max,im_min,im_max");
  s->add_option("--res", a.res, "cells per side");
  s->add_option("--n-iter", a.n_iter, "Green iterations")->check(CLI::PositiveNumber);

  s = sub(&app, "centers", "centres or Misiurewicz parameters of z^d + t", [&](const RunConfig& cfg) {
    const PcfKind kind = parse_kind(a.kind);
    const auto pts = pcf_parameters_unicritical(a.d, a.period, kind, a.preperiod,
                                                {cfg.root_options(), cfg.degree_cap});
    Output o = json_output({{"d", a.d},
                            {"kind", a.kind},
                            {"period", a.period},
                            {"preperiod", a.preperiod},
                            {"parameters", complex_list(pts)}});
    std::ostringstream csv;
    write_parameters_csv(csv, pts, kind, a.period);
    o.csv = csv.str();
    o.natural = OutputFormat::Csv;
    return o;
  });
  s->add_option("--d", a.d, "degree");
  s->add_option("--period", a.period, "period")->check(CLI::PositiveNumber);
  s->add_option("--kind", a.kind, "center or misiurewicz");
  s->add_option("--preperiod", a.preperiod, "preperiod (misiurewicz)");

  s = sub(&app, "equidist", "discrepancy of PCF parameters against the bifurcation measure",
          [&](const RunConfig& cfg) {
            const PcfKind kind = parse_kind(a.kind);
            const auto pts = pcf_parameters_unicritical(a.d, a.period, kind, a.preperiod,
                                                        {cfg.root_options(), cfg.degree_cap});
            const FamilySpec F = unicritical_family(a.d);
            const GridMeasure mu = bifurcation_grid(F, F.marked_point("critical"),
                                                    parse_window(a.window, a.res), a.n_iter);
            Output o = json_output({{"count", pts.size()},
                                    {"discrepancy", real_to_json(equidistribution_discrepancy(pts, mu, a.coarse))},
                                    {"total_mass", real_to_json(mu.total_mass)},
                                    {"clamped_fraction", real_to_json(mu.clamped_fraction)}});
            std::ostringstream csv;
            write_parameters_csv(csv, pts, kind, a.period);
            o.csv = csv.str();
            return o;
          });
  s->add_option("--d", a.d, "degree");
  s->add_option("--period", a.period, "period")->check(CLI::PositiveNumber);
  s->add_option("--kind", a.kind, "center or misiurewicz");
  s->add_option("--preperiod", a.preperiod, "preperiod (misiurewicz)");
  s->add_option("--window", a.window, "re_min,re_max,im_min,im_max");
  s->add_option("--res", a.res, "cells per side");
  s->add_option("--coarse", a.coarse, "blocks per side")->check(CLI::PositiveNumber);
  s->add_option("--n-iter", a.n_iter, "Green iterations")->check(CLI::PositiveNumber);

  s = sub(&app, "similarity", "rescaled parameter-space frames at t0", [&](const RunConfig&) {
    const FamilySpec F = load_family(a);
    const auto periods = parse_ints(a.periods, "periods");
    const SimilarityRun run = similarity_frames(F, F.marked_point(marked_names(a).front()),
                                                parse_complex(a.t0, "t0"), periods, a.radius,
                                                a.samples);
    Json frames = Json::array();
    for (const auto& f : run.frames) {
      Json vals = Json::array();
      for (const auto& v : f.values) vals.push_back(point_to_json(v));
      frames.push_back({{"n", f.n},
                        {"rho", real_to_json(f.rho)},
                        {"spread", real_to_json(f.spread)},
                        {"error", f.error ? Json(std::string(to_string(*f.error))) : Json(nullptr)},
                        {"values", vals}});
    }
    Json dist = Json::array();
    for (double x : run.consecutive_distance) dist.push_back(real_to_json(x));
    return json_output({{"radius", run.radius},
                        {"samples", run.samples},
                        {"frames", frames},
                        {"consecutive_distance", dist}});
  });
  add_family_options(s, a);
  s->add_option("--marked", a.marked, "marked point name (default critical)");
  s->add_option("--t0", a.t0, "base parameter as 're' or 're,im'");
  s->add_option("--periods", a.periods, "comma-separated periods");
  s->add_option("--radius", a.radius, "half-width R of the frame square");
  s->add_option("--samples", a.samples, "samples per side")->check(CLI::PositiveNumber);

  CLI::App* diag = app.add_subcommand("diagnostics", "orbit diagnostics");
  diag->require_subcommand(1);

  s = sub(diag, "ce", "Collet-Eckmann exponent estimate", [&](const RunConfig&) {
    return json_output({{"exponent", real_to_json(ce_exponent_estimate(
                                         load_map(a.map), parse_point(a.c, "c"), a.ce_N, a.n_max))}});
  });
  add_map_option(s, a);
  s->add_option("--c", a.c, "critical point as 're', 're,im' or 'inf'");
  s->add_option("--N", a.ce_N, "offset along the orbit");
  s->add_option("--n-max", a.n_max, "largest iterate")->check(CLI::PositiveNumber);

  s = sub(diag, "pr", "polynomial recurrence exponent estimate", [&](const RunConfig&) {
    return json_output({{"exponent", real_to_json(recurrence_exponent_estimate(
                                         load_map(a.map), parse_point(a.c, "c"), a.n_max))}});
  });
  add_map_option(s, a);
  s->add_option("--c", a.c, "critical point as 're', 're,im' or 'inf'");
  s->add_option("--n-max", a.n_max, "largest iterate")->check(CLI::PositiveNumber);

  s = sub(diag, "sep", "separation statistics of two orbits", [&](const RunConfig&) {
    const SeparationStats st = separation_statistics(load_map(a.map), parse_point(a.pa, "a"),
                                                     parse_point(a.pb, "b"), a.sep_n, a.delta);
    return json_output(
        {{"fs_frequency", real_to_json(st.fs_frequency)}, {"as_average", real_to_json(st.as_average)}});
  });
  add_map_option(s, a);
  s->add_option("--a", a.pa, "first point");
  s->add_option("--b", a.pb, "second point");
  s->add_option("--n", a.sep_n, "orbit length")->check(CLI::PositiveNumber);
  s->add_option("--delta", a.delta, "separation threshold");

  s = sub(diag, "dynrel", "probe for a dynamical relation between two points", [&](const RunConfig&) {
    const DynamicRelation r =
        dynamically_related_probe(load_map(a.map), parse_point(a.pa, "a"), parse_point(a.pb, "b"), a.bound);
    const char* kind = r.kind == DynamicRelation::Kind::Collision         ? "collision"
                       : r.kind == DynamicRelation::Kind::BothPreperiodic ? "both_preperiodic"
                                                                          : "unknown";
    return json_output({{"kind", kind}, {"m", r.m}, {"n", r.n}});
  });
  add_map_option(s, a);
  s->add_option("--a", a.pa, "first point");
  s->add_option("--b", a.pb, "second point");
  s->add_option("--bound", a.bound, "largest iterate")->check(CLI::PositiveNumber);

  return cmds;
}

}  // namespace

int run(std::vector<std::string> args, std::ostream& out, std::ostream& err) {
  if (!args.empty() && args.front() == "moduli") args.erase(args.begin());

  CLI::App app{"Dynamical invariants of rational maps and parameter-space experiments", "specrig"};
  app.fallthrough();
  app.require_subcommand(1);
  Args a;
  app.add_option("--config", a.config, "RunConfig JSON; flags take precedence");
  app.add_option("--out", a.out_dir, "write result.json, grid.pgm, points.csv to this directory");
  app.add_option("--format", a.format, "json, csv or pgm");
  app.add_option("--threads", a.threads, "worker threads or 'auto' (overrides SPECRIG_THREADS)");
  app.add_option("--precision-bits", a.precision_bits, "MPFR bits for root finding (64..4096)");
  app.add_option("--degree-cap", a.degree_cap, "largest polynomial degree attempted");
  app.add_option("--seed", a.seed, "root-finder seed");
  app.add_option("--root-tol", a.root_tol, "root backward-error acceptance");
  app.add_option("--cluster-radius", a.cluster_radius, "root clustering radius");
  app.add_option("--spectrum-tol", a.spectrum_tol, "spectrum comparison tolerance");
  app.add_option("--orbit-tol", a.orbit_tol, "orbit coincidence tolerance (chordal)");
  const std::vector<Command> cmds = build(app, a);

  try {
    std::reverse(args.begin(), args.end());
    app.parse(args);
  } catch (const CLI::ParseError& e) {
    return app.exit(e, out, err) == 0 ? kExitOk : kExitInvalid;
  }

  try {
    const RunConfig cfg = resolve_config(a);
    set_thread_count(cfg.threads);
    for (const Command& c : cmds) {
      if (c.app->parsed()) {
        emit(c.action(cfg), cfg, a.out_dir, out);
        return kExitOk;
      }
    }
    invalid("no subcommand selected");
  } catch (const Error& e) {
    err << "specrig: " << e.what() << '\n';
    return is_numerical_failure(e.code()) ? kExitNumerical : kExitInvalid;
  } catch (const Json::exception& e) {
    err << "specrig: InvalidInput: " << e.what() << '\n';
    return kExitInvalid;
  }
}

}  // namespace specrig::cli
