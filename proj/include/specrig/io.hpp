#pragma once

// JSON, CSV and PGM encodings of the library types, and the run
// configuration shared by every CLI subcommand.

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include <json.hpp>

#include "specrig/famdyn.hpp"
#include "specrig/moduli.hpp"
#include "specrig/spectrum.hpp"

namespace specrig {

using Json = nlohmann::json;

/// Complex numbers are [re, im]; ProjPoints are [re, im] or null for
/// infinity. Non-finite reals are written as the strings "inf", "-inf" and
/// "nan" so that every emitted document parses back to the same values.
Json real_to_json(double x);
double real_from_json(const Json& j);
Json complex_to_json(Complex z);
Complex complex_from_json(const Json& j);
Json point_to_json(const ProjPoint& p);
ProjPoint point_from_json(const Json& j);
Json complex_list(std::span<const Complex> zs);
std::vector<Complex> complex_list_from_json(const Json& j);

/// {"coeffs": [[re, im], ...]}, ascending degree.
Json to_json(const ComplexPoly& p);
ComplexPoly poly_from_json(const Json& j);

/// {"degree": d, "num": poly, "den": poly}. Parsing runs ratmap_new, so a
/// degenerate pair throws DegenerateMap; a mismatching "degree" throws
/// InvalidInput.
Json to_json(const RationalMap& f);
RationalMap map_from_json(const Json& j);

/// {"m": [[a, b], [c, d]]}.
Json to_json(const MobiusTransform& m);
MobiusTransform mobius_from_json(const Json& j);

Json to_json(const SpectrumTable& t);
SpectrumTable spectrum_from_json(const Json& j);

/// One row per period: n, then |lambda| for every element of S_n.
void write_lengths_csv(std::ostream& os, const SpectrumTable& t);

Json to_json(const ConjugacyWitness& w);
ConjugacyWitness witness_from_json(const Json& j);

Json to_json(const FamilySpec& F);
FamilySpec family_from_json(const Json& j);

Json to_json(const GridWindow& w);
GridWindow window_from_json(const Json& j);

/// Header only: window, resolution [nx, ny], total_mass, clamped_fraction,
/// masked_cells.
Json grid_header(const GridMeasure& g);

/// P5, 16-bit big-endian, row 0 at the top (largest imaginary part),
/// normalised so the largest mass maps to 65535; masked cells are 0.
void write_grid_pgm(std::ostream& os, const GridMeasure& g);

/// Header "x,y,mass", one row per cell centre; masked cells read "nan".
void write_grid_csv(std::ostream& os, const GridMeasure& g);

/// Header "re,im,kind,period"; kind is "center" or "misiurewicz".
void write_parameters_csv(std::ostream& os, std::span<const Complex> points, PcfKind kind,
                          int period);

enum class OutputFormat { Json, Csv, Pgm };

struct Tolerances {
  /// Backward-error acceptance of each root.
  double root_residual = 1e-8;
  double cluster_radius = 1e-6;
  double spectrum_compare = kSpectrumTolerance;
  double orbit = kOrbitTolerance;
};

struct RunConfig {
  /// 0 for double precision, otherwise MPFR bits in [64, 4096].
  int precision_bits = 0;
  Tolerances tolerances;
  int degree_cap = 4096;
  std::uint64_t seed = 0;
  /// Unset means the subcommand's natural format.
  std::optional<OutputFormat> format;
  /// 0 means automatic (SPECRIG_THREADS, else the OpenMP default).
  int threads = 0;

  /// Throws InvalidInput.
  void validate() const;
  RootOptions root_options() const;
  SpectrumOptions spectrum_options() const;
};

/// Keys: precision ("double" or {"bits": n}), tolerances {root_residual,
/// cluster_radius, spectrum_compare, orbit}, degree_cap, seed, format
/// ("json", "csv", "pgm"), threads (integer or "auto"). Missing keys keep
/// their values from `base`; unknown keys throw InvalidInput. The result is
/// not validated, so later overrides can still repair it.
Json to_json(const RunConfig& c);
RunConfig config_from_json(const Json& j, RunConfig base = {});

OutputFormat parse_format(const std::string& s);
std::string_view to_string(OutputFormat f);

/// Parses a document, turning syntax and type errors into InvalidInput.
Json parse_json(const std::string& text);
Json read_json_file(const std::string& path);

}  // namespace specrig
