#pragma once

#include <optional>
#include <utility>
#include <vector>

#include "specrig/ratmap.hpp"
#include "specrig/spectrum.hpp"

namespace specrig {

/// phi with phi o f o phi^{-1} = g, and the max chordal deviation over the
/// sample points.
struct ConjugacyWitness {
  MobiusTransform mobius = MobiusTransform::identity();
  double residual = 0;
};

inline constexpr double kConjugacyTolerance = 1e-7;

/// 64 points, half on |z| = 0.7 and half on |z| = 1.3, offset in angle so
/// that no sample lies on the real axis.
std::vector<ProjPoint> sample_points();

/// Searches Mobius maps carrying three distinct markers of f (fixed points,
/// then points of exact period 2) to markers of g of the same period and
/// multiplier. Returns the first candidate whose residual is below
/// kConjugacyTolerance. Throws InsufficientMarkers when f has fewer than
/// three distinct points of period <= 2.
std::optional<ConjugacyWitness> conjugacy_test(const RationalMap& f, const RationalMap& g,
                                               const SpectrumOptions& opts = {});

/// Elementary symmetric functions of the three fixed-point multipliers of a
/// quadratic map; `relation_residual` = |e3 - (e1 - 2)|.
struct MilnorCoordinates {
  Complex sigma1, sigma2, sigma3;
  double relation_residual = 0;
};

MilnorCoordinates milnor_coordinates(const RationalMap& f, const SpectrumOptions& opts = {});

enum class ExceptionalKind { Power, Chebyshev };

/// z^d, or the monic Chebyshev polynomial T_d (T_2 = z^2 - 2) from
/// T_{k+1} = z T_k - T_{k-1}.
RationalMap exceptional_map(ExceptionalKind kind, int d);

/// Curve y^2 = x^3 + a x + b.
struct LattesParams {
  Complex a, b;
};

/// x-coordinate of the duplication map,
/// (x^4 - 2a x^2 - 8b x + a^2) / (4 (x^3 + a x + b)).
/// Throws SingularCurve when |4a^3 + 27b^2| <= 1e-10 (4|a|^3 + 27|b|^2).
RationalMap flexible_lattes(const LattesParams& p);

/// (h1 o h2, h2 o h1).
std::pair<RationalMap, RationalMap> elementary_transform(const RationalMap& h1,
                                                         const RationalMap& h2);

inline constexpr double kSemiconjugacyTolerance = 1e-7;

/// Max chordal distance between f(h(z)) and h(g(z)) over sample_points().
double semiconjugacy_residual(const RationalMap& f, const RationalMap& g, const RationalMap& h);

/// Looks for h of degree deg_h (1..4) with f o h = h o g. Candidates
/// interpolate whole periodic cycles of g onto periodic points of f of the
/// same period; promising ones are refined by damped Gauss-Newton. Returns
/// the first h in enumeration order with residual below
/// kSemiconjugacyTolerance. No result does not prove that none exists.
std::optional<RationalMap> semiconjugacy_search(const RationalMap& f, const RationalMap& g,
                                                int deg_h, const SpectrumOptions& opts = {});

}  // namespace specrig
