#pragma once

#include <span>

#include "specrig/cpoly.hpp"
#include "specrig/rootfind.hpp"

namespace specrig {

/// Aberth iteration carried out in MPFR arithmetic at opts.precision_bits;
/// roots and inclusion radii are rounded back to double on return.
RawRoots big_aberth(std::span<const Complex> coeffs, const RootOptions& opts);

}  // namespace specrig
