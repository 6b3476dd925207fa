#pragma once

// Shared runtime scalar operations.
//
// Built-in problem definitions and parsed formulas must produce bit-identical
// values so that reports generated through either path compare equal byte for
// byte.  Compilers fold std::pow with a constant exponent (e.g. pow(x, 2))
// into plain multiplication, which differs from the libm call by up to 1 ulp
// on some platforms.  Routing every power evaluation through one opaque
// function guarantees both paths execute the same machine code.

#include <cmath>

namespace npvide::detail {

#if defined(__clang__)
#define NPVIDE_OPAQUE __attribute__((noinline))
#elif defined(__GNUC__)
#define NPVIDE_OPAQUE __attribute__((noinline, noipa))
#else
#define NPVIDE_OPAQUE
#endif

NPVIDE_OPAQUE inline double pow_value(double base, double exponent) {
    return std::pow(base, exponent);
}

#undef NPVIDE_OPAQUE

}  // namespace npvide::detail
