#pragma once

#include <cstdint>

namespace chainent {

struct TraceIdentityReport {
    double symmetric_square = 0.0;  // f(x) = x^2 on a symmetric family
    double spd_log = 0.0;           // principal log on a positive-definite family
    double diagonalizable_log = 0.0;  // principal log on P D(s) P^{-1}
    double constant_family = 0.0;   // s-independent M: both sides vanish

    double max_error() const;
};

/// Compares d/ds tr f(M(s)) (central differences) with tr(f'(M) dM/ds) on
/// random families of the given size. Errors are scaled by the larger of
/// the two sides (floored at 1).
TraceIdentityReport trace_derivative_identity_check(int size, std::uint64_t seed);

}  // namespace chainent
