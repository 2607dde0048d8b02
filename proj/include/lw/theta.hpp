#pragma once

#include <complex>

namespace lw {

struct ThetaResult {
    std::complex<double> value;
    int terms_used;     // series terms summed, including the constant one
    double tail_bound;  // bound on the magnitude of the dropped tail
};

/// Third Jacobi theta function
///
///   theta3(z, q) = 1 + 2 sum_{n>=1} q^(n^2) cos(2 n z),   q in [0, 1).
///
/// The partial sum stops once a geometric bound on the remaining tail drops
/// below `tol` (relative to the accumulated magnitude when that exceeds 1,
/// so the bound stays meaningful for results far above unit scale). The
/// achieved bound is reported in the result.
///
/// Terms are evaluated in a form that is even in z by construction, so
/// theta3(-z, q) == theta3(z, q) holds bitwise and real z yields an exactly
/// real result.
///
/// Throws SpecError for q outside [0, 1), NumericsError when the result
/// magnitude would overflow or the term cap is hit before convergence.
ThetaResult theta3(std::complex<double> z, double q, double tol = 1e-14);

} // namespace lw
