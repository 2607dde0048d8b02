#pragma once

#include "lw/wigner.hpp"

namespace lw {

struct NegativityReport {
    double eta;
    double raw_negativity;
    double quad_error_estimate;  // |full-grid eta - half-grid eta|
    double min_value;            // most negative unfiltered sample
    PhasePoint min_point;
};

/// Majority sign filter. Even rows pass through untouched. On odd rows each
/// sample is replaced by chi * |W| where chi is the sign of the weighted
/// vote 2 s(m-1) + s(m) + 2 s(m+1) taken down the column; s() is the sign
/// with a dead zone of eps_rel times the row's own peak magnitude, and rows
/// outside the grid vote zero. A zero vote keeps the original sample.
WignerGrid sign_filter(const WignerGrid& g, double eps_rel = 1e-14);

/// Sign-filtered non-classicality: eta = sum_m (2pi/n_k) sum_j
/// [|Wf| - Wf] on the filtered grid, plus the unfiltered counterpart
/// (raw_negativity), a quadrature error estimate from the embedded
/// half-resolution grid, and the location of the deepest unfiltered minimum.
NegativityReport eta(const WignerGrid& g);

/// Unfiltered negative-part integral sum_m (2pi/n_k) sum_j [|W| - W].
double raw_negativity(const WignerGrid& g);

struct Classification {
    bool nonnegative;
    double min_value;
    PhasePoint witness;  // location of the minimum; meaningful when negative
};

/// Scans the grid of the given pure state for values below -tol.
Classification classify_nonnegative(const PureState& psi, int n_k, double tol);

} // namespace lw
