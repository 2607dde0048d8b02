#pragma once

#include "lw/state.hpp"
#include "lw/wigner.hpp"

namespace lw {

/// Closed-form references, evaluated independently of the grid machinery.
/// Each real-valued oracle audits that its assembled complex expression has
/// a negligible imaginary part before returning the real value.
///
/// The theta-function factors can exceed double range when |m| is large
/// compared with sigma_tilde^2; such evaluations raise NumericsError rather
/// than returning garbage.

/// Single site at n0: W = delta_{m,2n0} / 2pi, independent of k.
double oracle_delta(int n0, const PhasePoint& pt);

/// Discretized Gaussian with center n0, width sigma_tilde, phase q0a.
double oracle_gaussian(const GaussianParams& p, const PhasePoint& pt);

/// (|n1> + alpha |n2>)/norm with n1 != n2: two positive strips at m = 2 n1,
/// 2 n2 and an interference row at m = n1 + n2.
double oracle_two_delta(int n1, int n2, cplx alpha, const PhasePoint& pt);

/// Closed-form filtered negativity of the two-site superposition:
/// 4 |alpha| / (pi (1 + |alpha|^2)).
double oracle_eta_two_delta(cplx alpha);

/// (|G_{n0}> + |G_{-n0}>)/norm at equal widths and zero phases, compact
/// single-theta form.
double oracle_two_gaussian_symmetric(int n0, double sigma_tilde, const PhasePoint& pt);

struct TwoGaussianParams {
    int n1 = 0;
    int n2 = 0;
    double sigma1_tilde = 1;
    double sigma2_tilde = 1;
    double q1a = 0;
    double q2a = 0;
    cplx alpha{1.0, 0.0};  // relative weight of the second component
};

/// Crossed term W12 of the general two-Gaussian superposition
/// (phi1 + alpha phi2)/norm, normalized so that the full transform is
///   W = W11 + |alpha|^2 W22 + conj(alpha) W12 + alpha W21
/// with W21 the label-swapped crossed term (= conj(W12) pointwise).
cplx oracle_two_gaussian_cross(const TwoGaussianParams& p, const PhasePoint& pt);

/// Full two-Gaussian transform assembled from the four terms above.
double oracle_two_gaussian(const TwoGaussianParams& p, const PhasePoint& pt);

} // namespace lw
