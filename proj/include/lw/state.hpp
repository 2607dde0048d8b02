#pragma once

#include <Eigen/Dense>

#include <complex>
#include <span>
#include <vector>

namespace lw {

using cplx = std::complex<double>;

/// Normalized pure state on a finite window of lattice sites. Amplitudes
/// outside [n_min, n_max] read as zero.
class PureState {
public:
    PureState(int n_min, std::vector<cplx> amplitudes, double spacing = 1.0);

    int n_min() const { return n_min_; }
    int n_max() const { return n_min_ + static_cast<int>(amps_.size()) - 1; }
    int width() const { return static_cast<int>(amps_.size()) - 1; }
    double spacing() const { return spacing_; }
    const std::vector<cplx>& amplitudes() const { return amps_; }

    cplx amp(int n) const {
        const int i = n - n_min_;
        if (i < 0 || i >= static_cast<int>(amps_.size())) return {0.0, 0.0};
        return amps_[static_cast<std::size_t>(i)];
    }

private:
    int n_min_;
    std::vector<cplx> amps_;
    double spacing_;
};

/// Hermitian, unit-trace, positive-semidefinite operator on a site window.
class DensityOperator {
public:
    DensityOperator(int n_min, Eigen::MatrixXcd matrix, double spacing = 1.0);

    int n_min() const { return n_min_; }
    int n_max() const { return n_min_ + static_cast<int>(mat_.rows()) - 1; }
    int width() const { return static_cast<int>(mat_.rows()) - 1; }
    double spacing() const { return spacing_; }
    const Eigen::MatrixXcd& matrix() const { return mat_; }

    cplx element(int n1, int n2) const {
        const int i = n1 - n_min_, j = n2 - n_min_;
        if (i < 0 || j < 0 || i >= mat_.rows() || j >= mat_.cols()) return {0.0, 0.0};
        return mat_(i, j);
    }

private:
    int n_min_;
    Eigen::MatrixXcd mat_;
    double spacing_;
};

struct GaussianParams {
    int n0 = 0;              // center site
    double sigma_tilde = 1;  // width in units of the spacing
    double q0a = 0;          // momentum phase per site, wrapped into [-pi, pi)
};

PureState make_delta(int n0, double spacing = 1.0);

/// Discretized Gaussian, amplitudes exp(-(n-n0)^2/(2 sigma_tilde^2)) with a
/// per-site momentum phase, truncated where the amplitude falls below
/// tail_eps and renormalized.
PureState make_gaussian(const GaussianParams& p, double spacing = 1.0,
                        double tail_eps = 1e-16);

/// Renormalized linear combination sum_i coeffs[i] * states[i]. All states
/// must share the spacing; near-total cancellation is an error.
PureState superpose(std::span<const PureState> states, std::span<const cplx> coeffs);

DensityOperator to_density(const PureState& psi);

/// Momentum-space amplitude sqrt(spacing/2pi) * sum_n exp(-i kappa n) psi_n,
/// kappa = q * spacing. Periodic in kappa with period 2 pi.
cplx momentum_amplitude(const PureState& psi, double kappa);

} // namespace lw
