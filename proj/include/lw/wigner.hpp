#pragma once

#include "lw/state.hpp"

#include <vector>

namespace lw {

/// Wraps k into the canonical Brillouin-zone representative in [-pi, pi).
double canonical_k(double k);

/// One phase-space point: integer half-site index m, momentum-like k.
struct PhasePoint {
    int m;
    double k;
    PhasePoint(int m_init, double k_init) : m(m_init), k(canonical_k(k_init)) {}
};

/// Real-valued Wigner samples on rows m_min..m_max and the uniform momentum
/// grid k_j = -pi + 2 pi j / n_k, j = 0..n_k-1. Values outside the row range
/// read as zero.
class WignerGrid {
public:
    WignerGrid(int m_min, int n_k, double spacing, std::vector<double> values,
               double max_imag_residue);

    /// Smallest even node count that resolves every frequency produced by a
    /// state window of the given width, with margin for quadratures of
    /// products of two rows.
    static int nyquist_floor(int window_width) {
        return window_width < 1 ? 4 : 2 * window_width + 2;
    }

    int m_min() const { return m_min_; }
    int m_max() const { return m_min_ + rows_ - 1; }
    int rows() const { return rows_; }
    int n_k() const { return n_k_; }
    double spacing() const { return spacing_; }
    double max_imag_residue() const { return residue_; }
    double k_at(int j) const;

    double value(int m, int j) const {
        const int r = m - m_min_;
        if (r < 0 || r >= rows_) return 0.0;
        return values_[static_cast<std::size_t>(r) * static_cast<std::size_t>(n_k_) +
                       static_cast<std::size_t>(j)];
    }
    const std::vector<double>& values() const { return values_; }
    std::vector<double>& mutable_values() { return values_; }

private:
    int m_min_;
    int rows_;
    int n_k_;
    double spacing_;
    double residue_;
    std::vector<double> values_;
};

/// Complex-valued counterpart, used for transforms of non-Hermitian
/// operators such as the product of two density operators.
class ComplexGrid {
public:
    ComplexGrid(int m_min, int n_k, double spacing, std::vector<cplx> values);

    int m_min() const { return m_min_; }
    int m_max() const { return m_min_ + rows_ - 1; }
    int rows() const { return rows_; }
    int n_k() const { return n_k_; }
    double spacing() const { return spacing_; }
    double k_at(int j) const;

    cplx value(int m, int j) const {
        const int r = m - m_min_;
        if (r < 0 || r >= rows_) return {0.0, 0.0};
        return values_[static_cast<std::size_t>(r) * static_cast<std::size_t>(n_k_) +
                       static_cast<std::size_t>(j)];
    }
    const std::vector<cplx>& values() const { return values_; }

private:
    int m_min_;
    int rows_;
    int n_k_;
    double spacing_;
    std::vector<cplx> values_;
};

enum class GridPath {
    dft,    // per-row coefficient binning + discrete Fourier transform
    direct  // literal per-point sums, kept as an independent cross-check
};

/// Single-point evaluation W(m, k) = (1/2pi) sum_n <n|rho|m-n> e^{-i(2n-m)k}.
double wigner_point(const DensityOperator& rho, const PhasePoint& pt);

/// Full grid over the state window rows m in [2 n_min, 2 n_max]. Throws
/// NyquistError when n_k is odd or below the floor for the window.
WignerGrid wigner_grid(const DensityOperator& rho, int n_k,
                       GridPath path = GridPath::dft);

/// Same transform for an arbitrary (not necessarily Hermitian) operator
/// given by its matrix on a site window; complex result, no reality check.
cplx operator_wigner_point(const Eigen::MatrixXcd& op, int n_min, const PhasePoint& pt);

/// Result of applying a phase-point operator to a state: amplitudes on a
/// reflected window, generally unnormalized.
struct SiteAmplitudes {
    int n_min;
    std::vector<cplx> amps;
};

/// A(m,k) |psi>, with (A psi)(n') = (1/2pi) e^{-i(m-2n')k} psi(m-n').
SiteAmplitudes apply_phase_point(const PureState& psi, const PhasePoint& pt);

/// sum_m W(m, k_j); equals |<k|psi>|^2-type momentum density for unit
/// spacing grids built from states.
double momentum_marginal(const WignerGrid& g, int j);

/// (2pi/n_k) sum_j W(m, k_j); site occupation on even rows, zero on odd.
double position_marginal(const WignerGrid& g, int m);

/// 2pi sum_m (2pi/n_k) sum_j W1 W2 = tr(rho1 rho2) for grids built from
/// states on a shared axis set.
double overlap(const WignerGrid& g1, const WignerGrid& g2);

/// Inverse transform: rho_{n1,n2} = (2pi/n_k) sum_j W(n1+n2, k_j)
/// e^{+i(n1-n2)k_j}. Requires a grid with even end rows (one generated from
/// a state window) and validates the result as a density operator.
DensityOperator reconstruct_density(const WignerGrid& g);

/// Wigner transform of the operator product rho1 rho2 assembled from the two
/// grids alone, via the discrete overlap kernel. Exact when n_k resolves the
/// combined windows; throws NyquistError otherwise.
ComplexGrid wigner_of_product(const WignerGrid& g1, const WignerGrid& g2);

/// Continuum Gaussian reference (1/pi) exp(-(x-x0)^2/sigma^2) *
/// exp(-sigma^2 (p-q0)^2) in physical units x = m a / 2, p = k / a.
double continuum_gaussian_reference(double x, double p, double x0, double sigma,
                                    double q0);

/// Naive one-index construction W_dir(m, k) = (1/2pi) sum_n <n|rho|2m-n>
/// e^{-2i(n-m)k}: integer site labels only, no half-site rows. Periodic in k
/// with period pi, hence over-counts the zone; kept as a counterexample.
double wigner_direct(const DensityOperator& rho, const PhasePoint& pt);

} // namespace lw
