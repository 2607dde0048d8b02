#include "lw/state.hpp"

#include "lw/errors.hpp"
#include "lw/summation.hpp"

#include <cmath>
#include <numbers>
#include <string>

namespace lw {

namespace {

constexpr double kNormTol = 1e-12;
constexpr double kHermTol = 1e-12;
constexpr double kEigTol = 1e-10;

double canonical_phase(double q0a) {
    if (!std::isfinite(q0a)) throw SpecError("gaussian: non-finite q0a");
    const double two_pi = 2.0 * std::numbers::pi;
    double w = q0a - two_pi * std::floor((q0a + std::numbers::pi) / two_pi);
    if (w >= std::numbers::pi) w = -std::numbers::pi;
    return w;
}

} // namespace

PureState::PureState(int n_min, std::vector<cplx> amplitudes, double spacing)
    : n_min_(n_min), amps_(std::move(amplitudes)), spacing_(spacing) {
    if (amps_.empty()) throw SpecError("state: empty amplitude window");
    if (!(spacing_ > 0.0) || !std::isfinite(spacing_))
        throw SpecError("state: spacing must be positive and finite");
    std::vector<double> sq(amps_.size());
    for (std::size_t i = 0; i < amps_.size(); ++i) {
        if (!std::isfinite(amps_[i].real()) || !std::isfinite(amps_[i].imag()))
            throw SpecError("state: non-finite amplitude");
        sq[i] = std::norm(amps_[i]);
    }
    const double total = pairwise_sum(sq);
    if (std::fabs(total - 1.0) > kNormTol)
        throw SpecError("state: amplitudes not normalized (sum |psi|^2 = " +
                        std::to_string(total) + ")");
}

DensityOperator::DensityOperator(int n_min, Eigen::MatrixXcd matrix, double spacing)
    : n_min_(n_min), mat_(std::move(matrix)), spacing_(spacing) {
    if (mat_.rows() == 0 || mat_.rows() != mat_.cols())
        throw SpecError("density: matrix must be square and non-empty");
    if (!(spacing_ > 0.0) || !std::isfinite(spacing_))
        throw SpecError("density: spacing must be positive and finite");
    if (!mat_.allFinite()) throw SpecError("density: non-finite entry");

    const double herm_dev = (mat_ - mat_.adjoint()).cwiseAbs().maxCoeff();
    if (herm_dev > kHermTol)
        throw SpecError("density: not Hermitian (max deviation " +
                        std::to_string(herm_dev) + ")");
    const double tr_dev = std::fabs(mat_.trace().real() - 1.0);
    if (tr_dev > kNormTol)
        throw SpecError("density: trace differs from 1 by " + std::to_string(tr_dev));

    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(
        ((mat_ + mat_.adjoint()) * 0.5).eval(), Eigen::EigenvaluesOnly);
    const double min_eig = es.eigenvalues().minCoeff();
    if (min_eig < -kEigTol)
        throw SpecError("density: negative eigenvalue " + std::to_string(min_eig));
}

PureState make_delta(int n0, double spacing) {
    return PureState(n0, {cplx{1.0, 0.0}}, spacing);
}

PureState make_gaussian(const GaussianParams& p, double spacing, double tail_eps) {
    if (!(p.sigma_tilde > 0.0) || !std::isfinite(p.sigma_tilde))
        throw SpecError("gaussian: sigma_tilde must be positive and finite");
    if (!(tail_eps > 0.0 && tail_eps < 1.0))
        throw SpecError("gaussian: tail_eps must lie in (0, 1)");
    const double q0a = canonical_phase(p.q0a);

    const int radius = static_cast<int>(
        std::ceil(p.sigma_tilde * std::sqrt(2.0 * std::log(1.0 / tail_eps))));
    const int n_lo = p.n0 - radius;
    std::vector<cplx> amps(static_cast<std::size_t>(2 * radius + 1));
    std::vector<double> sq(amps.size());
    for (int i = 0; i < 2 * radius + 1; ++i) {
        const double d = static_cast<double>(n_lo + i - p.n0);
        const double mag = std::exp(-d * d / (2.0 * p.sigma_tilde * p.sigma_tilde));
        amps[static_cast<std::size_t>(i)] =
            mag * std::polar(1.0, q0a * static_cast<double>(n_lo + i));
        sq[static_cast<std::size_t>(i)] = mag * mag;
    }
    const double inv_norm = 1.0 / std::sqrt(pairwise_sum(sq));
    for (auto& a : amps) a *= inv_norm;
    return PureState(n_lo, std::move(amps), spacing);
}

PureState superpose(std::span<const PureState> states, std::span<const cplx> coeffs) {
    if (states.empty()) throw SpecError("superpose: no states");
    if (states.size() != coeffs.size())
        throw SpecError("superpose: state/coefficient count mismatch");

    const double spacing = states[0].spacing();
    int n_lo = states[0].n_min(), n_hi = states[0].n_max();
    for (const auto& s : states) {
        if (s.spacing() != spacing) throw SpecError("superpose: spacing mismatch");
        n_lo = std::min(n_lo, s.n_min());
        n_hi = std::max(n_hi, s.n_max());
    }
    for (const auto& c : coeffs)
        if (!std::isfinite(c.real()) || !std::isfinite(c.imag()))
            throw SpecError("superpose: non-finite coefficient");

    std::vector<cplx> amps(static_cast<std::size_t>(n_hi - n_lo + 1), cplx{0.0, 0.0});
    for (std::size_t s = 0; s < states.size(); ++s)
        for (int n = states[s].n_min(); n <= states[s].n_max(); ++n)
            amps[static_cast<std::size_t>(n - n_lo)] += coeffs[s] * states[s].amp(n);

    std::vector<double> sq(amps.size());
    for (std::size_t i = 0; i < amps.size(); ++i) sq[i] = std::norm(amps[i]);
    const double norm = std::sqrt(pairwise_sum(sq));
    if (norm < 1e-12)
        throw SpecError("superpose: destructive cancellation, combined norm " +
                        std::to_string(norm));

    // trim exactly-zero edges so the window reflects actual support
    std::size_t lo = 0, hi = amps.size();
    while (lo + 1 < hi && amps[lo] == cplx{0.0, 0.0}) ++lo;
    while (hi > lo + 1 && amps[hi - 1] == cplx{0.0, 0.0}) --hi;
    std::vector<cplx> trimmed(amps.begin() + static_cast<std::ptrdiff_t>(lo),
                              amps.begin() + static_cast<std::ptrdiff_t>(hi));
    for (auto& a : trimmed) a /= norm;
    return PureState(n_lo + static_cast<int>(lo), std::move(trimmed), spacing);
}

DensityOperator to_density(const PureState& psi) {
    const auto& a = psi.amplitudes();
    const int n = static_cast<int>(a.size());
    Eigen::MatrixXcd rho(n, n);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
            rho(i, j) = a[static_cast<std::size_t>(i)] *
                        std::conj(a[static_cast<std::size_t>(j)]);
    return DensityOperator(psi.n_min(), std::move(rho), psi.spacing());
}

cplx momentum_amplitude(const PureState& psi, double kappa) {
    if (!std::isfinite(kappa)) throw SpecError("momentum_amplitude: non-finite kappa");
    cplx acc{0.0, 0.0};
    for (int n = psi.n_min(); n <= psi.n_max(); ++n)
        acc += psi.amp(n) * std::polar(1.0, -kappa * static_cast<double>(n));
    return std::sqrt(psi.spacing() / (2.0 * std::numbers::pi)) * acc;
}

} // namespace lw
