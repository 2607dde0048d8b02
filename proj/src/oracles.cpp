#include "lw/oracles.hpp"

#include "lw/errors.hpp"
#include "lw/theta.hpp"

#include <cmath>
#include <numbers>
#include <string>

namespace lw {

namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kTwoPi = 2.0 * std::numbers::pi;

double real_with_audit(cplx v, const char* what) {
    if (std::fabs(v.imag()) > 1e-10 * (1.0 + std::fabs(v.real())))
        throw NumericsError(std::string(what) + ": imaginary residue " +
                            std::to_string(v.imag()));
    return v.real();
}

// Crossed transform of two unit-amplitude Gaussian profiles
//   phi_i(n) = exp(-(n-n_i)^2 / (2 s_i^2)) exp(i q_i n),
// X_ij(m,k) = (1/2pi) sum_n phi_i(n) conj(phi_j(m-n)) e^{-i(2n-m)k},
// resummed through theta3.
cplx x_cross(int ni, int nj, double si, double sj, double qi, double qj, int m,
             double k) {
    const double lam = (si * si + sj * sj) / (2.0 * si * si * sj * sj);
    const double nome = std::exp(-lam);
    const double dm = static_cast<double>(m);
    const cplx z{k - 0.5 * (qi + qj),
                 ni / (2.0 * si * si) + (dm - nj) / (2.0 * sj * sj)};
    const cplx pref = std::polar(1.0, dm * k) * std::polar(1.0, -qj * dm) *
                      std::exp(-static_cast<double>(ni) * ni / (2.0 * si * si)) *
                      std::exp(-(dm - nj) * (dm - nj) / (2.0 * sj * sj)) / kTwoPi;
    return pref * theta3(z, nome).value;
}

// sum_n |phi1(n) + alpha phi2(n)|^2 by direct summation
double two_gaussian_norm_sq(const TwoGaussianParams& p) {
    const double smax = std::max(p.sigma1_tilde, p.sigma2_tilde);
    const int radius = static_cast<int>(std::ceil(smax * 9.1)) + 1;
    const int lo = std::min(p.n1, p.n2) - radius;
    const int hi = std::max(p.n1, p.n2) + radius;
    double acc = 0.0;
    for (int n = lo; n <= hi; ++n) {
        const double d1 = static_cast<double>(n - p.n1);
        const double d2 = static_cast<double>(n - p.n2);
        const cplx phi1 = std::exp(-d1 * d1 / (2.0 * p.sigma1_tilde * p.sigma1_tilde)) *
                          std::polar(1.0, p.q1a * n);
        const cplx phi2 = std::exp(-d2 * d2 / (2.0 * p.sigma2_tilde * p.sigma2_tilde)) *
                          std::polar(1.0, p.q2a * n);
        acc += std::norm(phi1 + p.alpha * phi2);
    }
    return acc;
}

void require_sigma(double s, const char* what) {
    if (!(s > 0.0) || !std::isfinite(s))
        throw SpecError(std::string(what) + ": width must be positive and finite");
}

} // namespace

double oracle_delta(int n0, const PhasePoint& pt) {
    return pt.m == 2 * n0 ? 1.0 / kTwoPi : 0.0;
}

double oracle_gaussian(const GaussianParams& p, const PhasePoint& pt) {
    require_sigma(p.sigma_tilde, "oracle_gaussian");
    const double s2 = p.sigma_tilde * p.sigma_tilde;
    const double nome = std::exp(-1.0 / s2);
    const double norm_sq = theta3(0.0, nome).value.real();
    const double dm = static_cast<double>(pt.m);
    const cplx z{pt.k - p.q0a, dm / (2.0 * s2)};
    const double dn = dm - 2.0 * p.n0;  // (m-n0)^2 + n0^2 = m^2/2 + dn^2/2
    const cplx v = std::polar(1.0, (pt.k - p.q0a) * dm) *
                   std::exp(-(dm * dm + dn * dn) / (4.0 * s2)) * theta3(z, nome).value /
                   (kTwoPi * norm_sq);
    return real_with_audit(v, "oracle_gaussian");
}

double oracle_two_delta(int n1, int n2, cplx alpha, const PhasePoint& pt) {
    if (n1 == n2) throw SpecError("oracle_two_delta: sites must differ");
    if (!std::isfinite(alpha.real()) || !std::isfinite(alpha.imag()))
        throw SpecError("oracle_two_delta: non-finite alpha");
    const double norm_sq = 1.0 + std::norm(alpha);
    if (pt.m == 2 * n1) return 1.0 / (kTwoPi * norm_sq);
    if (pt.m == 2 * n2) return std::norm(alpha) / (kTwoPi * norm_sq);
    if (pt.m == n1 + n2)
        return 2.0 * std::abs(alpha) *
               std::cos(static_cast<double>(n1 - n2) * pt.k + std::arg(alpha)) /
               (kTwoPi * norm_sq);
    return 0.0;
}

double oracle_eta_two_delta(cplx alpha) {
    if (!std::isfinite(alpha.real()) || !std::isfinite(alpha.imag()))
        throw SpecError("oracle_eta_two_delta: non-finite alpha");
    return 4.0 * std::abs(alpha) / (kPi * (1.0 + std::norm(alpha)));
}

double oracle_two_gaussian_symmetric(int n0, double sigma_tilde, const PhasePoint& pt) {
    require_sigma(sigma_tilde, "oracle_two_gaussian_symmetric");
    const double s2 = sigma_tilde * sigma_tilde;
    const double nome = std::exp(-1.0 / s2);
    const double norm_sq =
        2.0 * (1.0 + std::exp(-static_cast<double>(n0) * n0 / s2)) *
        theta3(0.0, nome).value.real();
    const double dm = static_cast<double>(pt.m);
    const cplx z{pt.k, dm / (2.0 * s2)};
    const cplx v = std::polar(1.0, pt.k * dm) * std::exp(-dm * dm / (2.0 * s2)) *
                   (std::exp(-static_cast<double>(n0) * n0 / s2) *
                        std::cosh(dm * n0 / s2) +
                    std::cos(2.0 * pt.k * n0)) *
                   theta3(z, nome).value / (kPi * norm_sq);
    return real_with_audit(v, "oracle_two_gaussian_symmetric");
}

cplx oracle_two_gaussian_cross(const TwoGaussianParams& p, const PhasePoint& pt) {
    require_sigma(p.sigma1_tilde, "oracle_two_gaussian_cross");
    require_sigma(p.sigma2_tilde, "oracle_two_gaussian_cross");
    return x_cross(p.n1, p.n2, p.sigma1_tilde, p.sigma2_tilde, p.q1a, p.q2a, pt.m,
                   pt.k) /
           two_gaussian_norm_sq(p);
}

double oracle_two_gaussian(const TwoGaussianParams& p, const PhasePoint& pt) {
    require_sigma(p.sigma1_tilde, "oracle_two_gaussian");
    require_sigma(p.sigma2_tilde, "oracle_two_gaussian");
    const double norm_sq = two_gaussian_norm_sq(p);
    const cplx x11 =
        x_cross(p.n1, p.n1, p.sigma1_tilde, p.sigma1_tilde, p.q1a, p.q1a, pt.m, pt.k);
    const cplx x22 =
        x_cross(p.n2, p.n2, p.sigma2_tilde, p.sigma2_tilde, p.q2a, p.q2a, pt.m, pt.k);
    const cplx x12 =
        x_cross(p.n1, p.n2, p.sigma1_tilde, p.sigma2_tilde, p.q1a, p.q2a, pt.m, pt.k);
    const cplx x21 =
        x_cross(p.n2, p.n1, p.sigma2_tilde, p.sigma1_tilde, p.q2a, p.q1a, pt.m, pt.k);
    const cplx v = (x11 + std::norm(p.alpha) * x22 + std::conj(p.alpha) * x12 +
                    p.alpha * x21) /
                   norm_sq;
    return real_with_audit(v, "oracle_two_gaussian");
}

} // namespace lw
