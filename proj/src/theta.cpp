#include "lw/theta.hpp"

#include "lw/errors.hpp"

#include <cmath>
#include <limits>
#include <numbers>
#include <string>

namespace lw {

namespace {

constexpr int kMaxTerms = 1'000'000;
// exp args beyond this overflow double range
constexpr double kLogHuge = 700.0;
// past this |Im|, cosh and sinh coincide with exp(|Im|)/2 to full precision,
// and the damped term must be assembled in log space to dodge the
// intermediate overflow of cosh alone
constexpr double kCoshSplit = 690.0;

// cos(x + i y) with the real part built from |x|, |y| and the imaginary part
// from an odd*odd product, so negating both x and y reproduces the exact
// same floating-point value.
std::complex<double> even_cos(double x, double y) {
    const double re = std::cos(std::fabs(x)) * std::cosh(std::fabs(y));
    const double sx = std::copysign(1.0, x) * std::sin(std::fabs(x));
    const double sy = std::copysign(1.0, y) * std::sinh(std::fabs(y));
    return {re, -sx * sy};
}

// q^(n^2) cos(n (x + i y)) for |n y| beyond kCoshSplit, same parity pairing
std::complex<double> damped_cos_tail(double lam, double nn, double x, double y) {
    const double mag = std::exp(-lam * nn * nn + std::fabs(y) - std::numbers::ln2);
    const double re = std::cos(std::fabs(x)) * mag;
    const double sx = std::copysign(1.0, x) * std::sin(std::fabs(x));
    return {re, -sx * std::copysign(1.0, y) * mag};
}

} // namespace

ThetaResult theta3(std::complex<double> z, double q, double tol) {
    if (!(q >= 0.0 && q < 1.0))
        throw SpecError("theta3: nome q must lie in [0, 1), got " + std::to_string(q));
    if (!std::isfinite(z.real()) || !std::isfinite(z.imag()))
        throw SpecError("theta3: non-finite argument");
    if (!(tol > 0.0))
        throw SpecError("theta3: tolerance must be positive");

    if (q == 0.0) return {{1.0, 0.0}, 1, 0.0};

    const double lam = -std::log(q);       // q = exp(-lam), lam > 0
    const double mu = std::fabs(z.imag()); // term growth rate exp(2 n mu)

    // peak term magnitude ~ exp(mu^2 / lam); refuse what double cannot hold
    if (mu > 0.0 && mu * mu / lam > kLogHuge)
        throw NumericsError("theta3: result magnitude exceeds double range");

    std::complex<double> acc{1.0, 0.0};
    const double x2 = 2.0 * z.real();
    const double y2 = 2.0 * z.imag();

    for (int n = 1; n <= kMaxTerms; ++n) {
        const double nn = static_cast<double>(n);
        if (std::fabs(y2) * nn > kCoshSplit) {
            acc += 2.0 * damped_cos_tail(lam, nn, x2 * nn, y2 * nn);
        } else {
            const double qn = std::exp(-lam * nn * nn);
            acc += 2.0 * qn * even_cos(x2 * nn, y2 * nn);
        }

        // |dropped terms| <= sum_{j>n} 2 q^(j^2) e^(2 j mu), geometric once
        // the ratio r = q^(2j+1) e^(2 mu) falls below 1
        const double r = std::exp(-lam * (2.0 * nn + 3.0) + 2.0 * mu);
        if (r < 1.0) {
            const double head =
                2.0 * std::exp(-lam * (nn + 1.0) * (nn + 1.0) + 2.0 * (nn + 1.0) * mu);
            const double bound = head / (1.0 - r);
            const double scale = std::max(1.0, std::abs(acc));
            if (bound <= tol * scale) return {acc, n + 1, bound};
        }
    }
    throw NumericsError("theta3: series did not converge within " +
                        std::to_string(kMaxTerms) + " terms (q too close to 1)");
}

} // namespace lw
