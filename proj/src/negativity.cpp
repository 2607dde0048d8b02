#include "lw/negativity.hpp"

#include "lw/errors.hpp"
#include "lw/summation.hpp"

#include <cmath>
#include <numbers>
#include <vector>

namespace lw {

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

int dead_zone_sign(double v, double eps) {
    if (std::fabs(v) <= eps) return 0;
    return v > 0.0 ? 1 : -1;
}

double quadrature(const WignerGrid& g, int stride) {
    // sum over every stride-th momentum node of the negative-part integrand
    const int n_sub = g.n_k() / stride;
    std::vector<double> row(static_cast<std::size_t>(n_sub));
    std::vector<double> per_row(static_cast<std::size_t>(g.rows()));
    for (int r = 0; r < g.rows(); ++r) {
        for (int s = 0; s < n_sub; ++s) {
            const double v = g.value(g.m_min() + r, s * stride);
            row[static_cast<std::size_t>(s)] = std::fabs(v) - v;
        }
        per_row[static_cast<std::size_t>(r)] = pairwise_sum(row);
    }
    return (kTwoPi / n_sub) * pairwise_sum(per_row);
}

} // namespace

WignerGrid sign_filter(const WignerGrid& g, double eps_rel) {
    if (!(eps_rel >= 0.0) || !std::isfinite(eps_rel))
        throw SpecError("sign_filter: bad dead-zone scale");

    std::vector<double> eps(static_cast<std::size_t>(g.rows()), 0.0);
    for (int r = 0; r < g.rows(); ++r) {
        double peak = 0.0;
        for (int j = 0; j < g.n_k(); ++j)
            peak = std::max(peak, std::fabs(g.value(g.m_min() + r, j)));
        eps[static_cast<std::size_t>(r)] = eps_rel * peak;
    }
    const auto vote_sign = [&](int m, int j) -> int {
        const int r = m - g.m_min();
        if (r < 0 || r >= g.rows()) return 0;
        return dead_zone_sign(g.value(m, j), eps[static_cast<std::size_t>(r)]);
    };

    std::vector<double> out(g.values());
    for (int r = 0; r < g.rows(); ++r) {
        const int m = g.m_min() + r;
        if (m % 2 == 0) continue;
        for (int j = 0; j < g.n_k(); ++j) {
            const int vote = 2 * vote_sign(m - 1, j) + vote_sign(m, j) +
                             2 * vote_sign(m + 1, j);
            if (vote == 0) continue;  // tie keeps the original sample
            const double mag = std::fabs(g.value(m, j));
            out[static_cast<std::size_t>(r) * static_cast<std::size_t>(g.n_k()) +
                static_cast<std::size_t>(j)] = vote > 0 ? mag : -mag;
        }
    }
    return WignerGrid(g.m_min(), g.n_k(), g.spacing(), std::move(out),
                      g.max_imag_residue());
}

NegativityReport eta(const WignerGrid& g) {
    const WignerGrid f = sign_filter(g);
    const double full = quadrature(f, 1);
    const double half = quadrature(f, 2);

    double min_v = g.value(g.m_min(), 0);
    int min_m = g.m_min(), min_j = 0;
    for (int r = 0; r < g.rows(); ++r)
        for (int j = 0; j < g.n_k(); ++j) {
            const double v = g.value(g.m_min() + r, j);
            if (v < min_v) {
                min_v = v;
                min_m = g.m_min() + r;
                min_j = j;
            }
        }
    return {full, raw_negativity(g), std::fabs(full - half), min_v,
            PhasePoint(min_m, g.k_at(min_j))};
}

double raw_negativity(const WignerGrid& g) { return quadrature(g, 1); }

Classification classify_nonnegative(const PureState& psi, int n_k, double tol) {
    if (!(tol >= 0.0) || !std::isfinite(tol))
        throw SpecError("classify: tolerance must be non-negative");
    const WignerGrid g = wigner_grid(to_density(psi), n_k);
    const NegativityReport rep = eta(g);
    return {rep.min_value >= -tol, rep.min_value, rep.min_point};
}

} // namespace lw
