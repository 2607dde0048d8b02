#pragma once

#include "lw/state.hpp"

#include <random>
#include <vector>

namespace lwtest {

inline lw::PureState random_pure(std::mt19937& rng, int n_min, int sites,
                                 double spacing = 1.0) {
    std::uniform_real_distribution<double> u(-1.0, 1.0);
    std::vector<lw::cplx> a(static_cast<std::size_t>(sites));
    double norm_sq = 0.0;
    do {
        norm_sq = 0.0;
        for (auto& x : a) {
            x = {u(rng), u(rng)};
            norm_sq += std::norm(x);
        }
    } while (norm_sq < 1e-3);
    const double inv = 1.0 / std::sqrt(norm_sq);
    for (auto& x : a) x *= inv;
    return lw::PureState(n_min, std::move(a), spacing);
}

inline lw::DensityOperator random_mixed(std::mt19937& rng, int n_min, int sites,
                                        int rank = 3, double spacing = 1.0) {
    std::uniform_real_distribution<double> u(-1.0, 1.0);
    Eigen::MatrixXcd g(sites, rank);
    for (Eigen::Index r = 0; r < g.rows(); ++r)
        for (Eigen::Index c = 0; c < g.cols(); ++c) g(r, c) = lw::cplx{u(rng), u(rng)};
    Eigen::MatrixXcd rho = g * g.adjoint();
    rho /= rho.trace().real();
    rho = ((rho + rho.adjoint()) * 0.5).eval();
    return lw::DensityOperator(n_min, std::move(rho), spacing);
}

} // namespace lwtest
