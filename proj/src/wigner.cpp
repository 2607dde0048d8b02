#include "lw/wigner.hpp"

#include "lw/errors.hpp"
#include "lw/parallel.hpp"
#include "lw/summation.hpp"

#include <fftw3.h>

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>

namespace lw {

namespace {

constexpr double kResidueTol = 1e-10;
constexpr double kPi = std::numbers::pi;
constexpr double kTwoPi = 2.0 * std::numbers::pi;

int mod_nonneg(int x, int n) {
    const int r = x % n;
    return r < 0 ? r + n : r;
}

void require_even_nodes(int n_k) {
    if (n_k < 4 || n_k % 2 != 0)
        throw NyquistError("momentum grid needs an even node count >= 4, got " +
                           std::to_string(n_k));
}

} // namespace

double canonical_k(double k) {
    if (!std::isfinite(k)) throw SpecError("phase point: non-finite k");
    double w = k - kTwoPi * std::floor((k + kPi) / kTwoPi);
    if (w >= kPi) w = -kPi;
    return w;
}

WignerGrid::WignerGrid(int m_min, int n_k, double spacing, std::vector<double> values,
                       double max_imag_residue)
    : m_min_(m_min), n_k_(n_k), spacing_(spacing), residue_(max_imag_residue),
      values_(std::move(values)) {
    require_even_nodes(n_k_);
    if (values_.empty() || values_.size() % static_cast<std::size_t>(n_k_) != 0)
        throw SpecError("grid: value count is not a positive multiple of n_k");
    rows_ = static_cast<int>(values_.size() / static_cast<std::size_t>(n_k_));
    if (!(spacing_ > 0.0) || !std::isfinite(spacing_))
        throw SpecError("grid: spacing must be positive and finite");
    if (!(residue_ >= 0.0) || !std::isfinite(residue_))
        throw SpecError("grid: bad imaginary residue record");
    for (double v : values_)
        if (!std::isfinite(v)) throw SpecError("grid: non-finite value");
}

double WignerGrid::k_at(int j) const {
    if (j < 0 || j >= n_k_) throw SpecError("grid: momentum index out of range");
    return -kPi + kTwoPi * static_cast<double>(j) / static_cast<double>(n_k_);
}

ComplexGrid::ComplexGrid(int m_min, int n_k, double spacing, std::vector<cplx> values)
    : m_min_(m_min), n_k_(n_k), spacing_(spacing), values_(std::move(values)) {
    require_even_nodes(n_k_);
    if (values_.empty() || values_.size() % static_cast<std::size_t>(n_k_) != 0)
        throw SpecError("grid: value count is not a positive multiple of n_k");
    rows_ = static_cast<int>(values_.size() / static_cast<std::size_t>(n_k_));
    if (!(spacing_ > 0.0) || !std::isfinite(spacing_))
        throw SpecError("grid: spacing must be positive and finite");
    for (const cplx& v : values_)
        if (!std::isfinite(v.real()) || !std::isfinite(v.imag()))
            throw SpecError("grid: non-finite value");
}

double ComplexGrid::k_at(int j) const {
    if (j < 0 || j >= n_k_) throw SpecError("grid: momentum index out of range");
    return -kPi + kTwoPi * static_cast<double>(j) / static_cast<double>(n_k_);
}

double wigner_point(const DensityOperator& rho, const PhasePoint& pt) {
    const int lo = std::max(rho.n_min(), pt.m - rho.n_max());
    const int hi = std::min(rho.n_max(), pt.m - rho.n_min());
    cplx acc{0.0, 0.0};
    for (int n = lo; n <= hi; ++n)
        acc += rho.element(n, pt.m - n) *
               std::polar(1.0, (static_cast<double>(pt.m) - 2.0 * n) * pt.k);
    acc /= kTwoPi;
    if (std::fabs(acc.imag()) > kResidueTol * (1.0 + std::fabs(acc.real())))
        throw NumericsError("wigner_point: imaginary residue " +
                            std::to_string(acc.imag()));
    return acc.real();
}

cplx operator_wigner_point(const Eigen::MatrixXcd& op, int n_min, const PhasePoint& pt) {
    if (op.rows() == 0 || op.rows() != op.cols())
        throw SpecError("operator transform: matrix must be square and non-empty");
    const int dim = static_cast<int>(op.rows());
    const int n_max = n_min + dim - 1;
    const int lo = std::max(n_min, pt.m - n_max);
    const int hi = std::min(n_max, pt.m - n_min);
    cplx acc{0.0, 0.0};
    for (int n = lo; n <= hi; ++n)
        acc += op(n - n_min, pt.m - n - n_min) *
               std::polar(1.0, (static_cast<double>(pt.m) - 2.0 * n) * pt.k);
    return acc / kTwoPi;
}

WignerGrid wigner_grid(const DensityOperator& rho, int n_k, GridPath path) {
    require_even_nodes(n_k);
    const int w = rho.width();
    const int floor_nk = WignerGrid::nyquist_floor(w);
    if (n_k < floor_nk)
        throw NyquistError("n_k = " + std::to_string(n_k) +
                           " cannot resolve a window of width " + std::to_string(w) +
                           "; need at least " + std::to_string(floor_nk));

    const int m_min = 2 * rho.n_min();
    const int rows = 2 * w + 1;
    std::vector<double> vals(static_cast<std::size_t>(rows) *
                             static_cast<std::size_t>(n_k));
    std::vector<double> residues(static_cast<std::size_t>(rows), 0.0);

    if (path == GridPath::dft) {
        // One shared plan; row transforms run on per-row buffers, which the
        // FFTW new-array interface allows concurrently.
        std::vector<cplx> scratch_in(static_cast<std::size_t>(n_k)),
            scratch_out(static_cast<std::size_t>(n_k));
        fftw_plan plan = fftw_plan_dft_1d(
            n_k, reinterpret_cast<fftw_complex*>(scratch_in.data()),
            reinterpret_cast<fftw_complex*>(scratch_out.data()), FFTW_BACKWARD,
            FFTW_ESTIMATE | FFTW_UNALIGNED);
        if (plan == nullptr) throw NumericsError("wigner_grid: transform planning failed");

        parallel_for(rows, [&](int r) {
            const int m = m_min + r;
            std::vector<cplx> in(static_cast<std::size_t>(n_k), cplx{0.0, 0.0});
            std::vector<cplx> out(static_cast<std::size_t>(n_k));
            const int lo = std::max(rho.n_min(), m - rho.n_max());
            const int hi = std::min(rho.n_max(), m - rho.n_min());
            for (int n = lo; n <= hi; ++n)
                in[static_cast<std::size_t>(mod_nonneg(m - 2 * n, n_k))] +=
                    rho.element(n, m - n);
            fftw_execute_dft(plan, reinterpret_cast<fftw_complex*>(in.data()),
                             reinterpret_cast<fftw_complex*>(out.data()));
            // e^{i t k_j} at k_j = -pi + 2 pi j / n_k contributes (-1)^t, and
            // t = m - 2n shares the parity of m
            const double sign = (m % 2 == 0) ? 1.0 : -1.0;
            double res = 0.0;
            for (int j = 0; j < n_k; ++j) {
                const cplx v = out[static_cast<std::size_t>(j)] * (sign / kTwoPi);
                vals[static_cast<std::size_t>(r) * static_cast<std::size_t>(n_k) +
                     static_cast<std::size_t>(j)] = v.real();
                res = std::max(res, std::fabs(v.imag()));
            }
            residues[static_cast<std::size_t>(r)] = res;
        });
        fftw_destroy_plan(plan);
    } else {
        parallel_for(rows, [&](int r) {
            const int m = m_min + r;
            const int lo = std::max(rho.n_min(), m - rho.n_max());
            const int hi = std::min(rho.n_max(), m - rho.n_min());
            double res = 0.0;
            for (int j = 0; j < n_k; ++j) {
                const double k = -kPi + kTwoPi * j / n_k;
                cplx phase = std::polar(1.0, (static_cast<double>(m) - 2.0 * lo) * k);
                const cplx step = std::polar(1.0, -2.0 * k);
                cplx acc{0.0, 0.0};
                for (int n = lo; n <= hi; ++n) {
                    acc += rho.element(n, m - n) * phase;
                    phase *= step;
                }
                acc /= kTwoPi;
                vals[static_cast<std::size_t>(r) * static_cast<std::size_t>(n_k) +
                     static_cast<std::size_t>(j)] = acc.real();
                res = std::max(res, std::fabs(acc.imag()));
            }
            residues[static_cast<std::size_t>(r)] = res;
        });
    }

    double residue = 0.0;
    for (double r : residues) residue = std::max(residue, r);
    if (residue >= kResidueTol)
        throw NumericsError("wigner_grid: imaginary residue " + std::to_string(residue));
    return WignerGrid(m_min, n_k, rho.spacing(), std::move(vals), residue);
}

SiteAmplitudes apply_phase_point(const PureState& psi, const PhasePoint& pt) {
    const int lo = pt.m - psi.n_max();
    const int hi = pt.m - psi.n_min();
    std::vector<cplx> amps(static_cast<std::size_t>(hi - lo + 1));
    for (int np = lo; np <= hi; ++np)
        amps[static_cast<std::size_t>(np - lo)] =
            std::polar(1.0 / kTwoPi, -(static_cast<double>(pt.m) - 2.0 * np) * pt.k) *
            psi.amp(pt.m - np);
    return {lo, std::move(amps)};
}

double momentum_marginal(const WignerGrid& g, int j) {
    if (j < 0 || j >= g.n_k()) throw SpecError("marginal: momentum index out of range");
    std::vector<double> col(static_cast<std::size_t>(g.rows()));
    for (int r = 0; r < g.rows(); ++r)
        col[static_cast<std::size_t>(r)] = g.value(g.m_min() + r, j);
    return pairwise_sum(col);
}

double position_marginal(const WignerGrid& g, int m) {
    if (m < g.m_min() || m > g.m_max()) return 0.0;
    const std::size_t r = static_cast<std::size_t>(m - g.m_min());
    std::span<const double> row(g.values().data() + r * static_cast<std::size_t>(g.n_k()),
                                static_cast<std::size_t>(g.n_k()));
    return pairwise_sum(row) * (kTwoPi / g.n_k());
}

double overlap(const WignerGrid& g1, const WignerGrid& g2) {
    if (g1.n_k() != g2.n_k())
        throw SpecError("overlap: momentum axes differ (n_k " + std::to_string(g1.n_k()) +
                        " vs " + std::to_string(g2.n_k()) + ")");
    if (g1.spacing() != g2.spacing()) throw SpecError("overlap: spacing mismatch");
    const int lo = std::max(g1.m_min(), g2.m_min());
    const int hi = std::min(g1.m_max(), g2.m_max());
    if (lo > hi) return 0.0;
    std::vector<double> dots;
    dots.reserve(static_cast<std::size_t>(hi - lo + 1));
    std::vector<double> prod(static_cast<std::size_t>(g1.n_k()));
    for (int m = lo; m <= hi; ++m) {
        for (int j = 0; j < g1.n_k(); ++j)
            prod[static_cast<std::size_t>(j)] = g1.value(m, j) * g2.value(m, j);
        dots.push_back(pairwise_sum(prod));
    }
    return kTwoPi * (kTwoPi / g1.n_k()) * pairwise_sum(dots);
}

DensityOperator reconstruct_density(const WignerGrid& g) {
    if (g.m_min() % 2 != 0 || g.m_max() % 2 != 0)
        throw SpecError("reconstruct: grid rows do not span a state window "
                        "(end rows must be even)");
    const int n_min = g.m_min() / 2;
    const int dim = (g.m_max() - g.m_min()) / 2 + 1;
    Eigen::MatrixXcd rho(dim, dim);
    std::vector<cplx> terms(static_cast<std::size_t>(g.n_k()));
    for (int i1 = 0; i1 < dim; ++i1) {
        for (int i2 = i1; i2 < dim; ++i2) {
            const int m = 2 * n_min + i1 + i2;
            for (int j = 0; j < g.n_k(); ++j)
                terms[static_cast<std::size_t>(j)] =
                    g.value(m, j) *
                    std::polar(1.0, static_cast<double>(i1 - i2) * g.k_at(j));
            const cplx v = pairwise_sum(terms) * (kTwoPi / g.n_k());
            rho(i1, i2) = v;
            rho(i2, i1) = std::conj(v);
        }
    }
    return DensityOperator(n_min, std::move(rho), g.spacing());
}

ComplexGrid wigner_of_product(const WignerGrid& g1, const WignerGrid& g2) {
    if (g1.n_k() != g2.n_k())
        throw SpecError("product: momentum axes differ");
    if (g1.spacing() != g2.spacing()) throw SpecError("product: spacing mismatch");
    if (g1.m_min() % 2 != 0 || g1.m_max() % 2 != 0 || g2.m_min() % 2 != 0 ||
        g2.m_max() % 2 != 0)
        throw SpecError("product: grids must span state windows (even end rows)");

    const int n_k = g1.n_k();
    const int w1 = (g1.m_max() - g1.m_min()) / 2;
    const int w2 = (g2.m_max() - g2.m_min()) / 2;
    const int out_lo = (g1.m_min() + g2.m_min()) / 2;
    const int out_hi = (g1.m_max() + g2.m_max()) / 2;
    const int rows_out = out_hi - out_lo + 1;

    // The j-sums project single Fourier components out of each row; refuse
    // node counts where an aliased component could be picked up instead.
    const int t1_max = std::max(out_hi - g2.m_min(), g2.m_max() - out_lo);
    const int t2_max = std::max(out_hi - g1.m_min(), g1.m_max() - out_lo);
    const int need = std::max({t1_max + w1 + 1, t2_max + w2 + 1,
                               WignerGrid::nyquist_floor(w1),
                               WignerGrid::nyquist_floor(w2)});
    if (n_k < need)
        throw NyquistError("product: n_k = " + std::to_string(n_k) +
                           " would alias; need at least " + std::to_string(need));

    const long long cost =
        static_cast<long long>(g1.rows() + g2.rows()) * (2 * std::max(t1_max, t2_max) + 1) *
            n_k +
        static_cast<long long>(rows_out) * (2 * (w1 + w2) + 1) * n_k;
    if (cost > 200'000'000LL) throw SpecError("product: window too large");

    const auto project = [n_k](const WignerGrid& g, int t_abs) {
        // P[r][t + t_abs] = sum_j W(row r, k_j) e^{i t k_j}
        std::vector<std::vector<cplx>> p(
            static_cast<std::size_t>(g.rows()),
            std::vector<cplx>(static_cast<std::size_t>(2 * t_abs + 1)));
        std::vector<cplx> terms(static_cast<std::size_t>(g.n_k()));
        for (int r = 0; r < g.rows(); ++r)
            for (int t = -t_abs; t <= t_abs; ++t) {
                for (int j = 0; j < g.n_k(); ++j)
                    terms[static_cast<std::size_t>(j)] =
                        g.value(g.m_min() + r, j) *
                        std::polar(1.0, static_cast<double>(t) * g.k_at(j));
                p[static_cast<std::size_t>(r)][static_cast<std::size_t>(t + t_abs)] =
                    pairwise_sum(terms);
            }
        return p;
    };
    const auto p1 = project(g1, t1_max);
    const auto p2 = project(g2, t2_max);

    const int d_lo = g1.m_min() - g2.m_max();
    const int d_hi = g1.m_max() - g2.m_min();
    std::vector<cplx> vals(static_cast<std::size_t>(rows_out) *
                           static_cast<std::size_t>(n_k));
    const double norm = kTwoPi / (static_cast<double>(n_k) * n_k);

    for (int m = out_lo; m <= out_hi; ++m) {
        std::vector<cplx> coef(static_cast<std::size_t>(d_hi - d_lo + 1), cplx{0.0, 0.0});
        for (int r1 = 0; r1 < g1.rows(); ++r1) {
            const int m1 = g1.m_min() + r1;
            for (int r2 = 0; r2 < g2.rows(); ++r2) {
                const int m2 = g2.m_min() + r2;
                if ((m + m1 - m2) % 2 != 0) continue;
                coef[static_cast<std::size_t>(m1 - m2 - d_lo)] +=
                    p1[static_cast<std::size_t>(r1)]
                      [static_cast<std::size_t>(m - m2 + t1_max)] *
                    p2[static_cast<std::size_t>(r2)]
                      [static_cast<std::size_t>(m1 - m + t2_max)];
            }
        }
        for (int j = 0; j < n_k; ++j) {
            const double k = g1.k_at(j);
            cplx acc{0.0, 0.0};
            for (int d = d_lo; d <= d_hi; ++d)
                acc += coef[static_cast<std::size_t>(d - d_lo)] *
                       std::polar(1.0, -static_cast<double>(d) * k);
            vals[static_cast<std::size_t>(m - out_lo) * static_cast<std::size_t>(n_k) +
                 static_cast<std::size_t>(j)] = acc * norm;
        }
    }
    return ComplexGrid(out_lo, n_k, g1.spacing(), std::move(vals));
}

double continuum_gaussian_reference(double x, double p, double x0, double sigma,
                                    double q0) {
    if (!(sigma > 0.0) || !std::isfinite(sigma))
        throw SpecError("continuum reference: sigma must be positive and finite");
    const double dx = x - x0;
    const double dp = p - q0;
    return std::exp(-dx * dx / (sigma * sigma) - sigma * sigma * dp * dp) / kPi;
}

double wigner_direct(const DensityOperator& rho, const PhasePoint& pt) {
    const int lo = std::max(rho.n_min(), 2 * pt.m - rho.n_max());
    const int hi = std::min(rho.n_max(), 2 * pt.m - rho.n_min());
    cplx acc{0.0, 0.0};
    for (int n = lo; n <= hi; ++n)
        acc += rho.element(n, 2 * pt.m - n) *
               std::polar(1.0, -2.0 * (static_cast<double>(n) - pt.m) * pt.k);
    acc /= kTwoPi;
    if (std::fabs(acc.imag()) > kResidueTol * (1.0 + std::fabs(acc.real())))
        throw NumericsError("wigner_direct: imaginary residue " +
                            std::to_string(acc.imag()));
    return acc.real();
}

} // namespace lw
