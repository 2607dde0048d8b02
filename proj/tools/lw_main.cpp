#include "lw/errors.hpp"
#include "lw/negativity.hpp"
#include "lw/oracles.hpp"
#include "lw/spec_io.hpp"
#include "lw/state.hpp"
#include "lw/summation.hpp"
#include "lw/wigner.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <cmath>
#include <cstdio>
#include <iostream>
#include <numbers>
#include <string>
#include <vector>

namespace {

using nlohmann::ordered_json;

constexpr double kTwoPi = 2.0 * std::numbers::pi;

struct CommonOpts {
    std::string spec_path;
    std::string out;
    lw::RunConfig cfg;
};

void add_common(CLI::App* cmd, CommonOpts& o, bool spec_required) {
    auto* s = cmd->add_option("--spec", o.spec_path, "state description file (JSON)");
    if (spec_required) s->required();
    cmd->add_option("--nk", o.cfg.n_k, "momentum nodes, even")->capture_default_str();
    cmd->add_option("--format", o.cfg.output_format, "output format")
        ->check(CLI::IsMember({"csv", "json"}))
        ->capture_default_str();
    cmd->add_option("--out", o.out, "output path (default: stdout)");
    cmd->add_option("--tol", o.cfg.tol, "check tolerance")->capture_default_str();
    cmd->add_option("--tail-eps", o.cfg.tail_eps, "gaussian truncation threshold")
        ->capture_default_str();
}

void emit(const std::string& out_path, const std::string& content) {
    if (out_path.empty()) {
        std::fwrite(content.data(), 1, content.size(), stdout);
        return;
    }
    lw::write_file_atomic(out_path, content);
}

std::string dump(const ordered_json& j) { return j.dump(2) + "\n"; }

lw::BuiltState build_from_file(const CommonOpts& o) {
    const lw::StateSpec spec = lw::load_state_spec(o.spec_path);
    return lw::build_state(spec, {}, o.cfg.tail_eps);
}

int cmd_wigner(const CommonOpts& o) {
    const lw::BuiltState st = build_from_file(o);
    const lw::WignerGrid g = lw::wigner_grid(st.rho, o.cfg.n_k);
    emit(o.out, o.cfg.output_format == "json" ? dump(lw::grid_to_json(g, o.cfg))
                                              : lw::grid_to_csv(g));
    return 0;
}

int cmd_eta(const CommonOpts& o) {
    const lw::BuiltState st = build_from_file(o);
    const lw::WignerGrid g = lw::wigner_grid(st.rho, o.cfg.n_k);
    const lw::NegativityReport rep = lw::eta(g);
    emit(o.out, o.cfg.output_format == "json" ? dump(lw::report_to_json(rep, o.cfg))
                                              : lw::report_to_csv(rep));
    return 0;
}

int cmd_marginals(const CommonOpts& o) {
    const lw::BuiltState st = build_from_file(o);
    const lw::WignerGrid g = lw::wigner_grid(st.rho, o.cfg.n_k);
    std::vector<double> pk(static_cast<std::size_t>(g.n_k()));
    for (int j = 0; j < g.n_k(); ++j)
        pk[static_cast<std::size_t>(j)] = lw::momentum_marginal(g, j);
    std::vector<double> pm(static_cast<std::size_t>(g.rows()));
    for (int r = 0; r < g.rows(); ++r)
        pm[static_cast<std::size_t>(r)] = lw::position_marginal(g, g.m_min() + r);

    if (o.cfg.output_format == "json") {
        ordered_json j;
        j["config"] = lw::config_to_json(o.cfg);
        ordered_json ks = ordered_json::array(), pkj = ordered_json::array();
        for (int jx = 0; jx < g.n_k(); ++jx) {
            ks.push_back(g.k_at(jx));
            pkj.push_back(pk[static_cast<std::size_t>(jx)]);
        }
        ordered_json msj = ordered_json::array(), pmj = ordered_json::array();
        for (int r = 0; r < g.rows(); ++r) {
            msj.push_back(g.m_min() + r);
            pmj.push_back(pm[static_cast<std::size_t>(r)]);
        }
        j["momentum"] = {{"k", std::move(ks)}, {"p", std::move(pkj)}};
        j["position"] = {{"m", std::move(msj)}, {"p", std::move(pmj)}};
        j["sums"] = {{"momentum", (kTwoPi / g.n_k()) * lw::pairwise_sum(pk)},
                     {"position", lw::pairwise_sum(pm)}};
        emit(o.out, dump(j));
    } else {
        std::string out = "kind,x,value\n";
        for (int jx = 0; jx < g.n_k(); ++jx)
            out += "momentum," + lw::format_double(g.k_at(jx)) + "," +
                   lw::format_double(pk[static_cast<std::size_t>(jx)]) + "\n";
        for (int r = 0; r < g.rows(); ++r)
            out += "position," + std::to_string(g.m_min() + r) + "," +
                   lw::format_double(pm[static_cast<std::size_t>(r)]) + "\n";
        emit(o.out, out);
    }
    return 0;
}

int cmd_reconstruct(const CommonOpts& o) {
    const lw::BuiltState st = build_from_file(o);
    const lw::WignerGrid g = lw::wigner_grid(st.rho, o.cfg.n_k);
    const lw::DensityOperator rec = lw::reconstruct_density(g);
    const double dev =
        (rec.matrix() - st.rho.matrix()).cwiseAbs().maxCoeff();

    if (o.cfg.output_format == "json") {
        ordered_json j;
        j["config"] = lw::config_to_json(o.cfg);
        j["n_min"] = rec.n_min();
        j["spacing"] = rec.spacing();
        j["max_deviation"] = dev;
        ordered_json re = ordered_json::array(), im = ordered_json::array();
        for (Eigen::Index i = 0; i < rec.matrix().rows(); ++i) {
            ordered_json rr = ordered_json::array(), ri = ordered_json::array();
            for (Eigen::Index jx = 0; jx < rec.matrix().cols(); ++jx) {
                rr.push_back(rec.matrix()(i, jx).real());
                ri.push_back(rec.matrix()(i, jx).imag());
            }
            re.push_back(std::move(rr));
            im.push_back(std::move(ri));
        }
        j["re"] = std::move(re);
        j["im"] = std::move(im);
        emit(o.out, dump(j));
    } else {
        std::string out = "n1,n2,re,im\n";
        for (Eigen::Index i = 0; i < rec.matrix().rows(); ++i)
            for (Eigen::Index jx = 0; jx < rec.matrix().cols(); ++jx)
                out += std::to_string(rec.n_min() + static_cast<int>(i)) + "," +
                       std::to_string(rec.n_min() + static_cast<int>(jx)) + "," +
                       lw::format_double(rec.matrix()(i, jx).real()) + "," +
                       lw::format_double(rec.matrix()(i, jx).imag()) + "\n";
        emit(o.out, out);
    }
    return 0;
}

struct CheckRow {
    std::string name;
    double max_error;
    bool pass;
};

double grid_normalization_error(const lw::WignerGrid& g) {
    std::vector<double> sums(static_cast<std::size_t>(g.rows()));
    for (int r = 0; r < g.rows(); ++r)
        sums[static_cast<std::size_t>(r)] = lw::position_marginal(g, g.m_min() + r);
    return std::fabs(lw::pairwise_sum(sums) - 1.0);
}

double grid_phase_relation_error(const lw::WignerGrid& g) {
    double worst = 0.0;
    for (int r = 0; r < g.rows(); ++r) {
        const int m = g.m_min() + r;
        const double sgn = (m % 2 == 0) ? 1.0 : -1.0;
        for (int j = 0; j < g.n_k(); ++j) {
            const int jp = (j + g.n_k() / 2) % g.n_k();
            worst = std::max(worst,
                             std::fabs(g.value(m, jp) - sgn * g.value(m, j)));
        }
    }
    return worst;
}

int emit_checks(const CommonOpts& o, const std::vector<CheckRow>& rows) {
    bool all = true;
    for (const auto& r : rows) all = all && r.pass;
    if (o.cfg.output_format == "json") {
        ordered_json j;
        j["config"] = lw::config_to_json(o.cfg);
        ordered_json list = ordered_json::array();
        for (const auto& r : rows)
            list.push_back({{"name", r.name},
                            {"max_error", r.max_error},
                            {"tol", o.cfg.tol},
                            {"pass", r.pass}});
        j["checks"] = std::move(list);
        j["pass"] = all;
        emit(o.out, dump(j));
    } else {
        std::string out = "name,max_error,tol,pass\n";
        for (const auto& r : rows)
            out += r.name + "," + lw::format_double(r.max_error) + "," +
                   lw::format_double(o.cfg.tol) + "," + (r.pass ? "true" : "false") +
                   "\n";
        emit(o.out, out);
    }
    return all ? 0 : 1;
}

int cmd_check(const CommonOpts& o, const std::string& grid_path) {
    std::vector<CheckRow> rows;
    const auto push = [&](const std::string& name, double err) {
        rows.push_back({name, err, err <= o.cfg.tol});
    };

    if (!grid_path.empty()) {
        const lw::WignerGrid g = lw::load_grid(grid_path);
        push("normalization", grid_normalization_error(g));
        push("phase_relation", grid_phase_relation_error(g));
        return emit_checks(o, rows);
    }

    const lw::BuiltState st = build_from_file(o);
    const lw::WignerGrid g = lw::wigner_grid(st.rho, o.cfg.n_k);
    push("normalization", grid_normalization_error(g));
    push("phase_relation", grid_phase_relation_error(g));

    // momentum density from the density matrix directly
    double worst_k = 0.0;
    const auto& mat = st.rho.matrix();
    for (int j = 0; j < g.n_k(); ++j) {
        const double k = g.k_at(j);
        lw::cplx ref{0.0, 0.0};
        for (Eigen::Index a = 0; a < mat.rows(); ++a)
            for (Eigen::Index b = 0; b < mat.cols(); ++b)
                ref += mat(a, b) *
                       std::polar(1.0, -k * static_cast<double>(a - b));
        worst_k = std::max(worst_k,
                           std::fabs(lw::momentum_marginal(g, j) - ref.real() / kTwoPi));
    }
    push("momentum_marginal", worst_k);

    double worst_m = 0.0;
    for (int r = 0; r < g.rows(); ++r) {
        const int m = g.m_min() + r;
        const double ref =
            (m % 2 == 0) ? st.rho.element(m / 2, m / 2).real() : 0.0;
        worst_m = std::max(worst_m, std::fabs(lw::position_marginal(g, m) - ref));
    }
    push("position_marginal", worst_m);

    const double purity = (mat * mat).trace().real();
    push("purity_overlap", std::fabs(lw::overlap(g, g) - purity));

    try {
        const lw::DensityOperator rec = lw::reconstruct_density(g);
        push("reconstruction",
             (rec.matrix() - mat).cwiseAbs().maxCoeff());
    } catch (const lw::SpecError& e) {
        rows.push_back({std::string("reconstruction (") + e.what() + ")", 1.0, false});
    }
    return emit_checks(o, rows);
}

int cmd_sweep(const CommonOpts& o, const std::string& ax_n0, const std::string& ax_q0a,
              const std::string& ax_sigma) {
    const lw::StateSpec spec = lw::load_state_spec(o.spec_path);
    struct Axis {
        std::string name;
        std::vector<double> values;
    };
    std::vector<Axis> axes;
    if (!ax_n0.empty()) axes.push_back({"n0", lw::parse_axis(ax_n0)});
    if (!ax_q0a.empty()) axes.push_back({"q0a", lw::parse_axis(ax_q0a)});
    if (!ax_sigma.empty()) axes.push_back({"sigma_tilde", lw::parse_axis(ax_sigma)});
    if (axes.empty())
        throw lw::SpecError("sweep: give at least one of --sweep-n0, --sweep-q0a, "
                            "--sweep-sigma");

    std::vector<std::vector<double>> table;
    std::vector<std::size_t> idx(axes.size(), 0);
    for (;;) {
        lw::Bindings b;
        std::vector<double> row;
        for (std::size_t a = 0; a < axes.size(); ++a) {
            b[axes[a].name] = axes[a].values[idx[a]];
            row.push_back(axes[a].values[idx[a]]);
        }
        const lw::BuiltState st = lw::build_state(spec, b, o.cfg.tail_eps);
        const lw::WignerGrid g = lw::wigner_grid(st.rho, o.cfg.n_k);
        const lw::NegativityReport rep = lw::eta(g);
        row.push_back(rep.eta);
        row.push_back(rep.raw_negativity);
        row.push_back(rep.quad_error_estimate);
        table.push_back(std::move(row));

        // odometer over the axes, last axis fastest
        std::size_t a = axes.size();
        while (a > 0) {
            --a;
            if (++idx[a] < axes[a].values.size()) break;
            idx[a] = 0;
            if (a == 0) goto done;
        }
    }
done:;
    std::vector<std::string> cols;
    for (const auto& ax : axes) cols.push_back(ax.name);
    cols.insert(cols.end(), {"eta", "raw_negativity", "quad_error_estimate"});

    if (o.cfg.output_format == "json") {
        ordered_json j;
        j["config"] = lw::config_to_json(o.cfg);
        j["columns"] = cols;
        ordered_json rows = ordered_json::array();
        for (const auto& r : table) {
            ordered_json jr = ordered_json::array();
            for (double v : r) jr.push_back(v);
            rows.push_back(std::move(jr));
        }
        j["rows"] = std::move(rows);
        emit(o.out, dump(j));
    } else {
        std::string out;
        for (std::size_t c = 0; c < cols.size(); ++c)
            out += (c ? "," : "") + cols[c];
        out += "\n";
        for (const auto& r : table) {
            for (std::size_t c = 0; c < r.size(); ++c)
                out += (c ? "," : "") + lw::format_double(r[c]);
            out += "\n";
        }
        emit(o.out, out);
    }
    return 0;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Wigner quasi-probability toolkit for a particle on a 1D lattice"};
    app.require_subcommand(1);

    CommonOpts wigner_o, eta_o, marg_o, rec_o, check_o, sweep_o;
    std::string grid_path, ax_n0, ax_q0a, ax_sigma;

    CLI::App* c_wigner =
        app.add_subcommand("wigner", "evaluate the Wigner grid of a state");
    add_common(c_wigner, wigner_o, true);
    CLI::App* c_eta =
        app.add_subcommand("eta", "sign-filtered negativity report for a state");
    add_common(c_eta, eta_o, true);
    CLI::App* c_marg =
        app.add_subcommand("marginals", "momentum and position marginals");
    add_common(c_marg, marg_o, true);
    CLI::App* c_rec =
        app.add_subcommand("reconstruct", "invert the grid back to a density matrix");
    add_common(c_rec, rec_o, true);
    CLI::App* c_check =
        app.add_subcommand("check", "identity checks for a state or a stored grid");
    add_common(c_check, check_o, false);
    c_check->add_option("--grid", grid_path, "stored grid file (.csv or .json)");
    CLI::App* c_sweep =
        app.add_subcommand("sweep", "negativity over a parameter grid");
    add_common(c_sweep, sweep_o, true);
    c_sweep->add_option("--sweep-n0", ax_n0, "axis START:STOP:COUNT for n0");
    c_sweep->add_option("--sweep-q0a", ax_q0a, "axis START:STOP:COUNT for q0a");
    c_sweep->add_option("--sweep-sigma", ax_sigma, "axis START:STOP:COUNT for sigma_tilde");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForAllHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 2;
    }

    try {
        if (c_wigner->parsed()) return cmd_wigner(wigner_o);
        if (c_eta->parsed()) return cmd_eta(eta_o);
        if (c_marg->parsed()) return cmd_marginals(marg_o);
        if (c_rec->parsed()) return cmd_reconstruct(rec_o);
        if (c_check->parsed()) {
            if (grid_path.empty() == check_o.spec_path.empty())
                throw lw::SpecError("check: give exactly one of --spec or --grid");
            return cmd_check(check_o, grid_path);
        }
        if (c_sweep->parsed()) return cmd_sweep(sweep_o, ax_n0, ax_q0a, ax_sigma);
    } catch (const lw::SpecError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const lw::NyquistError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 3;
    } catch (const lw::IoError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 4;
    } catch (const lw::NumericsError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "internal error: " << e.what() << "\n";
        return 4;
    }
    return 0;
}
