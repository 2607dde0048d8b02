#include "lw/spec_io.hpp"

#include "lw/errors.hpp"

#include <charconv>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <numbers>
#include <sstream>
#include <system_error>

namespace lw {

namespace {

using nlohmann::json;
using nlohmann::ordered_json;

constexpr double kPi = std::numbers::pi;
constexpr double kTwoPi = 2.0 * std::numbers::pi;

[[noreturn]] void bad_spec(const std::string& msg) { throw SpecError("spec: " + msg); }

void require_keys(const json& obj, std::initializer_list<const char*> allowed,
                  const char* where) {
    for (const auto& [key, _] : obj.items()) {
        bool ok = false;
        for (const char* a : allowed)
            if (key == a) ok = true;
        if (!ok) bad_spec(std::string("unknown key \"") + key + "\" in " + where);
    }
}

double number_field(const json& v, const char* what) {
    if (!v.is_number()) bad_spec(std::string(what) + " must be a number");
    const double x = v.get<double>();
    if (!std::isfinite(x)) bad_spec(std::string(what) + " must be finite");
    return x;
}

Field field_from(const json& v, const char* what) {
    if (v.is_number()) return number_field(v, what);
    if (v.is_string()) {
        std::string s = v.get<std::string>();
        bool neg = false;
        if (!s.empty() && s[0] == '-') {
            neg = true;
            s.erase(0, 1);
        }
        if (s != "n0" && s != "q0a" && s != "sigma_tilde")
            bad_spec(std::string(what) + ": \"" + v.get<std::string>() +
                     "\" is not a sweep variable (use n0, q0a or sigma_tilde, "
                     "optionally negated)");
        return VarRef{s, neg};
    }
    bad_spec(std::string(what) + " must be a number or sweep-variable name");
}

cplx coeff_from(const json& v) {
    if (v.is_number()) return {v.get<double>(), 0.0};
    if (v.is_array() && v.size() == 2 && v[0].is_number() && v[1].is_number())
        return {v[0].get<double>(), v[1].get<double>()};
    bad_spec("coeff must be a number or a [re, im] pair");
}

double resolve(const Field& f, const Bindings& b, const char* what) {
    if (std::holds_alternative<double>(f)) return std::get<double>(f);
    const VarRef& ref = std::get<VarRef>(f);
    const auto it = b.find(ref.name);
    if (it == b.end())
        bad_spec(std::string("unresolved sweep variable \"") + ref.name + "\" in " +
                 what + " (only the sweep command binds variables)");
    return ref.negate ? -it->second : it->second;
}

int resolve_int(const Field& f, const Bindings& b, const char* what) {
    const double v = resolve(f, b, what);
    const double r = std::round(v);
    if (std::fabs(v - r) > 1e-9)
        bad_spec(std::string(what) + " must be an integer, got " + std::to_string(v));
    return static_cast<int>(r);
}

} // namespace

bool StateSpec::has_variables() const {
    for (const auto& t : terms)
        if (std::holds_alternative<VarRef>(t.n0) ||
            std::holds_alternative<VarRef>(t.sigma_tilde) ||
            std::holds_alternative<VarRef>(t.q0a))
            return true;
    return false;
}

StateSpec parse_state_spec(const std::string& text) {
    json root;
    try {
        root = json::parse(text);
    } catch (const json::exception& e) {
        bad_spec(std::string("invalid JSON: ") + e.what());
    }
    if (!root.is_object()) bad_spec("top level must be an object");
    require_keys(root, {"spacing", "terms", "density"}, "the state description");

    StateSpec spec;
    if (root.contains("spacing")) {
        spec.spacing = number_field(root["spacing"], "spacing");
        if (!(spec.spacing > 0.0)) bad_spec("spacing must be positive");
    }

    const bool has_terms = root.contains("terms");
    const bool has_density = root.contains("density");
    if (has_terms == has_density)
        bad_spec("provide exactly one of \"terms\" or \"density\"");

    if (has_terms) {
        const json& terms = root["terms"];
        if (!terms.is_array() || terms.empty())
            bad_spec("\"terms\" must be a non-empty array");
        for (const json& t : terms) {
            if (!t.is_object()) bad_spec("each term must be an object");
            require_keys(t, {"type", "n0", "sigma_tilde", "q0a", "coeff"}, "a term");
            if (!t.contains("type") || !t["type"].is_string())
                bad_spec("term needs a string \"type\"");
            TermSpec term;
            term.type = t["type"].get<std::string>();
            if (term.type != "delta" && term.type != "gaussian")
                bad_spec("term type must be \"delta\" or \"gaussian\", got \"" +
                         term.type + "\"");
            if (!t.contains("n0")) bad_spec("term needs \"n0\"");
            term.n0 = field_from(t["n0"], "n0");
            if (term.type == "gaussian") {
                if (!t.contains("sigma_tilde"))
                    bad_spec("gaussian term needs \"sigma_tilde\"");
                term.sigma_tilde = field_from(t["sigma_tilde"], "sigma_tilde");
            } else if (t.contains("sigma_tilde")) {
                bad_spec("delta term does not take \"sigma_tilde\"");
            }
            if (t.contains("q0a")) term.q0a = field_from(t["q0a"], "q0a");
            if (t.contains("coeff")) term.coeff = coeff_from(t["coeff"]);
            spec.terms.push_back(std::move(term));
        }
    } else {
        const json& d = root["density"];
        if (!d.is_object()) bad_spec("\"density\" must be an object");
        require_keys(d, {"n_min", "re", "im"}, "the density block");
        if (!d.contains("n_min") || !d["n_min"].is_number_integer())
            bad_spec("density needs an integer \"n_min\"");
        if (!d.contains("re") || !d["re"].is_array() || d["re"].empty())
            bad_spec("density needs a matrix \"re\"");
        const std::size_t dim = d["re"].size();
        DensitySpec ds;
        ds.n_min = d["n_min"].get<int>();
        ds.matrix = Eigen::MatrixXcd::Zero(static_cast<Eigen::Index>(dim),
                                           static_cast<Eigen::Index>(dim));
        const auto fill = [&](const json& mat, bool imag_part, const char* name) {
            if (!mat.is_array() || mat.size() != dim)
                bad_spec(std::string("density \"") + name + "\" must be a " +
                         std::to_string(dim) + "x" + std::to_string(dim) + " matrix");
            for (std::size_t i = 0; i < dim; ++i) {
                const json& row = mat[i];
                if (!row.is_array() || row.size() != dim)
                    bad_spec(std::string("density \"") + name + "\" must be square");
                for (std::size_t j = 0; j < dim; ++j) {
                    const double x = number_field(row[j], "density entry");
                    auto& cell = ds.matrix(static_cast<Eigen::Index>(i),
                                           static_cast<Eigen::Index>(j));
                    cell = imag_part ? cplx{cell.real(), x} : cplx{x, cell.imag()};
                }
            }
        };
        fill(d["re"], false, "re");
        if (d.contains("im")) fill(d["im"], true, "im");
        spec.density = std::move(ds);
    }
    return spec;
}

StateSpec load_state_spec(const std::filesystem::path& path) {
    return parse_state_spec(read_file(path));
}

BuiltState build_state(const StateSpec& spec, const Bindings& bindings,
                       double tail_eps) {
    if (spec.density) {
        DensityOperator rho(spec.density->n_min, spec.density->matrix, spec.spacing);
        return {std::nullopt, std::move(rho)};
    }
    std::vector<PureState> parts;
    std::vector<cplx> coeffs;
    parts.reserve(spec.terms.size());
    for (const auto& t : spec.terms) {
        const int n0 = resolve_int(t.n0, bindings, "n0");
        const double q0a = resolve(t.q0a, bindings, "q0a");
        if (t.type == "delta") {
            parts.push_back(make_delta(n0, spec.spacing));
            // a lone site only feels its phase through the coefficient
            coeffs.push_back(t.coeff * std::polar(1.0, q0a * n0));
        } else {
            const double sigma = resolve(t.sigma_tilde, bindings, "sigma_tilde");
            parts.push_back(
                make_gaussian({n0, sigma, q0a}, spec.spacing, tail_eps));
            coeffs.push_back(t.coeff);
        }
    }
    PureState psi = superpose(parts, coeffs);
    DensityOperator rho = to_density(psi);
    return {std::move(psi), std::move(rho)};
}

std::string format_double(double v) {
    char buf[32];
    const auto res = std::to_chars(buf, buf + sizeof(buf), v);
    return std::string(buf, res.ptr);
}

std::vector<double> parse_axis(const std::string& text) {
    const auto first = text.find(':');
    const auto second = text.find(':', first == std::string::npos ? first : first + 1);
    if (first == std::string::npos || second == std::string::npos ||
        text.find(':', second + 1) != std::string::npos)
        throw SpecError("axis \"" + text + "\" must look like START:STOP:COUNT");
    const auto num = [&](const std::string& s, const char* what) {
        double v{};
        const auto res = std::from_chars(s.data(), s.data() + s.size(), v);
        if (res.ec != std::errc{} || res.ptr != s.data() + s.size() ||
            !std::isfinite(v))
            throw SpecError(std::string("axis ") + what + " \"" + s +
                            "\" is not a number");
        return v;
    };
    const double start = num(text.substr(0, first), "start");
    const double stop = num(text.substr(first + 1, second - first - 1), "stop");
    const std::string cnt = text.substr(second + 1);
    int count{};
    const auto res = std::from_chars(cnt.data(), cnt.data() + cnt.size(), count);
    if (res.ec != std::errc{} || res.ptr != cnt.data() + cnt.size() || count < 1)
        throw SpecError("axis count \"" + cnt + "\" must be a positive integer");
    std::vector<double> out;
    out.reserve(static_cast<std::size_t>(count));
    if (count == 1) {
        out.push_back(start);
        return out;
    }
    for (int i = 0; i < count; ++i)
        out.push_back(start + (stop - start) * i / (count - 1));
    return out;
}

std::string grid_to_csv(const WignerGrid& g) {
    std::string out = "m,k,W\n";
    for (int r = 0; r < g.rows(); ++r) {
        const int m = g.m_min() + r;
        for (int j = 0; j < g.n_k(); ++j) {
            out += std::to_string(m);
            out += ',';
            out += format_double(g.k_at(j));
            out += ',';
            out += format_double(g.value(m, j));
            out += '\n';
        }
    }
    return out;
}

WignerGrid grid_from_csv(const std::string& text) {
    std::istringstream in(text);
    std::string line;
    if (!std::getline(in, line)) throw IoError("grid csv: empty file");
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line != "m,k,W") throw IoError("grid csv: header must be exactly \"m,k,W\"");

    std::vector<double> values;
    std::vector<double> ks_seen;
    std::vector<int> row_m;
    int current_m = 0;
    int count_in_row = 0, n_k = -1;
    std::size_t lineno = 1;
    while (std::getline(in, line)) {
        ++lineno;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.empty()) continue;
        const auto c1 = line.find(',');
        const auto c2 = line.find(',', c1 == std::string::npos ? c1 : c1 + 1);
        if (c1 == std::string::npos || c2 == std::string::npos)
            throw IoError("grid csv: malformed line " + std::to_string(lineno));
        int m{};
        double k{}, w{};
        const std::string ms = line.substr(0, c1);
        const std::string ks = line.substr(c1 + 1, c2 - c1 - 1);
        const std::string ws = line.substr(c2 + 1);
        const auto mr = std::from_chars(ms.data(), ms.data() + ms.size(), m);
        const auto kr = std::from_chars(ks.data(), ks.data() + ks.size(), k);
        const auto wr = std::from_chars(ws.data(), ws.data() + ws.size(), w);
        if (mr.ec != std::errc{} || kr.ec != std::errc{} || wr.ec != std::errc{} ||
            mr.ptr != ms.data() + ms.size() || kr.ptr != ks.data() + ks.size() ||
            wr.ptr != ws.data() + ws.size())
            throw IoError("grid csv: malformed line " + std::to_string(lineno));
        if (row_m.empty() || m != current_m) {
            if (!row_m.empty() && n_k == -1) n_k = count_in_row;
            if (n_k != -1 && count_in_row != n_k)
                throw IoError("grid csv: ragged rows");
            if (!row_m.empty() && m != current_m + 1)
                throw IoError("grid csv: rows must be contiguous in m");
            row_m.push_back(m);
            current_m = m;
            count_in_row = 0;
        }
        const int j = count_in_row;
        ++count_in_row;
        const int nodes = n_k == -1 ? 0 : n_k;
        if (nodes > 0 && j >= nodes) throw IoError("grid csv: ragged rows");
        values.push_back(w);
        ks_seen.push_back(k);
    }
    if (row_m.empty()) throw IoError("grid csv: no data rows");
    if (n_k == -1) n_k = count_in_row;
    if (count_in_row != n_k) throw IoError("grid csv: ragged rows");

    // CSV carries no spacing or residue metadata; defaults apply
    WignerGrid g(row_m.front(), n_k, 1.0, std::move(values), 0.0);
    for (std::size_t i = 0; i < ks_seen.size(); ++i)
        if (std::fabs(ks_seen[i] - g.k_at(static_cast<int>(i) % n_k)) > 1e-9)
            throw IoError("grid csv: momentum node " +
                          std::to_string(i % static_cast<std::size_t>(n_k)) +
                          " off the uniform grid");
    return g;
}

nlohmann::ordered_json config_to_json(const RunConfig& cfg) {
    ordered_json j;
    j["n_k"] = cfg.n_k;
    j["tail_eps"] = cfg.tail_eps;
    j["tol"] = cfg.tol;
    j["output_format"] = cfg.output_format;
    return j;
}

nlohmann::ordered_json grid_to_json(const WignerGrid& g, const RunConfig& cfg) {
    ordered_json j;
    j["meta"] = {{"kind", "wigner_grid"},
                 {"m_min", g.m_min()},
                 {"n_k", g.n_k()},
                 {"spacing", g.spacing()},
                 {"max_imag_residue", g.max_imag_residue()},
                 {"config", config_to_json(cfg)}};
    ordered_json ms = ordered_json::array(), ks = ordered_json::array();
    for (int r = 0; r < g.rows(); ++r) ms.push_back(g.m_min() + r);
    for (int jx = 0; jx < g.n_k(); ++jx) ks.push_back(g.k_at(jx));
    j["m_values"] = std::move(ms);
    j["k_values"] = std::move(ks);
    ordered_json rows = ordered_json::array();
    for (int r = 0; r < g.rows(); ++r) {
        ordered_json row = ordered_json::array();
        for (int jx = 0; jx < g.n_k(); ++jx) row.push_back(g.value(g.m_min() + r, jx));
        rows.push_back(std::move(row));
    }
    j["values"] = std::move(rows);
    return j;
}

WignerGrid grid_from_json(const std::string& text) {
    json root;
    try {
        root = json::parse(text);
    } catch (const json::exception& e) {
        throw IoError(std::string("grid json: invalid JSON: ") + e.what());
    }
    if (!root.is_object() || !root.contains("meta") || !root.contains("values"))
        throw IoError("grid json: need \"meta\" and \"values\"");
    const json& meta = root["meta"];
    if (!meta.contains("m_min") || !meta.contains("n_k"))
        throw IoError("grid json: meta needs m_min and n_k");
    const int m_min = meta["m_min"].get<int>();
    const int n_k = meta["n_k"].get<int>();
    const double spacing = meta.value("spacing", 1.0);
    const double residue = meta.value("max_imag_residue", 0.0);
    const json& rows = root["values"];
    if (!rows.is_array() || rows.empty()) throw IoError("grid json: values empty");
    std::vector<double> values;
    values.reserve(rows.size() * static_cast<std::size_t>(n_k > 0 ? n_k : 1));
    for (const json& row : rows) {
        if (!row.is_array() || static_cast<int>(row.size()) != n_k)
            throw IoError("grid json: row length differs from n_k");
        for (const json& v : row) {
            if (!v.is_number()) throw IoError("grid json: non-numeric value");
            values.push_back(v.get<double>());
        }
    }
    try {
        return WignerGrid(m_min, n_k, spacing, std::move(values), residue);
    } catch (const SpecError& e) {
        throw IoError(std::string("grid json: ") + e.what());
    }
}

WignerGrid load_grid(const std::filesystem::path& path) {
    const std::string text = read_file(path);
    const bool looks_json = path.extension() == ".json" ||
                            (!text.empty() && text.front() == '{');
    return looks_json ? grid_from_json(text) : grid_from_csv(text);
}

nlohmann::ordered_json report_to_json(const NegativityReport& rep,
                                      const RunConfig& cfg) {
    ordered_json j;
    j["config"] = config_to_json(cfg);
    j["eta"] = rep.eta;
    j["raw_negativity"] = rep.raw_negativity;
    j["quad_error_estimate"] = rep.quad_error_estimate;
    j["min_value"] = rep.min_value;
    j["min_point"] = {{"m", rep.min_point.m}, {"k", rep.min_point.k}};
    return j;
}

std::string report_to_csv(const NegativityReport& rep) {
    std::string out = "field,value\n";
    out += "eta," + format_double(rep.eta) + "\n";
    out += "raw_negativity," + format_double(rep.raw_negativity) + "\n";
    out += "quad_error_estimate," + format_double(rep.quad_error_estimate) + "\n";
    out += "min_value," + format_double(rep.min_value) + "\n";
    out += "min_m," + std::to_string(rep.min_point.m) + "\n";
    out += "min_k," + format_double(rep.min_point.k) + "\n";
    return out;
}

std::string read_file(const std::filesystem::path& path) {
    std::ifstream f(path, std::ios::binary);
    if (!f) throw IoError("cannot read " + path.string());
    std::ostringstream ss;
    ss << f.rdbuf();
    if (f.bad()) throw IoError("read failed for " + path.string());
    return ss.str();
}

void write_file_atomic(const std::filesystem::path& path, const std::string& content) {
    if (path.empty()) throw IoError("empty output path");
    std::filesystem::path tmp = path;
    tmp += ".tmp";
    {
        std::ofstream f(tmp, std::ios::binary | std::ios::trunc);
        if (!f) throw IoError("cannot open " + tmp.string() + " for writing");
        f.write(content.data(), static_cast<std::streamsize>(content.size()));
        f.flush();
        if (!f) {
            f.close();
            std::error_code ec;
            std::filesystem::remove(tmp, ec);
            throw IoError("write failed for " + tmp.string());
        }
    }
    std::error_code ec;
    std::filesystem::rename(tmp, path, ec);
    if (ec) {
        std::error_code ec2;
        std::filesystem::remove(tmp, ec2);
        throw IoError("cannot move output into place at " + path.string() + ": " +
                      ec.message());
    }
}

} // namespace lw
