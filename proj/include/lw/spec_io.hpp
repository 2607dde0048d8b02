#pragma once

#include "lw/negativity.hpp"
#include "lw/state.hpp"
#include "lw/wigner.hpp"

#include <json.hpp>

#include <filesystem>
#include <map>
#include <optional>
#include <string>
#include <variant>
#include <vector>

namespace lw {

struct RunConfig {
    int n_k = 4096;
    double tail_eps = 1e-16;
    double tol = 1e-10;
    std::string output_format = "csv";  // "csv" or "json"
};

/// Reference to a sweep variable inside a state description, e.g. "-n0".
struct VarRef {
    std::string name;
    bool negate = false;
};

/// Numeric field that may instead name a sweep variable.
using Field = std::variant<double, VarRef>;

struct TermSpec {
    std::string type;  // "delta" or "gaussian"
    Field n0{0.0};
    Field sigma_tilde{1.0};
    Field q0a{0.0};
    cplx coeff{1.0, 0.0};
};

struct DensitySpec {
    int n_min = 0;
    Eigen::MatrixXcd matrix;
};

/// Parsed state description: either a list of superposition terms or an
/// explicit density matrix.
struct StateSpec {
    double spacing = 1.0;
    std::vector<TermSpec> terms;
    std::optional<DensitySpec> density;
    bool has_variables() const;
};

StateSpec parse_state_spec(const std::string& text);
StateSpec load_state_spec(const std::filesystem::path& path);

using Bindings = std::map<std::string, double>;

struct BuiltState {
    std::optional<PureState> pure;  // set for term-form descriptions
    DensityOperator rho;
};

/// Resolves sweep variables against the bindings and assembles the state.
BuiltState build_state(const StateSpec& spec, const Bindings& bindings,
                       double tail_eps);

/// Shortest round-trip decimal representation; locale-independent.
std::string format_double(double v);

/// "START:STOP:COUNT" -> COUNT evenly spaced values, endpoints included.
std::vector<double> parse_axis(const std::string& text);

std::string grid_to_csv(const WignerGrid& g);
WignerGrid grid_from_csv(const std::string& text);
nlohmann::ordered_json grid_to_json(const WignerGrid& g, const RunConfig& cfg);
WignerGrid grid_from_json(const std::string& text);

/// Reads a grid file, dispatching on extension (.json) or a leading '{'.
WignerGrid load_grid(const std::filesystem::path& path);

nlohmann::ordered_json config_to_json(const RunConfig& cfg);
nlohmann::ordered_json report_to_json(const NegativityReport& rep, const RunConfig& cfg);
std::string report_to_csv(const NegativityReport& rep);

std::string read_file(const std::filesystem::path& path);

/// Writes through a temporary file in the same directory and renames, so a
/// failed run leaves no partial output behind.
void write_file_atomic(const std::filesystem::path& path, const std::string& content);

} // namespace lw
