#pragma once

#include <stdexcept>
#include <string>

#include "lagns/core.hpp"
#include "lagns/scenarios.hpp"
#include "lagns/stepper.hpp"

namespace lagns {

class ConfigError : public std::runtime_error {
public:
    explicit ConfigError(const std::string& what) : std::runtime_error(what) {}
};

// Flat key/value run configuration. Required keys: problem, beta, L, n_cells,
// t_end; everything else defaults (R = c_v = mu_bar = kappa_bar = 1, gamma = 0,
// report_every = t_end/20, snapshot_every = t_end/4). Unknown keys are an
// error, not a warning.
struct RunConfig {
    DomainKind problem = DomainKind::Cauchy;
    GasParams gas;
    double L = 8.0;
    std::size_t n_cells = 256;
    StepControls controls;
    InitialDataSpec initial;
    double t_end = 1.0;
    double report_every = 0.05;
    double snapshot_every = 0.25;
    std::string output_dir = "out";
    // Pass/fail threshold on |E + cumulative_W - e0|; <= 0 selects the
    // documented automatic value 0.05 * e0 + 1e-8.
    double energy_residual_tol = 0.0;

    MassGrid grid() const { return MassGrid(problem, L, n_cells); }
    double residual_tol(double e0) const {
        return energy_residual_tol > 0.0 ? energy_residual_tol : 0.05 * e0 + 1e-8;
    }

    bool operator==(const RunConfig&) const = default;
};

// Parses and validates a JSON configuration document.
RunConfig parse_config(const std::string& text);
RunConfig load_config(const std::string& path);

// Canonical serialization; parse_config(render_config(c)) == c.
std::string render_config(const RunConfig& config);

// FNV-1a hash of the canonical serialization, as 16 hex digits.
std::string config_hash(const RunConfig& config);

}  // namespace lagns
