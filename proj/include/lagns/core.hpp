#pragma once

#include <cstddef>
#include <string>
#include <vector>

namespace lagns {

// Constitutive constants of an ideal polytropic gas with power-law transport
// coefficients mu(theta) = mu_bar * theta^gamma, kappa(theta) = kappa_bar * theta^beta.
struct GasParams {
    double R = 1.0;
    double c_v = 1.0;
    double mu_bar = 1.0;
    double kappa_bar = 1.0;
    double gamma = 0.0;
    double beta = 1.0;

    // Constant viscosity combined with degenerate heat conduction. This is the
    // regime in which the full invariant suite (entropy balance, slab bounds,
    // level-set bound) is expected to hold.
    bool theorem_regime() const { return gamma == 0.0 && beta > 0.0; }

    // Throws std::invalid_argument naming the offending field.
    void validate() const;
};

enum class DomainKind { Cauchy, HalfLineNeumann, HalfLineDirichlet };

const char* to_string(DomainKind kind);

// Uniform staggered grid in the Lagrange mass coordinate. Cell centers carry
// (v, theta); edges carry u. Cauchy runs truncate the line to [-L, L],
// half-line runs truncate (0, inf) to [0, L].
struct MassGrid {
    DomainKind domain_kind = DomainKind::Cauchy;
    double L = 1.0;
    std::size_t n_cells = 0;
    double h = 0.0;

    MassGrid() = default;
    MassGrid(DomainKind kind, double half_length, std::size_t cells);

    double x_left() const { return domain_kind == DomainKind::Cauchy ? -L : 0.0; }
    double x_right() const { return L; }
    double total_mass() const { return x_right() - x_left(); }
    double center(std::size_t j) const { return x_left() + (static_cast<double>(j) + 0.5) * h; }
    double edge(std::size_t i) const { return x_left() + static_cast<double>(i) * h; }
    std::size_t n_edges() const { return n_cells + 1; }

    bool operator==(const MassGrid&) const = default;
};

// Discrete fields at one time level. Values are immutable between steps; the
// stepper produces a fresh State, so sharing across threads for read-only
// functional evaluation is safe.
struct State {
    double t = 0.0;
    std::vector<double> v;      // specific volume, n_cells values at centers
    std::vector<double> theta;  // temperature, n_cells values at centers
    std::vector<double> u;      // velocity, n_cells + 1 values at edges
    MassGrid grid;

    static State constant(const MassGrid& grid, double v0 = 1.0, double u0 = 0.0,
                          double theta0 = 1.0);
};

// P = R theta / v. Throws std::domain_error naming the offending field.
double pressure(double v, double theta, const GasParams& params);

struct TransportCoefficients {
    double viscosity;     // mu_bar * theta^gamma
    double conductivity;  // kappa_bar * theta^beta
};
TransportCoefficients transport_coefficients(double theta, const GasParams& params);

// e = c_v * theta (the additive constant never enters the dynamics).
double internal_energy(double theta, const GasParams& params);

struct StateViolation {
    std::size_t index = 0;
    std::string field;   // "v", "theta" or "u"
    std::string reason;  // "non-positive ...", "non-finite", "length mismatch"
};

struct ValidationResult {
    std::vector<StateViolation> violations;
    bool ok() const { return violations.empty(); }
    std::string describe() const;
};

// Passes iff every v_j > 0, every theta_j > 0, no field contains a non-finite
// value and the array lengths match the grid.
ValidationResult validate_state(const State& state);

}  // namespace lagns
