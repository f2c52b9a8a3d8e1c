#include "lagns/core.hpp"

#include <cmath>
#include <sstream>
#include <stdexcept>

namespace lagns {

void GasParams::validate() const {
    auto positive = [](double value, const char* name) {
        if (!(value > 0.0) || !std::isfinite(value)) {
            throw std::invalid_argument(std::string("GasParams: ") + name +
                                        " must be strictly positive");
        }
    };
    positive(R, "R");
    positive(c_v, "c_v");
    positive(mu_bar, "mu_bar");
    positive(kappa_bar, "kappa_bar");
    if (!(gamma >= 0.0) || !std::isfinite(gamma)) {
        throw std::invalid_argument("GasParams: gamma must be >= 0");
    }
    if (!(beta >= 0.0) || !std::isfinite(beta)) {
        throw std::invalid_argument("GasParams: beta must be >= 0");
    }
}

const char* to_string(DomainKind kind) {
    switch (kind) {
        case DomainKind::Cauchy: return "cauchy";
        case DomainKind::HalfLineNeumann: return "halfline_neumann";
        case DomainKind::HalfLineDirichlet: return "halfline_dirichlet";
    }
    return "unknown";
}

MassGrid::MassGrid(DomainKind kind, double half_length, std::size_t cells)
    : domain_kind(kind), L(half_length), n_cells(cells) {
    if (!(half_length > 0.0) || !std::isfinite(half_length)) {
        throw std::invalid_argument("MassGrid: L must be strictly positive");
    }
    if (cells < 4) {
        throw std::invalid_argument("MassGrid: n_cells must be at least 4");
    }
    h = total_mass() / static_cast<double>(cells);
}

State State::constant(const MassGrid& grid, double v0, double u0, double theta0) {
    State state;
    state.t = 0.0;
    state.grid = grid;
    state.v.assign(grid.n_cells, v0);
    state.theta.assign(grid.n_cells, theta0);
    state.u.assign(grid.n_edges(), u0);
    return state;
}

double pressure(double v, double theta, const GasParams& params) {
    if (!(v > 0.0)) {
        throw std::domain_error("pressure: non-positive specific volume v");
    }
    if (!(theta > 0.0)) {
        throw std::domain_error("pressure: non-positive temperature theta");
    }
    return params.R * theta / v;
}

TransportCoefficients transport_coefficients(double theta, const GasParams& params) {
    if (!(theta > 0.0)) {
        throw std::domain_error("transport_coefficients: non-positive temperature theta");
    }
    // gamma = 0 is the common case; avoid pow() there so the viscosity is
    // exactly mu_bar for all theta.
    const double mu =
        params.gamma == 0.0 ? params.mu_bar : params.mu_bar * std::pow(theta, params.gamma);
    const double kappa =
        params.beta == 0.0 ? params.kappa_bar : params.kappa_bar * std::pow(theta, params.beta);
    return {mu, kappa};
}

double internal_energy(double theta, const GasParams& params) {
    if (!(theta > 0.0)) {
        throw std::domain_error("internal_energy: non-positive temperature theta");
    }
    return params.c_v * theta;
}

std::string ValidationResult::describe() const {
    if (violations.empty()) return "ok";
    std::ostringstream out;
    for (std::size_t i = 0; i < violations.size(); ++i) {
        if (i) out << "; ";
        out << violations[i].field << "[" << violations[i].index
            << "]: " << violations[i].reason;
    }
    return out.str();
}

ValidationResult validate_state(const State& state) {
    ValidationResult result;
    const std::size_t n = state.grid.n_cells;
    if (state.v.size() != n) {
        result.violations.push_back({state.v.size(), "v", "length mismatch"});
        return result;
    }
    if (state.theta.size() != n) {
        result.violations.push_back({state.theta.size(), "theta", "length mismatch"});
        return result;
    }
    if (state.u.size() != n + 1) {
        result.violations.push_back({state.u.size(), "u", "length mismatch"});
        return result;
    }
    for (std::size_t j = 0; j < n; ++j) {
        if (!std::isfinite(state.v[j])) {
            result.violations.push_back({j, "v", "non-finite"});
        } else if (!(state.v[j] > 0.0)) {
            result.violations.push_back({j, "v", "non-positive specific volume"});
        }
        if (!std::isfinite(state.theta[j])) {
            result.violations.push_back({j, "theta", "non-finite"});
        } else if (!(state.theta[j] > 0.0)) {
            result.violations.push_back({j, "theta", "non-positive temperature"});
        }
    }
    for (std::size_t i = 0; i <= n; ++i) {
        if (!std::isfinite(state.u[i])) {
            result.violations.push_back({i, "u", "non-finite"});
        }
    }
    return result;
}

}  // namespace lagns
