#include "lagns/scenarios.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "lagns/functionals.hpp"

namespace lagns {

const char* to_string(InitialFamily family) {
    switch (family) {
        case InitialFamily::Constant: return "constant";
        case InitialFamily::GaussianBump: return "gaussian_bump";
        case InitialFamily::CompactPerturbation: return "compact_perturbation";
    }
    return "unknown";
}

double compact_bump(double r) {
    const double r2 = r * r;
    // The exponent diverges as |r| -> 1; the value underflows to zero long
    // before, so cut the evaluation off where it is exactly zero in double.
    if (r2 >= 1.0 - 1e-6) return 0.0;
    return std::exp(1.0 - 1.0 / (1.0 - r2));
}

namespace {

struct BumpPlacement {
    double center = 0.0;
    double radius = 0.0;  // truncation/support radius
};

BumpPlacement placement(const InitialDataSpec& spec, const MassGrid& grid) {
    if (grid.domain_kind == DomainKind::Cauchy) {
        return {0.0, spec.core_radius};
    }
    // Half-line: keep the perturbation inside [0, core_radius] so the wall
    // data stay exactly (1, 0, 1)-compatible.
    return {0.5 * spec.core_radius, 0.5 * spec.core_radius};
}

}  // namespace

InitialData make_initial_data(const InitialDataSpec& spec, const MassGrid& grid) {
    if (std::abs(spec.a_v) >= 1.0) {
        throw std::invalid_argument("make_initial_data: |a_v| must be < 1 (inf v0 would hit 0)");
    }
    if (std::abs(spec.a_theta) >= 1.0) {
        throw std::invalid_argument(
            "make_initial_data: |a_theta| must be < 1 (inf theta0 would hit 0)");
    }
    if (!(spec.width > 0.0)) throw std::invalid_argument("make_initial_data: width must be > 0");
    if (!(spec.core_radius > 0.0)) {
        throw std::invalid_argument("make_initial_data: core_radius must be > 0");
    }
    if (spec.family != InitialFamily::Constant && !(spec.core_radius < grid.L)) {
        throw std::invalid_argument(
            "make_initial_data: core_radius must be smaller than the truncation length L");
    }

    const BumpPlacement place = placement(spec, grid);
    if (spec.family == InitialFamily::CompactPerturbation && spec.width > place.radius) {
        throw std::invalid_argument(
            "make_initial_data: compact perturbation width exceeds the core region");
    }

    auto shape = [&](double x) -> double {
        const double r = x - place.center;
        switch (spec.family) {
            case InitialFamily::Constant:
                return 0.0;
            case InitialFamily::GaussianBump:
                if (std::abs(r) >= place.radius) return 0.0;
                return std::exp(-r * r / (2.0 * spec.width * spec.width));
            case InitialFamily::CompactPerturbation:
                return compact_bump(r / spec.width);
        }
        return 0.0;
    };

    State state;
    state.t = 0.0;
    state.grid = grid;
    state.v.resize(grid.n_cells);
    state.theta.resize(grid.n_cells);
    state.u.resize(grid.n_edges());
    for (std::size_t j = 0; j < grid.n_cells; ++j) {
        const double phi = shape(grid.center(j));
        state.v[j] = 1.0 + spec.a_v * phi;
        state.theta[j] = 1.0 + spec.a_theta * phi;
    }
    for (std::size_t i = 0; i < grid.n_edges(); ++i) {
        state.u[i] = spec.a_u * shape(grid.edge(i));
    }
    state = apply_boundary(std::move(state), grid.domain_kind);

    ValidationResult check = validate_state(state);
    if (!check.ok()) {
        throw std::invalid_argument("make_initial_data: constructed state invalid: " +
                                    check.describe());
    }
    const double e0 = entropy_energy(state);
    return {std::move(state), e0};
}

ManufacturedCase::FieldValue ManufacturedCase::field(double x, double t, double base,
                                                     double amp, double phase) const {
    FieldValue value;
    const double r = x / support_;
    const double r2 = r * r;
    if (r2 >= 1.0 - 1e-6 || amp == 0.0) {
        value.f = base;
        return value;
    }
    const double inv = 1.0 / (1.0 - r2);
    const double b = std::exp(1.0 - inv);
    const double gp = -2.0 * r * inv * inv;                      // d/dr of the exponent
    const double gpp = -2.0 * inv * inv - 8.0 * r2 * inv * inv * inv;
    const double bp = b * gp;
    const double bpp = b * (gpp + gp * gp);

    const double arg = wavenumber_ * x + phase;
    const double s = std::sin(arg);
    const double c = std::cos(arg);
    const double shape = b * s;
    const double shape_x = bp / support_ * s + b * wavenumber_ * c;
    const double shape_xx = bpp / (support_ * support_) * s +
                            2.0 * bp / support_ * wavenumber_ * c -
                            b * wavenumber_ * wavenumber_ * s;

    const double tau = amp * std::exp(-decay_ * t);
    value.f = base + tau * shape;
    value.ft = -decay_ * tau * shape;
    value.fx = tau * shape_x;
    value.fxx = tau * shape_xx;
    return value;
}

ManufacturedCase::FieldValue ManufacturedCase::v_field(double x, double t) const {
    return field(x, t, 1.0, amp_v_, phase_v_);
}
ManufacturedCase::FieldValue ManufacturedCase::u_field(double x, double t) const {
    return field(x, t, 0.0, amp_u_, phase_u_);
}
ManufacturedCase::FieldValue ManufacturedCase::theta_field(double x, double t) const {
    return field(x, t, 1.0, amp_theta_, phase_theta_);
}

double ManufacturedCase::source_volume(double x, double t) const {
    const FieldValue v = v_field(x, t);
    const FieldValue u = u_field(x, t);
    return v.ft - u.fx;
}

double ManufacturedCase::source_momentum(double x, double t) const {
    const FieldValue v = v_field(x, t);
    const FieldValue u = u_field(x, t);
    const FieldValue th = theta_field(x, t);
    const double grad_p = params.R * (th.fx * v.f - th.f * v.fx) / (v.f * v.f);
    // (mu(theta) u_x / v)_x with mu = mu_bar theta^gamma
    const double mu = params.mu_bar * std::pow(th.f, params.gamma);
    double visc = mu * (u.fxx / v.f - u.fx * v.fx / (v.f * v.f));
    if (params.gamma != 0.0) {
        visc += params.mu_bar * params.gamma * std::pow(th.f, params.gamma - 1.0) * th.fx *
                u.fx / v.f;
    }
    return u.ft + grad_p - visc;
}

double ManufacturedCase::source_heat(double x, double t) const {
    const FieldValue v = v_field(x, t);
    const FieldValue u = u_field(x, t);
    const FieldValue th = theta_field(x, t);
    const double work = params.R * th.f / v.f * u.fx;
    // (kappa(theta) theta_x / v)_x with kappa = kappa_bar theta^beta
    const double kb = params.kappa_bar;
    const double theta_pow = std::pow(th.f, params.beta);
    double diffusion = kb * theta_pow * (th.fxx / v.f - th.fx * v.fx / (v.f * v.f));
    if (params.beta != 0.0) {
        diffusion += kb * params.beta * std::pow(th.f, params.beta - 1.0) * th.fx * th.fx / v.f;
    }
    const double mu = params.mu_bar * std::pow(th.f, params.gamma);
    const double heating = mu * u.fx * u.fx / v.f;
    return params.c_v * th.ft + work - diffusion - heating;
}

SourceTerms ManufacturedCase::sources() const {
    SourceTerms terms;
    terms.volume = [*this](double x, double t) { return source_volume(x, t); };
    terms.momentum = [*this](double x, double t) { return source_momentum(x, t); };
    terms.heat = [*this](double x, double t) { return source_heat(x, t); };
    return terms;
}

State ManufacturedCase::initial_state(const MassGrid& grid) const {
    State state;
    state.t = 0.0;
    state.grid = grid;
    state.v.resize(grid.n_cells);
    state.theta.resize(grid.n_cells);
    state.u.resize(grid.n_edges());
    for (std::size_t j = 0; j < grid.n_cells; ++j) {
        state.v[j] = v_field(grid.center(j), 0.0).f;
        state.theta[j] = theta_field(grid.center(j), 0.0).f;
    }
    for (std::size_t i = 0; i < grid.n_edges(); ++i) {
        state.u[i] = u_field(grid.edge(i), 0.0).f;
    }
    return apply_boundary(std::move(state), grid.domain_kind);
}

ManufacturedCase::SupErrors ManufacturedCase::sup_errors(const State& state) const {
    SupErrors errors;
    const MassGrid& grid = state.grid;
    for (std::size_t j = 0; j < grid.n_cells; ++j) {
        errors.v = std::max(errors.v, std::abs(state.v[j] - v_field(grid.center(j), state.t).f));
        errors.theta = std::max(
            errors.theta, std::abs(state.theta[j] - theta_field(grid.center(j), state.t).f));
    }
    for (std::size_t i = 0; i < grid.n_edges(); ++i) {
        errors.u = std::max(errors.u, std::abs(state.u[i] - u_field(grid.edge(i), state.t).f));
    }
    return errors;
}

ManufacturedCase manufactured_case(const std::string& id) {
    ManufacturedCase mcase;
    mcase.id = id;
    mcase.params = GasParams{};
    if (id == "constant") {
        mcase.params.beta = 1.0;
        return mcase;
    }
    double beta = 0.0;
    if (id == "sine-b0.5") {
        beta = 0.5;
    } else if (id == "sine-b1") {
        beta = 1.0;
    } else if (id == "sine-b2") {
        beta = 2.0;
    } else {
        throw std::invalid_argument("manufactured_case: unknown case id '" + id +
                                    "' (known: constant, sine-b0.5, sine-b1, sine-b2)");
    }
    mcase.params.beta = beta;
    mcase.decay_ = 1.0;
    mcase.wavenumber_ = std::acos(-1.0);  // pi
    mcase.support_ = 3.0;
    mcase.amp_v_ = 0.08;
    mcase.amp_u_ = 0.10;
    mcase.amp_theta_ = 0.12;
    mcase.phase_v_ = 0.0;
    mcase.phase_u_ = 1.0;
    mcase.phase_theta_ = 0.5;
    return mcase;
}

std::vector<std::string> manufactured_case_ids() {
    return {"constant", "sine-b0.5", "sine-b1", "sine-b2"};
}

StudyError::StudyError(std::size_t n_cells, const std::string& what)
    : std::runtime_error("convergence_study at n_cells=" + std::to_string(n_cells) + ": " + what),
      n_cells_(n_cells) {}

namespace {

double fit_slope(const std::vector<double>& log_h, const std::vector<double>& log_err) {
    const double n = static_cast<double>(log_h.size());
    double sx = 0.0, sy = 0.0, sxx = 0.0, sxy = 0.0;
    for (std::size_t i = 0; i < log_h.size(); ++i) {
        sx += log_h[i];
        sy += log_err[i];
        sxx += log_h[i] * log_h[i];
        sxy += log_h[i] * log_err[i];
    }
    return (n * sxy - sx * sy) / (n * sxx - sx * sx);
}

}  // namespace

OrderReport convergence_study(const ManufacturedCase& mcase,
                              std::span<const std::size_t> resolutions,
                              const StepControls& controls) {
    if (resolutions.size() < 3) {
        throw std::invalid_argument("convergence_study: need at least 3 resolutions");
    }
    controls.validate();

    OrderReport report;
    const double h0 =
        MassGrid(DomainKind::Cauchy, mcase.L, resolutions.front()).h;
    for (std::size_t n_cells : resolutions) {
        const MassGrid grid(DomainKind::Cauchy, mcase.L, n_cells);
        StepControls level_controls = controls;
        level_controls.dt_init = controls.dt_init * (grid.h / h0);
        level_controls.dt_max = level_controls.dt_init;  // fixed dt per level
        level_controls.dt_min = std::min(controls.dt_min, level_controls.dt_init);

        Stepper stepper(mcase.params, level_controls, mcase.sources());
        State state = mcase.initial_state(grid);
        try {
            while (state.t < mcase.t_end - 1e-12) {
                StepOutcome outcome = stepper.advance(state, mcase.t_end - state.t);
                state = std::move(outcome.state);
            }
        } catch (const SimulationAbortError& abort) {
            throw StudyError(n_cells, abort.what());
        }

        const ManufacturedCase::SupErrors errors = mcase.sup_errors(state);
        report.levels.push_back(
            {n_cells, grid.h, level_controls.dt_init, errors.v, errors.u, errors.theta});
    }

    double worst = 0.0;
    for (const StudyLevel& level : report.levels) {
        worst = std::max({worst, level.err_v, level.err_u, level.err_theta});
    }
    if (worst < 1e-12) {
        report.exact = true;
        return report;
    }

    std::vector<double> log_h, log_v, log_u, log_theta;
    for (const StudyLevel& level : report.levels) {
        log_h.push_back(std::log(level.h));
        log_v.push_back(std::log(std::max(level.err_v, 1e-300)));
        log_u.push_back(std::log(std::max(level.err_u, 1e-300)));
        log_theta.push_back(std::log(std::max(level.err_theta, 1e-300)));
    }
    report.slope_v = fit_slope(log_h, log_v);
    report.slope_u = fit_slope(log_h, log_u);
    report.slope_theta = fit_slope(log_h, log_theta);
    return report;
}

}  // namespace lagns
