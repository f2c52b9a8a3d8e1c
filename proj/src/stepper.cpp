#include "lagns/stepper.hpp"

#include <algorithm>
#include <cmath>

#include "lagns/tridiag.hpp"

namespace lagns {

void StepControls::validate() const {
    if (!(dt_min > 0.0)) throw std::invalid_argument("StepControls: dt_min must be > 0");
    if (!(dt_min <= dt_init)) {
        throw std::invalid_argument("StepControls: dt_init must be >= dt_min");
    }
    if (!(dt_init <= dt_max)) {
        throw std::invalid_argument("StepControls: dt_max must be >= dt_init");
    }
    if (!(safety > 0.0 && safety < 1.0)) {
        throw std::invalid_argument("StepControls: safety must lie in (0, 1)");
    }
    if (!(picard_tol > 0.0)) throw std::invalid_argument("StepControls: picard_tol must be > 0");
    if (picard_max < 1) throw std::invalid_argument("StepControls: picard_max must be >= 1");
    if (!(growth_factor >= 1.0)) {
        throw std::invalid_argument("StepControls: growth_factor must be >= 1");
    }
    if (growth_streak < 1) throw std::invalid_argument("StepControls: growth_streak must be >= 1");
}

const char* to_string(StepSignal signal) {
    switch (signal) {
        case StepSignal::Accepted: return "accepted";
        case StepSignal::PositivityViolation: return "positivity violation";
        case StepSignal::PicardStall: return "picard stall";
        case StepSignal::NonFinite: return "non-finite value";
    }
    return "unknown";
}

GhostValues ghost_values(const State& state, DomainKind kind) {
    GhostValues ghost;  // far-field (1, 1) on both sides by default
    switch (kind) {
        case DomainKind::Cauchy:
            break;
        case DomainKind::HalfLineNeumann:
            // Mirror: the discrete one-sided theta_x at the wall vanishes.
            ghost.v_left = state.v.front();
            ghost.theta_left = state.theta.front();
            break;
        case DomainKind::HalfLineDirichlet:
            // Face average (ghost + first)/2 equals the prescribed wall value 1.
            ghost.v_left = state.v.front();
            ghost.theta_left = 2.0 - state.theta.front();
            break;
        default:
            throw std::invalid_argument("ghost_values: unknown domain configuration");
    }
    return ghost;
}

State apply_boundary(State state, DomainKind kind) {
    switch (kind) {
        case DomainKind::Cauchy:
        case DomainKind::HalfLineNeumann:
        case DomainKind::HalfLineDirichlet:
            break;
        default:
            throw std::invalid_argument("apply_boundary: unknown domain configuration");
    }
    if (state.u.size() != state.grid.n_edges()) {
        throw std::invalid_argument("apply_boundary: velocity array does not match grid");
    }
    state.u.front() = 0.0;
    state.u.back() = 0.0;
    return state;
}

std::vector<double> momentum_solve(const State& state, double dt, const GasParams& params,
                                   const SourceTerms* sources) {
    if (!(dt > 0.0)) throw std::invalid_argument("momentum_solve: dt must be > 0");
    const std::size_t n = state.grid.n_cells;
    const double h = state.grid.h;
    const double lam = dt / (h * h);

    // Cell coefficients: a_j = mu(theta_j)/v_j and old pressures.
    std::vector<double> a(n), press(n);
    for (std::size_t j = 0; j < n; ++j) {
        a[j] = transport_coefficients(state.theta[j], params).viscosity / state.v[j];
        press[j] = pressure(state.v[j], state.theta[j], params);
    }

    // Solve for the velocity increment on interior edges; boundary edges stay
    // pinned at u = 0, so a steady state produces an exactly zero right side
    // and hence a bit-exact zero increment.
    const std::size_t m = n - 1;  // unknowns: edges 1 .. n-1
    std::vector<double> lower(m > 0 ? m - 1 : 0), diag(m), upper(m > 0 ? m - 1 : 0), rhs(m);
    const double t_new = state.t + dt;
    for (std::size_t i = 1; i < n; ++i) {
        const std::size_t r = i - 1;
        diag[r] = 1.0 + lam * (a[i - 1] + a[i]);
        if (i > 1) lower[r - 1] = -lam * a[i - 1];
        if (i < n - 1) upper[r] = -lam * a[i];
        const double viscous =
            (a[i] * (state.u[i + 1] - state.u[i]) - a[i - 1] * (state.u[i] - state.u[i - 1])) /
            (h * h);
        const double grad_p = (press[i] - press[i - 1]) / h;
        double value = dt * (viscous - grad_p);
        if (sources && sources->momentum) value += dt * sources->momentum(state.grid.edge(i), t_new);
        rhs[r] = value;
    }

    std::vector<double> delta = tridiagonal_solve(lower, diag, upper, rhs);
    std::vector<double> u_new = state.u;
    for (std::size_t i = 1; i < n; ++i) u_new[i] += delta[i - 1];
    u_new.front() = 0.0;
    u_new.back() = 0.0;
    return u_new;
}

ContinuityResult continuity_update(const State& state, std::span<const double> u_new,
                                   double dt, const SourceTerms* sources) {
    if (!(dt > 0.0)) throw std::invalid_argument("continuity_update: dt must be > 0");
    const std::size_t n = state.grid.n_cells;
    if (u_new.size() != n + 1) {
        throw std::invalid_argument("continuity_update: velocity array does not match grid");
    }
    const double h = state.grid.h;
    const double t_new = state.t + dt;

    ContinuityResult result;
    result.v.resize(n);
    for (std::size_t j = 0; j < n; ++j) {
        double value = state.v[j] + dt * (u_new[j + 1] - u_new[j]) / h;
        if (sources && sources->volume) value += dt * sources->volume(state.grid.center(j), t_new);
        result.v[j] = value;
        if (!std::isfinite(value)) result.signal = StepSignal::NonFinite;
    }
    if (result.signal == StepSignal::Accepted) {
        for (double value : result.v) {
            if (!(value > 0.0)) {
                result.signal = StepSignal::PositivityViolation;
                break;
            }
        }
    }
    return result;
}

namespace {

// Boundary handling for the heat diffusion fluxes, expressed through the
// ghost relation theta_ghost = ghost_offset + ghost_slope * theta_first.
struct FaceRelation {
    bool active = true;      // Neumann wall: no flux through the face
    double slope = 0.0;      // d(theta_ghost)/d(theta_adjacent)
    double offset = 1.0;     // theta_ghost at theta_adjacent = 0
    double conductivity_theta = 1.0;  // temperature the face coefficient is evaluated at
    double conductivity_v = 1.0;      // ghost-side volume for the face coefficient
};

FaceRelation left_face(DomainKind kind, double v_first) {
    FaceRelation face;
    switch (kind) {
        case DomainKind::Cauchy:
            // Far-field ghost (v, theta) = (1, 1).
            face.slope = 0.0;
            face.offset = 1.0;
            face.conductivity_theta = 1.0;
            face.conductivity_v = 1.0;
            break;
        case DomainKind::HalfLineNeumann:
            face.active = false;
            break;
        case DomainKind::HalfLineDirichlet:
            // theta_ghost = 2 - theta_first keeps the face value pinned at 1.
            // The face coefficient carries the pinned temperature and the
            // mirrored volume so it stays well defined for any theta_first.
            face.slope = -1.0;
            face.offset = 2.0;
            face.conductivity_theta = 1.0;
            face.conductivity_v = v_first;
            break;
        default:
            throw std::invalid_argument("temperature_solve: unknown domain configuration");
    }
    return face;
}

}  // namespace

TemperatureResult temperature_solve(const State& state, std::span<const double> v_new,
                                    std::span<const double> u_new, double dt,
                                    const GasParams& params, const StepControls& controls,
                                    const SourceTerms* sources) {
    if (!(dt > 0.0)) throw std::invalid_argument("temperature_solve: dt must be > 0");
    const std::size_t n = state.grid.n_cells;
    if (v_new.size() != n || u_new.size() != n + 1) {
        throw std::invalid_argument("temperature_solve: field arrays do not match grid");
    }
    const double h = state.grid.h;
    const double lam = dt / (h * h);
    const double t_new = state.t + dt;

    // Per-cell pieces that do not change across Picard passes.
    std::vector<double> work(n);  // R u_x / v_new, multiplies the implicit theta
    std::vector<double> expl(n);  // viscous heating + forcing - explicit work part
    for (std::size_t j = 0; j < n; ++j) {
        const double ux = (u_new[j + 1] - u_new[j]) / h;
        const double mu = transport_coefficients(state.theta[j], params).viscosity;
        work[j] = params.R * ux / v_new[j];
        double value = mu * ux * ux / v_new[j] - work[j] * state.theta[j];
        if (sources && sources->heat) value += sources->heat(state.grid.center(j), t_new);
        expl[j] = value;
    }

    const FaceRelation left = left_face(state.grid.domain_kind, v_new[0]);
    const double kappa_far = params.kappa_bar;  // kappa(1)

    TemperatureResult result;
    std::vector<double> theta_k = state.theta;  // current Picard iterate
    std::vector<double> theta_next(n);
    std::vector<double> g(n), face(n + 1);
    std::vector<double> lower(n - 1), diag(n), upper(n - 1), rhs(n);

    auto solve_pass = [&](const std::vector<double>& coeff_theta) -> bool {
        for (std::size_t j = 0; j < n; ++j) {
            g[j] = transport_coefficients(coeff_theta[j], params).conductivity / v_new[j];
        }
        for (std::size_t i = 1; i < n; ++i) face[i] = 0.5 * (g[i - 1] + g[i]);
        face[0] = left.active
                      ? 0.5 * (transport_coefficients(left.conductivity_theta, params).conductivity /
                                   left.conductivity_v +
                               g[0])
                      : 0.0;
        face[n] = 0.5 * (kappa_far / 1.0 + g[n - 1]);

        // Assemble the increment system: theta_new = theta_old + delta. The
        // right side evaluates the old-state fluxes, so a uniform field keeps
        // delta identically zero.
        for (std::size_t j = 0; j < n; ++j) {
            double d = params.c_v + dt * work[j];
            double r = dt * expl[j];
            // left face of cell j
            if (j > 0) {
                d += lam * face[j];
                lower[j - 1] = -lam * face[j];
                r -= lam * face[j] * (state.theta[j] - state.theta[j - 1]);
            } else if (left.active) {
                const double ghost = left.offset + left.slope * state.theta[0];
                d += lam * face[0] * (1.0 - left.slope);
                r -= lam * face[0] * (state.theta[0] - ghost);
            }
            // right face of cell j
            if (j + 1 < n) {
                d += lam * face[j + 1];
                upper[j] = -lam * face[j + 1];
                r += lam * face[j + 1] * (state.theta[j + 1] - state.theta[j]);
            } else {
                d += lam * face[n];
                r += lam * face[n] * (1.0 - state.theta[n - 1]);  // far-field ghost theta = 1
            }
            diag[j] = d;
            rhs[j] = r;
        }

        std::vector<double> delta = tridiagonal_solve(lower, diag, upper, rhs);
        for (std::size_t j = 0; j < n; ++j) {
            theta_next[j] = state.theta[j] + delta[j];
            if (!std::isfinite(theta_next[j])) {
                result.signal = StepSignal::NonFinite;
                return false;
            }
            if (!(theta_next[j] > 0.0)) {
                result.signal = StepSignal::PositivityViolation;
                return false;
            }
        }
        return true;
    };

    // Predictor with coefficients frozen at the old temperature.
    if (!solve_pass(theta_k)) return result;
    std::swap(theta_k, theta_next);

    // Corrector passes with lagged coefficients until the iterate settles.
    for (int pass = 1; pass <= controls.picard_max; ++pass) {
        if (!solve_pass(theta_k)) return result;
        double diff = 0.0;
        for (std::size_t j = 0; j < n; ++j) {
            diff = std::max(diff, std::abs(theta_next[j] - theta_k[j]));
        }
        std::swap(theta_k, theta_next);
        if (diff < controls.picard_tol) {
            result.theta = std::move(theta_k);
            result.picard_iters = pass;
            return result;
        }
    }
    result.signal = StepSignal::PicardStall;
    result.picard_iters = controls.picard_max;
    return result;
}

double stable_dt(const State& state, const GasParams& params, double safety) {
    const std::size_t n = state.grid.n_cells;
    const double h = state.grid.h;
    double worst = 0.0;
    for (std::size_t j = 0; j < n; ++j) {
        const double ux = std::abs(state.u[j + 1] - state.u[j]) / h;
        const double cs = std::sqrt(params.R * state.theta[j] / state.v[j]);
        worst = std::max(worst, ux + cs);
    }
    return safety * h / worst;
}

SimulationAbortError::SimulationAbortError(State last_valid, std::string failed_stage,
                                           double dt, int rejections)
    : std::runtime_error("simulation abort: dt underflow below dt_min in " + failed_stage +
                         " at t=" + std::to_string(last_valid.t)),
      last_valid_(std::move(last_valid)),
      stage_(std::move(failed_stage)),
      dt_(dt),
      rejections_(rejections) {}

Stepper::Stepper(GasParams params, StepControls controls, SourceTerms sources)
    : params_(std::move(params)), controls_(std::move(controls)), sources_(std::move(sources)) {
    params_.validate();
    controls_.validate();
    desired_dt_ = controls_.dt_init;
}

Stepper::Attempt Stepper::try_step(const State& state, double dt) const {
    Attempt attempt;
    const SourceTerms* src = sources_.any() ? &sources_ : nullptr;

    std::vector<double> u_new = momentum_solve(state, dt, params_, src);
    for (double value : u_new) {
        if (!std::isfinite(value)) {
            attempt.signal = StepSignal::NonFinite;
            attempt.stage = "momentum_solve";
            return attempt;
        }
    }

    ContinuityResult cont = continuity_update(state, u_new, dt, src);
    if (cont.signal != StepSignal::Accepted) {
        attempt.signal = cont.signal;
        attempt.stage = "continuity_update";
        return attempt;
    }

    TemperatureResult temp = temperature_solve(state, cont.v, u_new, dt, params_, controls_, src);
    if (temp.signal != StepSignal::Accepted) {
        attempt.signal = temp.signal;
        attempt.stage = "temperature_solve";
        return attempt;
    }

    State next;
    next.t = state.t + dt;
    next.grid = state.grid;
    next.v = std::move(cont.v);
    next.theta = std::move(temp.theta);
    next.u = std::move(u_new);
    next = apply_boundary(std::move(next), state.grid.domain_kind);

    if (!validate_state(next).ok()) {
        attempt.signal = StepSignal::NonFinite;
        attempt.stage = "validate_state";
        return attempt;
    }
    attempt.ok = true;
    attempt.state = std::move(next);
    attempt.picard_iters = temp.picard_iters;
    return attempt;
}

StepOutcome Stepper::advance(const State& state, double dt_cap) {
    {
        ValidationResult check = validate_state(state);
        if (!check.ok()) {
            throw std::invalid_argument("advance: invalid input state: " + check.describe());
        }
    }
    const double natural = std::clamp(desired_dt_, controls_.dt_min, controls_.dt_max);
    double dt = natural;
    if (dt_cap > 0.0) dt = std::min(dt, dt_cap);

    int rejections = 0;
    for (;;) {
        Attempt attempt = try_step(state, dt);
        if (attempt.ok) {
            if (rejections > 0) {
                // Rejections leave the remembered step at the value that finally worked.
                desired_dt_ = dt;
                streak_ = 0;
            } else if (dt >= natural) {
                ++streak_;
                if (streak_ >= controls_.growth_streak) {
                    const double gate = stable_dt(attempt.state, params_, controls_.safety);
                    desired_dt_ =
                        std::min({desired_dt_ * controls_.growth_factor, controls_.dt_max, gate});
                    desired_dt_ = std::max(desired_dt_, controls_.dt_min);
                    streak_ = 0;
                }
            }
            // An event-capped step (dt < natural) neither grows nor shrinks
            // the remembered step.
            return {std::move(attempt.state), dt, attempt.picard_iters, rejections};
        }
        ++rejections;
        streak_ = 0;
        dt *= 0.5;
        if (dt < controls_.dt_min) {
            throw SimulationAbortError(state, attempt.stage + " (" + to_string(attempt.signal) + ")",
                                       dt, rejections);
        }
    }
}

}  // namespace lagns
