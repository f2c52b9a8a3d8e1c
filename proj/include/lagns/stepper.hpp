#pragma once

#include <functional>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "lagns/core.hpp"

namespace lagns {

struct StepControls {
    double dt_init = 1e-3;
    double dt_min = 1e-12;
    double dt_max = 1e-1;
    double safety = 0.5;       // explicit-coupling stability safety factor
    double picard_tol = 1e-10; // sup-norm tolerance for the nonlinear heat solve
    int picard_max = 50;       // corrector-pass cap; exceeding it rejects the step
    double growth_factor = 1.2;
    int growth_streak = 5;     // consecutive acceptances before dt grows

    void validate() const;  // throws std::invalid_argument naming the field
};

struct StepOutcome {
    State state;
    double dt_used = 0.0;
    int picard_iters = 0;
    int rejections = 0;
};

// Optional forcing terms (x, t) -> value used by manufactured-solution runs.
// volume forces v_t = u_x + S, momentum forces u_t + P_x = (mu u_x / v)_x + S,
// heat forces c_v theta_t + (R theta / v) u_x = (kappa theta_x / v)_x + mu u_x^2 / v + S.
struct SourceTerms {
    std::function<double(double, double)> volume;
    std::function<double(double, double)> momentum;
    std::function<double(double, double)> heat;
    bool any() const { return static_cast<bool>(volume) || static_cast<bool>(momentum) ||
                              static_cast<bool>(heat); }
};

// Ghost-cell values just outside the truncated domain. The right edge always
// carries the far-field state (1, 1); the left edge depends on the
// configuration: far field for Cauchy, mirrored theta for the Neumann wall,
// theta extrapolated so the face value is 1 for the Dirichlet wall.
struct GhostValues {
    double v_left = 1.0;
    double theta_left = 1.0;
    double v_right = 1.0;
    double theta_right = 1.0;
};
GhostValues ghost_values(const State& state, DomainKind kind);

// Enforces u = 0 on both computational boundary edges (valid for all three
// configurations: walls on the half-line, far-field truncation elsewhere).
State apply_boundary(State state, DomainKind kind);

enum class StepSignal { Accepted, PositivityViolation, PicardStall, NonFinite };
const char* to_string(StepSignal signal);

// Implicit viscous flux, explicit pressure gradient, frozen at the old state.
// Returns the full edge-velocity array with boundary edges set to 0.
std::vector<double> momentum_solve(const State& state, double dt, const GasParams& params,
                                   const SourceTerms* sources = nullptr);

struct ContinuityResult {
    StepSignal signal = StepSignal::Accepted;
    std::vector<double> v;
};
// v_new = v + dt * u_x, exact discrete form of v_t = u_x.
ContinuityResult continuity_update(const State& state, std::span<const double> u_new,
                                   double dt, const SourceTerms* sources = nullptr);

struct TemperatureResult {
    StepSignal signal = StepSignal::Accepted;
    std::vector<double> theta;
    int picard_iters = 0;
};
// Picard iteration with lagged conductivity: diffusion and the work term are
// implicit in theta, viscous heating explicit. picard_iters counts corrector
// passes after the initial solve (a converged linear problem reports 1).
TemperatureResult temperature_solve(const State& state, std::span<const double> v_new,
                                    std::span<const double> u_new, double dt,
                                    const GasParams& params, const StepControls& controls,
                                    const SourceTerms* sources = nullptr);

// Heuristic cap for the explicit pressure coupling:
// safety * h / max_j(|u_x|_j + sqrt(R theta_j / v_j)).
double stable_dt(const State& state, const GasParams& params, double safety);

class SimulationAbortError : public std::runtime_error {
public:
    SimulationAbortError(State last_valid, std::string failed_stage, double dt,
                         int rejections);
    const State& last_valid_state() const { return last_valid_; }
    const std::string& failed_stage() const { return stage_; }
    double dt_at_failure() const { return dt_; }
    int rejections() const { return rejections_; }

private:
    State last_valid_;
    std::string stage_;
    double dt_ = 0.0;
    int rejections_ = 0;
};

// Drives the split scheme momentum -> continuity -> temperature -> boundary,
// halving dt on rejection and growing it after a streak of acceptances. Owns
// the adaptive step size between calls; one Stepper advances one simulation.
class Stepper {
public:
    Stepper(GasParams params, StepControls controls, SourceTerms sources = {});

    // dt_cap > 0 additionally limits the attempted step (used to land exactly
    // on report and snapshot times); it does not shrink the remembered step.
    StepOutcome advance(const State& state, double dt_cap = 0.0);

    double current_dt() const { return desired_dt_; }

private:
    struct Attempt {
        bool ok = false;
        StepSignal signal = StepSignal::Accepted;
        std::string stage;
        State state;
        int picard_iters = 0;
    };
    Attempt try_step(const State& state, double dt) const;

    GasParams params_;
    StepControls controls_;
    SourceTerms sources_;
    double desired_dt_ = 0.0;
    int streak_ = 0;
};

}  // namespace lagns
