#pragma once

#include <span>
#include <string>
#include <vector>

#include "lagns/core.hpp"
#include "lagns/stepper.hpp"

namespace lagns {

enum class InitialFamily { Constant, GaussianBump, CompactPerturbation };

const char* to_string(InitialFamily family);

// Smooth perturbations of the far-field state (1, 0, 1), identically equal to
// it outside the core region so truncation at the computational boundary is
// exact. For Cauchy runs the core is |x| <= core_radius; for half-line runs
// it is [0, core_radius] with the bump centered at core_radius / 2.
struct InitialDataSpec {
    InitialFamily family = InitialFamily::Constant;
    double a_v = 0.0;
    double a_u = 0.0;
    double a_theta = 0.0;
    double width = 1.0;        // Gaussian: std deviation; compact bump: support radius
    double core_radius = 2.0;

    bool operator==(const InitialDataSpec&) const = default;
};

struct InitialData {
    State state;
    double e0 = 0.0;  // entropy energy of the initial data
};

// C-infinity bump, exp(1 - 1/(1 - r^2)) inside |r| < 1, zero outside.
double compact_bump(double r);

InitialData make_initial_data(const InitialDataSpec& spec, const MassGrid& grid);

// Closed-form target fields (far-field (1, 0, 1), compactly supported
// perturbation) together with the forcing that makes them an exact solution
// of the forced system. Cases live on the Cauchy configuration.
class ManufacturedCase {
public:
    struct FieldValue {
        double f = 0.0;
        double ft = 0.0;
        double fx = 0.0;
        double fxx = 0.0;
    };

    std::string id;
    GasParams params;
    double L = 4.0;
    double t_end = 0.25;

    FieldValue v_field(double x, double t) const;
    FieldValue u_field(double x, double t) const;
    FieldValue theta_field(double x, double t) const;

    double source_volume(double x, double t) const;
    double source_momentum(double x, double t) const;
    double source_heat(double x, double t) const;

    SourceTerms sources() const;
    State initial_state(const MassGrid& grid) const;

    struct SupErrors {
        double v = 0.0;
        double u = 0.0;
        double theta = 0.0;
    };
    SupErrors sup_errors(const State& state) const;

private:
    friend ManufacturedCase manufactured_case(const std::string& id);

    double decay_ = 1.0;
    double wavenumber_ = 0.0;
    double support_ = 3.0;
    double amp_v_ = 0.0, amp_u_ = 0.0, amp_theta_ = 0.0;
    double phase_v_ = 0.0, phase_u_ = 0.0, phase_theta_ = 0.0;

    FieldValue field(double x, double t, double base, double amp, double phase) const;
};

// Built-in catalogue: "constant" plus time-decaying sine perturbations
// "sine-b0.5", "sine-b1", "sine-b2" (the suffix is the conductivity exponent).
ManufacturedCase manufactured_case(const std::string& id);
std::vector<std::string> manufactured_case_ids();

class StudyError : public std::runtime_error {
public:
    StudyError(std::size_t n_cells, const std::string& what);
    std::size_t n_cells() const { return n_cells_; }

private:
    std::size_t n_cells_;
};

struct StudyLevel {
    std::size_t n_cells = 0;
    double h = 0.0;
    double dt = 0.0;
    double err_v = 0.0;
    double err_u = 0.0;
    double err_theta = 0.0;
};

struct OrderReport {
    std::vector<StudyLevel> levels;
    double slope_v = 0.0;
    double slope_u = 0.0;
    double slope_theta = 0.0;
    bool exact = false;  // all errors at machine precision; slopes meaningless
};

// Runs the stepper with the case sources injected on each resolution
// (dt scaled proportionally to h from controls.dt_init at the first level),
// measures sup-norm errors against the targets at t_end and fits
// least-squares convergence slopes per field.
OrderReport convergence_study(const ManufacturedCase& mcase,
                              std::span<const std::size_t> resolutions,
                              const StepControls& controls);

}  // namespace lagns
