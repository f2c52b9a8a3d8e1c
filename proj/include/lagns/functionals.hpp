#pragma once

#include <span>
#include <vector>

#include "lagns/core.hpp"

namespace lagns {

// The seven squared norms tracked along a run: instantaneous space norms plus
// backward-difference time derivatives over one step.
struct SquaredNormSuite {
    double ux = 0.0;               // ||u_x||^2
    double thetax_weighted = 0.0;  // ||theta^{-1/2} theta_x||^2
    double vx = 0.0;               // ||v_x||^2
    double uxx = 0.0;              // ||u_xx||^2
    double ut = 0.0;               // ||u_t||^2
    double thetat = 0.0;           // ||theta_t||^2
    double thetaxx = 0.0;          // ||theta_xx||^2
};

// One time-level evaluation of every monitored functional and bound.
struct EstimateReport {
    double t = 0.0;
    double E = 0.0;                // entropy energy
    double W = 0.0;                // instantaneous dissipation
    double cumulative_W = 0.0;     // left-endpoint time integral of W
    double energy_residual = 0.0;  // E + cumulative_W - e0
    double min_v = 0.0;
    double max_v = 0.0;
    double min_theta = 0.0;
    double max_theta = 0.0;
    double meas_theta_lt_half = 0.0;
    double meas_theta_gt_2 = 0.0;
    int slab_violations = 0;
    SquaredNormSuite norms;
    double representation_residual = 0.0;
};

struct Slab {
    double x_lo = 0.0;
    double x_hi = 0.0;
    double integral_v = 0.0;
    double integral_theta = 0.0;
    double anchor_x = 0.0;        // cell center realizing the smallest entropy
    double anchor_entropy = 0.0;  // (v - log v - 1) + (theta - log theta - 1) there
    bool v_ok = true;
    bool theta_ok = true;
};

// Unit-mass slabs at integer mass coordinates. Only complete slabs contained
// in the computational domain are checked; integrals use the same midpoint
// quadrature as the entropy energy, restricted by cell/slab overlap.
struct SlabDecomposition {
    std::vector<Slab> slabs;
    int violations = 0;
};

// (v - log v - 1) + (theta - log theta - 1); nonnegative, zero at (1, 1).
double point_entropy(double v, double theta);

// Midpoint quadrature of u^2/2 + (v - log v - 1) + (theta - log theta - 1)
// with u^2 averaged from the two adjacent edges onto each center.
double entropy_energy(const State& state);

// Quadrature of kappa(theta) theta_x^2 / (v theta^2) + mu(theta) u_x^2 / (v theta);
// theta_x by centered edge differences, u_x by cell differences.
double dissipation(const State& state, const GasParams& params);

struct JensenRoots {
    double alpha1 = 1.0;
    double alpha2 = 1.0;
};

// The two roots of x - log x - 1 = e0 with 0 < alpha1 <= 1 <= alpha2,
// located by bisection on (0, 1] and [1, inf).
JensenRoots jensen_roots(double e0);

SlabDecomposition slab_check(const State& state, double alpha1, double alpha2,
                             double tol = 1e-6);

struct LevelSetMeasures {
    double below_half = 0.0;
    double above_two = 0.0;
};

// Whole-cell measures of {theta < 1/2} and {theta > 2}.
LevelSetMeasures level_set_measures(const State& state);

// 2 e0 / (2 log 2 - 1), the bound on the combined level-set measure.
double level_set_bound(double e0);

SquaredNormSuite norm_suite(const State& state, const State& prev, double dt);

// Maximum relative defect of the volume representation identity
//   v(x,t) = D_N(x,t) Y_N(t) (1 + int_0^t theta/(D_N Y_N) dtau)
// over the cell centers of slab [N, N+1], evaluated at the final snapshot
// time with trapezoid quadrature in time. Snapshots must start at t = 0,
// share one grid, and (for t > 0) be dense enough for the quadrature.
double representation_residual(std::span<const State> snapshots, long slab_index);

// Assembles a full report. prev may be null (time-derivative norms report 0,
// as for the initial report of a run).
EstimateReport evaluate_report(const State& state, const State* prev, double dt,
                               const GasParams& params, double e0, const JensenRoots& roots,
                               double cumulative_W, double representation_residual,
                               double slab_tol = 1e-6);

}  // namespace lagns
