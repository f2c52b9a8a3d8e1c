#include "lagns/functionals.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>
#include <string>

namespace lagns {

namespace {

void require_valid(const State& state, const char* where) {
    ValidationResult check = validate_state(state);
    if (!check.ok()) {
        throw std::domain_error(std::string(where) + ": invalid state: " + check.describe());
    }
}

double entropy_f(double x) { return x - std::log(x) - 1.0; }

}  // namespace

double point_entropy(double v, double theta) { return entropy_f(v) + entropy_f(theta); }

double entropy_energy(const State& state) {
    require_valid(state, "entropy_energy");
    const std::size_t n = state.grid.n_cells;
    const double h = state.grid.h;
    double total = 0.0;
    for (std::size_t j = 0; j < n; ++j) {
        const double u_sq = 0.5 * (state.u[j] * state.u[j] + state.u[j + 1] * state.u[j + 1]);
        total += (0.5 * u_sq + point_entropy(state.v[j], state.theta[j])) * h;
    }
    return total;
}

double dissipation(const State& state, const GasParams& params) {
    require_valid(state, "dissipation");
    const std::size_t n = state.grid.n_cells;
    const double h = state.grid.h;

    double total = 0.0;
    // u_x^2 term on cells
    for (std::size_t j = 0; j < n; ++j) {
        const double ux = (state.u[j + 1] - state.u[j]) / h;
        const double mu = transport_coefficients(state.theta[j], params).viscosity;
        total += mu * ux * ux / (state.v[j] * state.theta[j]) * h;
    }
    // theta_x^2 term on interior edges, coefficient averaged from cells
    std::vector<double> coeff(n);
    for (std::size_t j = 0; j < n; ++j) {
        const double kappa = transport_coefficients(state.theta[j], params).conductivity;
        coeff[j] = kappa / (state.v[j] * state.theta[j] * state.theta[j]);
    }
    for (std::size_t i = 1; i < n; ++i) {
        const double tx = (state.theta[i] - state.theta[i - 1]) / h;
        total += 0.5 * (coeff[i - 1] + coeff[i]) * tx * tx * h;
    }
    return total;
}

JensenRoots jensen_roots(double e0) {
    if (!(e0 >= 0.0) || !std::isfinite(e0)) {
        throw std::domain_error("jensen_roots: e0 must be finite and >= 0");
    }
    if (e0 == 0.0) return {1.0, 1.0};

    auto bisect = [&](double lo, double hi, bool decreasing) {
        // Invariant: the root lies in [lo, hi]. Runs to floating-point
        // exhaustion of the bracket.
        for (int iter = 0; iter < 2000; ++iter) {
            const double mid = 0.5 * (lo + hi);
            if (mid == lo || mid == hi) break;
            const bool ge = entropy_f(mid) >= e0;
            if (ge == decreasing) {
                lo = mid;
            } else {
                hi = mid;
            }
        }
        return std::abs(entropy_f(lo) - e0) <= std::abs(entropy_f(hi) - e0) ? lo : hi;
    };

    double a = 0.5;
    while (entropy_f(a) < e0) {
        a *= 0.5;
        if (a == 0.0) throw std::domain_error("jensen_roots: e0 too large");
    }
    const double alpha1 = bisect(a, 1.0, /*decreasing=*/true);

    double b = 2.0;
    while (entropy_f(b) < e0) {
        b *= 2.0;
        if (!std::isfinite(b)) throw std::domain_error("jensen_roots: e0 too large");
    }
    const double alpha2 = bisect(1.0, b, /*decreasing=*/false);
    return {alpha1, alpha2};
}

SlabDecomposition slab_check(const State& state, double alpha1, double alpha2, double tol) {
    require_valid(state, "slab_check");
    const MassGrid& grid = state.grid;
    if (grid.total_mass() < 1.0) {
        throw std::invalid_argument("slab_check: unit slab exceeds the computational domain");
    }
    const double x_left = grid.x_left();
    const double h = grid.h;
    const long m_first = static_cast<long>(std::ceil(grid.x_left() - 1e-12));
    const long m_last = static_cast<long>(std::floor(grid.x_right() + 1e-12)) - 1;

    SlabDecomposition result;
    for (long m = m_first; m <= m_last; ++m) {
        Slab slab;
        slab.x_lo = static_cast<double>(m);
        slab.x_hi = static_cast<double>(m + 1);
        slab.anchor_entropy = std::numeric_limits<double>::infinity();

        long j0 = static_cast<long>(std::floor((slab.x_lo - x_left) / h)) - 1;
        long j1 = static_cast<long>(std::ceil((slab.x_hi - x_left) / h)) + 1;
        j0 = std::max<long>(j0, 0);
        j1 = std::min<long>(j1, static_cast<long>(grid.n_cells));
        for (long j = j0; j < j1; ++j) {
            const double cell_lo = x_left + static_cast<double>(j) * h;
            const double cell_hi = cell_lo + h;
            const double w = std::max(0.0, std::min(cell_hi, slab.x_hi) - std::max(cell_lo, slab.x_lo));
            if (w <= 0.0) continue;
            const auto idx = static_cast<std::size_t>(j);
            slab.integral_v += state.v[idx] * w;
            slab.integral_theta += state.theta[idx] * w;
            const double ent = point_entropy(state.v[idx], state.theta[idx]);
            if (ent < slab.anchor_entropy) {
                slab.anchor_entropy = ent;
                slab.anchor_x = grid.center(idx);
            }
        }
        slab.v_ok = slab.integral_v >= alpha1 - tol && slab.integral_v <= alpha2 + tol;
        slab.theta_ok = slab.integral_theta >= alpha1 - tol && slab.integral_theta <= alpha2 + tol;
        if (!slab.v_ok || !slab.theta_ok) ++result.violations;
        result.slabs.push_back(slab);
    }
    return result;
}

LevelSetMeasures level_set_measures(const State& state) {
    require_valid(state, "level_set_measures");
    LevelSetMeasures measures;
    for (double theta : state.theta) {
        if (theta < 0.5) measures.below_half += state.grid.h;
        if (theta > 2.0) measures.above_two += state.grid.h;
    }
    return measures;
}

double level_set_bound(double e0) { return 2.0 * e0 / (2.0 * std::log(2.0) - 1.0); }

SquaredNormSuite norm_suite(const State& state, const State& prev, double dt) {
    require_valid(state, "norm_suite");
    require_valid(prev, "norm_suite(prev)");
    if (!(state.grid == prev.grid)) {
        throw std::domain_error("norm_suite: states live on different grids");
    }
    if (!(dt > 0.0)) throw std::domain_error("norm_suite: dt must be > 0");

    const std::size_t n = state.grid.n_cells;
    const double h = state.grid.h;
    SquaredNormSuite norms;

    for (std::size_t j = 0; j < n; ++j) {
        const double ux = (state.u[j + 1] - state.u[j]) / h;
        norms.ux += ux * ux * h;
        const double thetat = (state.theta[j] - prev.theta[j]) / dt;
        norms.thetat += thetat * thetat * h;
    }
    for (std::size_t i = 1; i < n; ++i) {
        const double tx = (state.theta[i] - state.theta[i - 1]) / h;
        const double theta_edge = 0.5 * (state.theta[i - 1] + state.theta[i]);
        norms.thetax_weighted += tx * tx / theta_edge * h;
        const double vx = (state.v[i] - state.v[i - 1]) / h;
        norms.vx += vx * vx * h;
    }
    for (std::size_t i = 1; i < n; ++i) {
        const double uxx = (state.u[i + 1] - 2.0 * state.u[i] + state.u[i - 1]) / (h * h);
        norms.uxx += uxx * uxx * h;
    }
    for (std::size_t j = 1; j + 1 < n; ++j) {
        const double txx =
            (state.theta[j + 1] - 2.0 * state.theta[j] + state.theta[j - 1]) / (h * h);
        norms.thetaxx += txx * txx * h;
    }
    for (std::size_t i = 0; i <= n; ++i) {
        const double ut = (state.u[i] - prev.u[i]) / dt;
        norms.ut += ut * ut * h;
    }
    return norms;
}

namespace {

// Piecewise-linear interpolation of a cell-centered field at an arbitrary
// mass coordinate, clamped at the outermost centers.
double interp_centers(const MassGrid& grid, const std::vector<double>& field, double x) {
    const double first = grid.center(0);
    const double last = grid.center(grid.n_cells - 1);
    if (x <= first) return field.front();
    if (x >= last) return field.back();
    const double s = (x - first) / grid.h;
    const auto j = static_cast<std::size_t>(s);
    const double frac = s - static_cast<double>(j);
    return field[j] * (1.0 - frac) + field[std::min(j + 1, grid.n_cells - 1)] * frac;
}

// Integral of the piecewise-linear edge field w from x_left to x (exact for
// the linear interpolant): cum holds the integral at edges.
double edge_integral_at(const MassGrid& grid, const std::vector<double>& w,
                        const std::vector<double>& cum, double x) {
    const double h = grid.h;
    double s = (x - grid.x_left()) / h;
    s = std::clamp(s, 0.0, static_cast<double>(grid.n_cells));
    auto i = static_cast<std::size_t>(s);
    if (i >= grid.n_cells) i = grid.n_cells - 1;
    const double frac = s - static_cast<double>(i);
    const double w_at = w[i] * (1.0 - frac) + w[i + 1] * frac;
    return cum[i] + frac * h * 0.5 * (w[i] + w_at);
}

}  // namespace

double representation_residual(std::span<const State> snapshots, long slab_index) {
    if (snapshots.empty()) {
        throw std::invalid_argument("representation_residual: no snapshots");
    }
    const State& first = snapshots.front();
    const MassGrid& grid = first.grid;
    for (const State& s : snapshots) {
        if (!(s.grid == grid)) {
            throw std::invalid_argument("representation_residual: snapshots on different grids");
        }
    }
    if (std::abs(first.t) > 1e-12) {
        throw std::invalid_argument("representation_residual: snapshots must start at t = 0");
    }
    const double t_final = snapshots.back().t;
    if (t_final > 0.0) {
        double max_gap = 0.0;
        for (std::size_t k = 1; k < snapshots.size(); ++k) {
            const double gap = snapshots[k].t - snapshots[k - 1].t;
            if (!(gap > 0.0)) {
                throw std::invalid_argument(
                    "representation_residual: snapshot times must strictly increase");
            }
            max_gap = std::max(max_gap, gap);
        }
        if (snapshots.size() < 3 || max_gap > 0.5 * t_final + 1e-12) {
            throw std::runtime_error(
                "representation_residual: insufficient snapshot density; need interval <= " +
                std::to_string(0.5 * t_final) + ", have " + std::to_string(max_gap));
        }
    }

    const double anchor = static_cast<double>(slab_index);
    if (anchor < grid.x_left() - 1e-12 || anchor + 1.0 > grid.x_right() + 1e-12) {
        throw std::invalid_argument("representation_residual: slab outside the domain");
    }

    // Probe points: cell centers inside [N, N+1].
    std::vector<std::size_t> probes;
    for (std::size_t j = 0; j < grid.n_cells; ++j) {
        const double x = grid.center(j);
        if (x >= anchor && x <= anchor + 1.0) probes.push_back(j);
    }
    if (probes.empty()) {
        throw std::invalid_argument("representation_residual: slab contains no cell centers");
    }

    const std::size_t count = snapshots.size();
    const std::vector<double>& u0 = first.u;
    const std::vector<double>& v0 = first.v;

    // sigma(N, t_k) and D_N(probe, t_k) per snapshot. Unit constitutive
    // constants are assumed (the normalization the identity is derived in).
    std::vector<double> sigma_at_anchor(count);
    std::vector<std::vector<double>> d_factor(count, std::vector<double>(probes.size()));
    std::vector<double> w(grid.n_edges()), cum(grid.n_edges());
    std::vector<double> sigma_cells(grid.n_cells);
    for (std::size_t k = 0; k < count; ++k) {
        const State& s = snapshots[k];
        for (std::size_t j = 0; j < grid.n_cells; ++j) {
            const double ux = (s.u[j + 1] - s.u[j]) / grid.h;
            sigma_cells[j] = ux / s.v[j] - s.theta[j] / s.v[j];
        }
        sigma_at_anchor[k] = interp_centers(grid, sigma_cells, anchor);

        for (std::size_t i = 0; i < grid.n_edges(); ++i) w[i] = s.u[i] - u0[i];
        cum[0] = 0.0;
        for (std::size_t i = 0; i + 1 < grid.n_edges(); ++i) {
            cum[i + 1] = cum[i] + grid.h * 0.5 * (w[i] + w[i + 1]);
        }
        const double at_anchor = edge_integral_at(grid, w, cum, anchor);
        for (std::size_t p = 0; p < probes.size(); ++p) {
            const double at_probe = edge_integral_at(grid, w, cum, grid.center(probes[p]));
            d_factor[k][p] = v0[probes[p]] * std::exp(at_probe - at_anchor);
        }
    }

    // Y_N(t_k) = exp of the cumulative trapezoid integral of sigma(N, .).
    std::vector<double> y_factor(count);
    double integral = 0.0;
    y_factor[0] = 1.0;
    for (std::size_t k = 1; k < count; ++k) {
        integral += 0.5 * (sigma_at_anchor[k - 1] + sigma_at_anchor[k]) *
                    (snapshots[k].t - snapshots[k - 1].t);
        y_factor[k] = std::exp(integral);
    }

    double worst = 0.0;
    const State& last = snapshots.back();
    for (std::size_t p = 0; p < probes.size(); ++p) {
        double time_integral = 0.0;
        for (std::size_t k = 1; k < count; ++k) {
            const double f_prev =
                snapshots[k - 1].theta[probes[p]] / (d_factor[k - 1][p] * y_factor[k - 1]);
            const double f_curr = snapshots[k].theta[probes[p]] / (d_factor[k][p] * y_factor[k]);
            time_integral += 0.5 * (f_prev + f_curr) * (snapshots[k].t - snapshots[k - 1].t);
        }
        const double reconstructed =
            d_factor[count - 1][p] * y_factor[count - 1] * (1.0 + time_integral);
        const double simulated = last.v[probes[p]];
        worst = std::max(worst, std::abs(reconstructed - simulated) / simulated);
    }
    return worst;
}

EstimateReport evaluate_report(const State& state, const State* prev, double dt,
                               const GasParams& params, double e0, const JensenRoots& roots,
                               double cumulative_W, double representation_residual_value,
                               double slab_tol) {
    EstimateReport report;
    report.t = state.t;
    report.E = entropy_energy(state);
    report.W = dissipation(state, params);
    report.cumulative_W = cumulative_W;
    report.energy_residual = report.E + cumulative_W - e0;
    report.min_v = *std::min_element(state.v.begin(), state.v.end());
    report.max_v = *std::max_element(state.v.begin(), state.v.end());
    report.min_theta = *std::min_element(state.theta.begin(), state.theta.end());
    report.max_theta = *std::max_element(state.theta.begin(), state.theta.end());
    const LevelSetMeasures measures = level_set_measures(state);
    report.meas_theta_lt_half = measures.below_half;
    report.meas_theta_gt_2 = measures.above_two;
    report.slab_violations = slab_check(state, roots.alpha1, roots.alpha2, slab_tol).violations;
    if (prev != nullptr) report.norms = norm_suite(state, *prev, dt);
    report.representation_residual = representation_residual_value;
    return report;
}

}  // namespace lagns
