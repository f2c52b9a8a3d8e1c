#pragma once

#include <string>
#include <vector>

#include "lagns/config.hpp"
#include "lagns/functionals.hpp"

namespace lagns {

struct SeriesRow {
    EstimateReport report;
    double dt = 0.0;       // step size of the step ending at report.t (0 at t = 0)
    int picard_iters = 0;  // Picard count of that step
};

struct BoundVerdicts {
    bool positivity = true;       // min v, min theta > 0 at every report
    bool slab_bounds = true;      // zero Jensen slab violations throughout
    bool level_set = true;        // measure bound (<= 2 e0 / (2 log 2 - 1)) throughout
    bool energy_residual = true;  // |E + cumulative_W - e0| within tolerance throughout
};

// Time series of estimate reports plus periodic state snapshots and run
// metadata; the unit the output writer serializes.
struct RunHistory {
    std::vector<SeriesRow> rows;
    std::vector<State> snapshots;
    double e0 = 0.0;
    JensenRoots roots;
    std::string config_hash;
    double wall_time_s = 0.0;
    long total_steps = 0;
    long total_rejections = 0;
    bool reached_t_end = false;
    bool aborted = false;
    std::string abort_reason;
    BoundVerdicts bounds;

    bool pass() const {
        return reached_t_end && !aborted && bounds.positivity && bounds.slab_bounds &&
               bounds.level_set && bounds.energy_residual;
    }
};

// Builds grid and initial data, records e0 and its Jensen roots, then loops
// the stepper until t_end, emitting reports at report_every and snapshots at
// snapshot_every (steps are capped so both are hit exactly). A stepper abort
// is captured in the history rather than thrown, so the partial series can
// still be written to disk.
RunHistory run(const RunConfig& config);

}  // namespace lagns
