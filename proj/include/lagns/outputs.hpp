#pragma once

#include <string>
#include <vector>

#include "lagns/runner.hpp"

namespace lagns {

class OutputError : public std::runtime_error {
public:
    explicit OutputError(const std::string& what) : std::runtime_error(what) {}
};

// Guards a run directory against concurrent writers via a lock file; the
// lock is released on destruction.
class OutputLock {
public:
    explicit OutputLock(const std::string& directory);
    ~OutputLock();
    OutputLock(const OutputLock&) = delete;
    OutputLock& operator=(const OutputLock&) = delete;

private:
    std::string path_;
};

struct FileManifest {
    std::vector<std::string> files;
};

// Emits series.csv, snap_<index>.csv per snapshot and summary.json into
// output_dir (created if missing). Files are written through temporaries so
// a failure leaves no partial file behind.
FileManifest write_outputs(const RunHistory& history, const std::string& output_dir);

// Reads a snapshot file back into a State, bit-exactly.
State read_snapshot(const std::string& path);

// Reads series.csv rows (all columns).
std::vector<SeriesRow> read_series(const std::string& path);

struct AuditResult {
    bool pass = true;
    std::vector<std::string> findings;
};

// Re-checks the monitored bounds from a series file alone: positivity, zero
// slab violations, the level-set measure bound and the energy residual
// threshold (residual_tol <= 0 selects the automatic value from the
// recovered e0).
AuditResult audit_series(const std::string& path, double residual_tol = 0.0);

}  // namespace lagns
