#pragma once

// Batch command implementations behind the CLI binary. Each command maps a
// validated RunConfig to a deterministic, N-sorted record list.

#include "fuzzy/records.hpp"

namespace fuzzy {

struct RunOutput {
    std::vector<ResultRecord> records;
    bool numerical_failure = false;
};

/// Per-N coordinate quantization residuals against (2/(N+2)) J^i, the Casimir
/// identity residual and the operator norm trend of T(x3).
RunOutput cmd_quantize(const RunConfig& config);

/// Per-N bracket residual ||[T(x1), T(x2)] - i hbar T(x3)|| with its closed
/// form 4/(N+2)^2, plus the fitted log-log slope when >= 3 scan points exist.
RunOutput cmd_scan_dirac(const RunConfig& config);

/// Integer certification pipeline across the scan: per-N certificate fields,
/// block relation residuals, squash spreads, then the fitted Laurent trace
/// density and per-N integer distances.
RunOutput cmd_certify(const RunConfig& config);

/// Excluded parameter values 2/(k - c + 1/2) interleaved with the allowed
/// values 2/N, with collision flags.
RunOutput cmd_exclusions(const RunConfig& config);

/// Full driver: parse argv, run the command, write json/csv to --out or
/// stdout. Returns 0 on success, 1 when numerical-failure records are
/// present, 2 on usage errors.
int run_cli(int argc, const char* const* argv);

}  // namespace fuzzy
