#pragma once

#include <cstdint>
#include <optional>
#include <ostream>
#include <stdexcept>
#include <vector>

#include "qwalk/asymptotics.hpp"
#include "qwalk/config.hpp"

namespace qwalk {

enum ExitCode : int { kExitOk = 0, kExitConfig = 1, kExitNumerical = 2, kExitIo = 3 };

class IoError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

struct CompareRow {
    std::int64_t t = 0;
    double var_exact = 0.0;
    double var_predicted = 0.0;
    double abs_err = 0.0;
    double rel_err = 0.0;  // abs_err / var_exact; 0 when both vanish, inf when only var_exact does
};

struct CompareReport {
    std::vector<CompareRow> rows;
    AsymptoticMoments asymptotics;
    /// Least-squares slope of log var_exact against log t over t >= steps / 10.
    /// Empty when fewer than two rows have positive variance.
    std::optional<double> loglog_slope;
};

/// Exact variance from the simulator against variance_coeff * t^2 at t = stride, 2 stride, ..., steps.
CompareReport compare(const RunConfig& cfg);

/// Executes every requested output, writing each data file next to a JSON manifest.
/// Returns an ExitCode; diagnostics go to `err`, progress lines to `log`.
int run(const RunConfig& cfg, std::ostream& log, std::ostream& err);

}  // namespace qwalk
