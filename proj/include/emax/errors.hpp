#pragma once

#include <stdexcept>
#include <string>

namespace emax {

/// An iterative method exhausted its iteration budget.
struct nonconvergence_error : std::runtime_error {
    int iterations;
    double last_measure;  // residual or movement at the point of giving up

    nonconvergence_error(const std::string& what, int iters, double measure)
        : std::runtime_error(what), iterations(iters), last_measure(measure) {}
};

/// NaN/Inf or a violated SPD assumption surfaced mid-iteration.
struct numerical_breakdown_error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Input that is structurally valid but numerically degenerate (e.g. the zero field).
struct degenerate_input_error : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

/// A file does not follow the expected on-disk format.
struct format_error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Filesystem-level read/write failure.
struct io_error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

}  // namespace emax
