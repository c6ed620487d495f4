#pragma once

#include <stdexcept>

namespace rgap {

/// Numeric failure (bracket overflow, non-convergence). CLI exit code 4.
struct numeric_error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Model has no informative coordinate (all-zero mean vector). CLI exit code 2.
struct degenerate_model_error : std::domain_error {
    using std::domain_error::domain_error;
};

/// Output file cannot be opened or written. CLI exit code 3.
struct io_error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

} // namespace rgap
