#pragma once
// Exception hierarchy for the verification engine. Every failure mode the
// library can detect maps to one of these types so callers (CLI, tests) can
// translate them into exit codes uniformly.

#include <stdexcept>
#include <string>

namespace cskk {

/// Base class for all library errors.
struct error : std::runtime_error {
    explicit error(const std::string& msg) : std::runtime_error(msg) {}
};

/// Metric (or other symmetric matrix) not positive definite / numerically singular.
struct singular_metric_error : error {
    explicit singular_metric_error(const std::string& msg) : error(msg) {}
};

/// A finite-difference stencil would leave the chart on a non-periodic axis,
/// or a field evaluated to a non-finite value.
struct derivative_error : error {
    explicit derivative_error(const std::string& msg) : error(msg) {}
};

/// Frame-consistency violation (e.g. a spin connection whose lowered form is
/// not antisymmetric within tolerance was passed to the reduction).
struct frame_error : error {
    explicit frame_error(const std::string& msg) : error(msg) {}
};

/// Invalid quadrature request (too few points, rule/axis mismatch, NaN sample).
struct quadrature_error : error {
    explicit quadrature_error(const std::string& msg) : error(msg) {}
};

/// Invalid chart domain (zero-length axis, bad dimension, bad index).
struct chart_error : error {
    explicit chart_error(const std::string& msg) : error(msg) {}
};

/// Configuration / preset / CLI / file-IO problems. CLI maps these to exit code 2.
struct config_error : error {
    explicit config_error(const std::string& msg) : error(msg) {}
};

} // namespace cskk
