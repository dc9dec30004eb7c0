#pragma once

#include <stdexcept>
#include <string>

namespace nls {

/// Base for all library errors. Validation errors are precondition and
/// configuration failures (CLI exit code 2); solver errors are failures
/// that occur while computing (CLI exit code 3).
class Error : public std::runtime_error {
public:
    explicit Error(const std::string& msg) : std::runtime_error(msg) {}
};

class ValidationError : public Error {
public:
    using Error::Error;
};

class SolverError : public Error {
public:
    using Error::Error;
};

struct DegenerateBounds : ValidationError {
    using ValidationError::ValidationError;
};

struct TooFewCells : ValidationError {
    using ValidationError::ValidationError;
};

struct ShapeMismatch : ValidationError {
    using ValidationError::ValidationError;
};

/// Grid spacing too coarse to resolve the kernel support (h > gamma*sigma).
/// Carries the smallest per-axis cell counts that would restore h <= gamma*sigma.
struct GridTooCoarse : ValidationError {
    GridTooCoarse(const std::string& msg, int nx, int ny)
        : ValidationError(msg), min_cells_x(nx), min_cells_y(ny) {}
    int min_cells_x = 0;
    int min_cells_y = 0;
};

struct TooLarge : ValidationError {
    using ValidationError::ValidationError;
};

struct KernelNotSymmetric : ValidationError {
    using ValidationError::ValidationError;
};

struct NonpositiveTestFunction : ValidationError {
    using ValidationError::ValidationError;
};

struct MissingTimeDerivative : ValidationError {
    using ValidationError::ValidationError;
};

struct EigenvalueNotNegative : ValidationError {
    using ValidationError::ValidationError;
};

struct IncompatibleLimit : ValidationError {
    using ValidationError::ValidationError;
};

/// Config rejected; `path` is a JSON-pointer-style location of the bad field.
struct ConfigInvalid : ValidationError {
    ConfigInvalid(const std::string& path_, const std::string& msg)
        : ValidationError(path_ + ": " + msg), path(path_) {}
    std::string path;
};

struct UnknownSubcommand : ValidationError {
    using ValidationError::ValidationError;
};

struct NegativityBreach : SolverError {
    using SolverError::SolverError;
};

/// Power iteration failed to stabilize; carries the last two radius estimates.
struct NoConvergence : SolverError {
    NoConvergence(const std::string& msg, double prev, double last)
        : SolverError(msg), radius_prev(prev), radius_last(last) {}
    double radius_prev = 0.0;
    double radius_last = 0.0;
};

struct ConstructionFailed : SolverError {
    using SolverError::SolverError;
};

}  // namespace nls
