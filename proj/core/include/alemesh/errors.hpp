#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace alemesh {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Invalid user input (parameters, file contents, names).
class ConfigError : public Error {
public:
    using Error::Error;
};

/// Base for failures of the numerics on otherwise valid input.
class NumericalError : public Error {
public:
    using Error::Error;
};

class MeshError : public Error {
public:
    using Error::Error;
};

class DegenerateElementError : public NumericalError {
public:
    DegenerateElementError(std::size_t element, const std::string& what);
    std::size_t element() const noexcept { return element_; }

private:
    std::size_t element_;
};

class DegenerateEdgeError : public NumericalError {
public:
    DegenerateEdgeError(std::size_t edge, const std::string& what);
    std::size_t edge() const noexcept { return edge_; }

private:
    std::size_t edge_;
};

/// |grad d| fell below the gradient floor.
class SingularSurfaceError : public NumericalError {
public:
    using NumericalError::NumericalError;
};

class ProjectionError : public NumericalError {
public:
    ProjectionError(double residual, const std::string& what);
    double residual() const noexcept { return residual_; }

private:
    double residual_;
};

/// A time step could not be completed (Newton divergence, singular matrix).
class StepFailure : public NumericalError {
public:
    StepFailure(double time, double residual, const std::string& what);
    double time() const noexcept { return time_; }
    double residual() const noexcept { return residual_; }

private:
    double time_;
    double residual_;
};

}  // namespace alemesh
