#include "alemesh/errors.hpp"

namespace alemesh {

DegenerateElementError::DegenerateElementError(std::size_t element, const std::string& what)
    : NumericalError(what), element_(element) {}

DegenerateEdgeError::DegenerateEdgeError(std::size_t edge, const std::string& what)
    : NumericalError(what), edge_(edge) {}

ProjectionError::ProjectionError(double residual, const std::string& what)
    : NumericalError(what), residual_(residual) {}

StepFailure::StepFailure(double time, double residual, const std::string& what)
    : NumericalError(what), time_(time), residual_(residual) {}

}  // namespace alemesh
