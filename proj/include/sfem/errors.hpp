#pragma once

#include <stdexcept>
#include <string>

namespace sfem {

struct ParameterError : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

struct MeshError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct GeometryError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct AssemblyError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct SolverError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct NotSpdError : SolverError {
    using SolverError::SolverError;
};

struct IoError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

} // namespace sfem
