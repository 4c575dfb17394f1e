#pragma once

#include <stdexcept>
#include <string>

namespace qgt {

// Base class for every error thrown by the library.
struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct InvalidModel : Error {
    using Error::Error;
};
struct SectorMismatch : Error {
    using Error::Error;
};
struct CapacityExceeded : Error {
    using Error::Error;
};
struct DimensionMismatch : Error {
    using Error::Error;
};
struct EmptySector : Error {
    using Error::Error;
};
struct BadParameterIndex : Error {
    using Error::Error;
};

struct NotConverged : Error {
    double best_residual;
    NotConverged(const std::string& what, double residual)
        : Error(what), best_residual(residual) {}
};

struct DegenerateGroundState : Error {
    using Error::Error;
};
struct QuadratureNotConverged : Error {
    using Error::Error;
};
struct MeshTooCoarse : Error {
    using Error::Error;
};
struct LoopNotClosed : Error {
    using Error::Error;
};
struct GaplessAtFiniteSize : Error {
    using Error::Error;
};
struct OutOfDomain : Error {
    using Error::Error;
};
struct UndefinedExponent : Error {
    using Error::Error;
};

struct IllConditionedFit : Error {
    double condition_number;
    IllConditionedFit(const std::string& what, double cond)
        : Error(what), condition_number(cond) {}
};

struct BadData : Error {
    using Error::Error;
};
struct SchemaError : Error {
    using Error::Error;
};
struct InvalidPlan : Error {
    using Error::Error;
};

}  // namespace qgt
