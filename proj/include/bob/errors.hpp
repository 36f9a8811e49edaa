#pragma once

#include <stdexcept>
#include <string>

namespace bob {

/// Base class for every recoverable dynamics/geometry failure.
struct BilliardError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Bounce landed within tol_corner of a polygon vertex or an arc endpoint,
/// where the reflection law is undefined.
struct DegenerateBounce : BilliardError {
    using BilliardError::BilliardError;
};

/// Apex of a visual-cone query is inside or on the shape (or cannot see it).
struct InsideShape : BilliardError {
    using BilliardError::BilliardError;
};

/// Boundary parameter points at a polygon vertex or arc endpoint.
struct OnCorner : BilliardError {
    using BilliardError::BilliardError;
};

/// Segment-map state whose bounce misses [-1, 1].
struct BounceOffSegment : BilliardError {
    using BilliardError::BilliardError;
};

/// Iterate landed outside the visibility domain.
struct LeftVisibility : BilliardError {
    using BilliardError::BilliardError;
};

/// Orbit is a fixed point; the requested quantity is undefined.
struct DegenerateOrbit : BilliardError {
    using BilliardError::BilliardError;
};

/// Sampled curvature along an arc is neither monotone nor constant.
struct NotMonotone : BilliardError {
    using BilliardError::BilliardError;
};

/// A finite-difference probe stepped outside the visibility domain.
struct PerturbationLeftDomain : BilliardError {
    using BilliardError::BilliardError;
};

/// Config text does not match the schema (type/key/structure level).
struct SchemaError : std::runtime_error {
    explicit SchemaError(const std::string& path, const std::string& what)
        : std::runtime_error(path + ": " + what), path(path) {}
    std::string path;
};

/// Config is well-formed but semantically invalid.
struct ValidationError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

} // namespace bob
