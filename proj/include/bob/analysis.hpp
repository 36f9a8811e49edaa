#pragma once

#include <Eigen/LU>

#include <array>
#include <complex>
#include <cstddef>
#include <optional>
#include <vector>

#include "bob/dynamics.hpp"
#include "bob/types.hpp"

namespace bob {

/// Boundary arc of a smooth shape, traversed from s0 to s2 in the shape's
/// parameter. On closed shapes `param_increasing` selects which way around;
/// curvature must be monotone (or constant) along the arc.
struct ArcSpec {
    Shape shape;
    Scalar s0 = 0.0;
    Scalar s2 = 0.0;
    bool param_increasing = true;
};

struct PeriodicOrbitReport {
    std::size_t period = 0;
    std::vector<PhasePoint> points;
    Matrix3 monodromy = Matrix3::Identity();
    std::array<std::complex<Scalar>, 3> eigenvalues{};
    Scalar closure_error = 0.0;
};

/// Launches the cone bisector from p, reflects it off the boundary and
/// returns the signed angle between the reflected direction and the direction
/// back to p. Zero exactly at fixed points of the map.
Scalar retro_deviation(const Shape& shape, const Vec2& p);

struct CircleLoop {
    Vec2 center{0.0, 0.0};
    Scalar radius = 2.0;
};

/// Scans retro_deviation around the loop, brackets every sign change and
/// bisects to a fixed point. Samples that are already zero to machine noise
/// (a disc sees only those) are returned directly.
std::vector<PhasePoint> find_fixed_points(const Shape& shape, const CircleLoop& loop,
                                          std::size_t n_samples = 720);

struct QuadraturePair {
    Scalar lhs = 0.0; ///< integral of sin(K(s2) - K(s)) over [s1, s2]
    Scalar rhs = 0.0; ///< integral of sin(K(s))         over [s0, s1]
};

/// K is the running tangent-turning integral along the arc and s1 is the
/// point where K reaches half its total. On increasing-curvature arcs
/// lhs < rhs, with equality (to quadrature accuracy) on circular arcs.
/// Throws NotMonotone when sampled curvature is neither monotone nor constant.
QuadraturePair lemma_quadrature(const ArcSpec& arc, std::size_t n_nodes = 512);

/// Differential of the bounce + point reflection (the first two steps of the
/// map) in bounce-centered coordinates (a, b, theta), for boundary curvature
/// k. Its determinant is identically -1; composing with the angle reflection
/// of the visibility rule flips it to +1.
Matrix3 bounce_jacobian_closed_form(Scalar k, Scalar a, Scalar b);

/// Central-difference differential of the full map at pp in (x, y, angle)
/// coordinates, Richardson-extrapolated (eps and eps/2).
/// Throws PerturbationLeftDomain when a probe exits the visibility domain.
Matrix3 finite_diff_jacobian(const Shape& shape, const PhasePoint& pp, Scalar eps = 1e-6);

struct LyapunovResult {
    Scalar lambda = 0.0;
    std::size_t steps = 0;
    bool complete = false; ///< false when the orbit terminated early
};

/// Largest Lyapunov exponent by tangent-vector push-forward with per-step
/// renormalization.
LyapunovResult lyapunov_exponent(const Shape& shape, const PhasePoint& start, std::size_t n);

/// Roots of the characteristic cubic of a real 3x3 matrix (Cardano /
/// trigonometric form, one Newton polish per root).
std::array<std::complex<Scalar>, 3> cubic_eigenvalues(const Matrix3& m);

/// Finds the smallest period q <= max_period with return distance < tol
/// (position norm + angle), polishes the point by damped iteration on F^q and
/// assembles the monodromy matrix with its eigenvalues.
std::optional<PeriodicOrbitReport> detect_periodic(const Shape& shape, const PhasePoint& seed,
                                                   std::size_t max_period, Scalar tol);

} // namespace bob
