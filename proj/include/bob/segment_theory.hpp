#pragma once

#include <cstddef>
#include <optional>
#include <utility>

#include "bob/dynamics.hpp"
#include "bob/types.hpp"

namespace bob {

/// Bounce-centered coordinates for the segment system:
///   w = x + h tan(theta)  (bounce abscissa)
///   d = h tan(theta)      (signed offset from launch point to bounce)
/// Every orbit lies on the ellipse w^2/a^2 + d^2/b^2 = 1.
struct EllipseCoords {
    Scalar w = 0.0;
    Scalar h = 1.0;
    Scalar d = 0.0;
};

/// Conserved semi-axes (squared) of the invariant ellipse. Both vanish
/// together, exactly on the fixed-point family w = d = 0.
struct Invariants {
    Scalar a_sq = 0.0;
    Scalar b_sq = 0.0;
    bool degenerate = false;

    Scalar a() const;
    Scalar b() const;
};

struct RotationData {
    Scalar phi = 0.0;       ///< rotation number, in (pi, 2*pi)
    Scalar phi_prime = 0.0; ///< d(phi)/da at fixed b, equal to 2b/(b^2+a^2)
};

EllipseCoords to_ellipse_coords(const SegmentState& s);
SegmentState from_ellipse_coords(const EllipseCoords& e);

/// Rational closed form of the conjugated map; satisfies w' = w + d + d'.
EllipseCoords step_ellipse(const EllipseCoords& e);

/// a^2 = (h^2 w^2 + d^2)/(h^2 + d^2),  b^2 = (h^2 w^2 + d^2)/(1 - w^2).
/// Returns zeros flagged degenerate when w = d = 0.
Invariants invariants(const EllipseCoords& e);

/// w^2/a^2 + d^2/b^2; equal to 1 when inv = invariants(e).
Scalar ellipse_membership(const EllipseCoords& e, const Invariants& inv);

/// b(a, h) for the invariant ellipse of height h through the vertex (a, 0).
Scalar semi_axis_b(Scalar a, Scalar h);

/// Point of the invariant ellipse at circle phase psi: (a cos psi, b sin psi).
EllipseCoords ellipse_point(const Invariants& inv, Scalar h, Scalar psi);

/// Rotation number of the restricted rigid rotation:
///   phi = pi + atan2(2ab, b^2 - a^2),
/// which reproduces the three arctangent branches (a<b, a>b, a=b -> 3pi/2).
RotationData rotation_number(Scalar a, Scalar b);

/// phi along the height-h family, i.e. phi(a, b(a, h)); strictly decreasing
/// in a, sweeping (pi, rho(h)).
Scalar rotation_at_height(Scalar a, Scalar h);

/// Supremum of attainable rotation numbers at height h: 2*pi - 2*arctan(h).
Scalar rho_closed_form(Scalar h);

/// Same supremum located numerically (golden-section over a).
Scalar rho_numeric_supremum(Scalar h);

/// Interval of attainable rotation numbers, (pi, rho(h)).
std::pair<Scalar, Scalar> rotation_range(Scalar h);

/// Inverts phi(a) at height h by bisection and seeds the orbit at the ellipse
/// vertex (w, d) = (a, 0). Absent when target_phi is outside (pi, rho(h)).
std::optional<SegmentState> build_periodic_orbit(Scalar h, Scalar target_phi);

struct RotationMeasurement {
    Scalar mean = 0.0;        ///< mean per-step phase increment, in [0, 2*pi)
    Scalar max_abs_dev = 0.0; ///< largest deviation of an increment from the mean
    std::size_t steps = 0;
};

/// Lifts n iterates to the invariant-ellipse phase and averages the
/// increments. Throws DegenerateOrbit on the fixed-point family.
RotationMeasurement measure_rotation(const EllipseCoords& start, std::size_t n);

Scalar measured_rotation(const EllipseCoords& start, std::size_t n);

} // namespace bob
