#include "bob/segment_theory.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <vector>

#include "bob/errors.hpp"

namespace bob {

Scalar Invariants::a() const { return std::sqrt(a_sq); }
Scalar Invariants::b() const { return std::sqrt(b_sq); }

EllipseCoords to_ellipse_coords(const SegmentState& s) {
    const Scalar d = s.h * std::tan(s.theta.radians());
    return EllipseCoords{s.x + d, s.h, d};
}

SegmentState from_ellipse_coords(const EllipseCoords& e) {
    if (!(e.h > 0.0)) throw std::invalid_argument("ellipse coordinates require h > 0");
    return SegmentState{e.w - e.d, e.h, Angle{std::atan(e.d / e.h)}};
}

EllipseCoords step_ellipse(const EllipseCoords& e) {
    const Scalar w = e.w, h = e.h, d = e.d;
    const Scalar den = w * w - d * d - h * h - 1.0;
    const Scalar d_next =
        (d * d * d + 2.0 * h * h * w + 2.0 * d * d * w + d * w * w + h * h * d - d) / den;
    const Scalar w_next =
        (w * w * w + d * d * w + h * h * w + 2.0 * d * w * w - w - 2.0 * d) / den;
    return EllipseCoords{w_next, h, d_next};
}

Invariants invariants(const EllipseCoords& e) {
    Invariants inv;
    const Scalar num = e.h * e.h * e.w * e.w + e.d * e.d;
    if (num == 0.0) {
        inv.degenerate = true;
        return inv;
    }
    inv.a_sq = num / (e.h * e.h + e.d * e.d);
    inv.b_sq = num / (1.0 - e.w * e.w);
    return inv;
}

Scalar ellipse_membership(const EllipseCoords& e, const Invariants& inv) {
    return e.w * e.w / inv.a_sq + e.d * e.d / inv.b_sq;
}

Scalar semi_axis_b(Scalar a, Scalar h) { return h * a / std::sqrt(1.0 - a * a); }

EllipseCoords ellipse_point(const Invariants& inv, Scalar h, Scalar psi) {
    return EllipseCoords{inv.a() * std::cos(psi), h, inv.b() * std::sin(psi)};
}

RotationData rotation_number(Scalar a, Scalar b) {
    if (!(a > 0.0 && b > 0.0)) throw std::invalid_argument("rotation number needs a, b > 0");
    RotationData rot;
    // Single two-argument form; reduces to arctan(2ab/(b^2-a^2)) + pi for
    // a < b, the same + 2*pi for a > b, and exactly 3*pi/2 at a = b.
    rot.phi = kPi + std::atan2(2.0 * a * b, b * b - a * a);
    rot.phi_prime = 2.0 * b / (b * b + a * a);
    return rot;
}

Scalar rotation_at_height(Scalar a, Scalar h) {
    // phi(a, b(a, h)) after cancelling the common factor a^2/(1-a^2):
    return kPi + std::atan2(2.0 * h * std::sqrt(1.0 - a * a), h * h - 1.0 + a * a);
}

Scalar rho_closed_form(Scalar h) { return kTwoPi - 2.0 * std::atan(h); }

Scalar rho_numeric_supremum(Scalar h) {
    // phi is monotone on (0,1), so the golden-section bracket slides to the
    // a -> 0 end where the supremum lives; phi(a) - rho = O(a^2) makes the
    // tiny left margin invisible at 1e-9.
    constexpr Scalar inv_golden = 0.6180339887498949;
    Scalar lo = 1e-7, hi = 1.0 - 1e-7;
    Scalar x1 = hi - inv_golden * (hi - lo);
    Scalar x2 = lo + inv_golden * (hi - lo);
    Scalar f1 = rotation_at_height(x1, h);
    Scalar f2 = rotation_at_height(x2, h);
    Scalar best = std::max(f1, f2);
    while (hi - lo > 1e-12) {
        if (f1 >= f2) {
            hi = x2;
            x2 = x1;
            f2 = f1;
            x1 = hi - inv_golden * (hi - lo);
            f1 = rotation_at_height(x1, h);
        } else {
            lo = x1;
            x1 = x2;
            f1 = f2;
            x2 = lo + inv_golden * (hi - lo);
            f2 = rotation_at_height(x2, h);
        }
        best = std::max({best, f1, f2});
    }
    return best;
}

std::pair<Scalar, Scalar> rotation_range(Scalar h) {
    if (!(h > 0.0)) throw std::invalid_argument("rotation range needs h > 0");
    return {kPi, rho_closed_form(h)};
}

std::optional<SegmentState> build_periodic_orbit(Scalar h, Scalar target_phi) {
    if (!(h > 0.0)) throw std::invalid_argument("builder needs h > 0");
    if (target_phi <= kPi || target_phi >= rho_closed_form(h)) return std::nullopt;
    // phi(a) decreases strictly from rho(h) to pi on (0, 1); bisect.
    Scalar lo = 1e-15, hi = 1.0 - 1e-13;
    for (int iter = 0; iter < 200 && hi - lo > 1e-12; ++iter) {
        const Scalar mid = 0.5 * (lo + hi);
        if (rotation_at_height(mid, h) > target_phi)
            lo = mid;
        else
            hi = mid;
    }
    const Scalar a = 0.5 * (lo + hi);
    return from_ellipse_coords(EllipseCoords{a, h, 0.0});
}

RotationMeasurement measure_rotation(const EllipseCoords& start, std::size_t n) {
    const Invariants inv = invariants(start);
    if (inv.degenerate) throw DegenerateOrbit("rotation is undefined on the fixed-point family");
    const Scalar a = inv.a(), b = inv.b();

    auto phase = [&](const EllipseCoords& e) { return std::atan2(e.d / b, e.w / a); };

    RotationMeasurement m;
    m.steps = n;
    std::vector<Scalar> increments;
    increments.reserve(n);
    EllipseCoords cur = start;
    Scalar prev_phase = phase(cur);
    Scalar sum = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        cur = step_ellipse(cur);
        const Scalar ph = phase(cur);
        Scalar inc = std::fmod(ph - prev_phase, kTwoPi);
        if (inc < 0.0) inc += kTwoPi;
        increments.push_back(inc);
        sum += inc;
        prev_phase = ph;
    }
    if (n == 0) return m;
    m.mean = sum / static_cast<Scalar>(n);
    for (Scalar inc : increments) m.max_abs_dev = std::max(m.max_abs_dev, std::abs(inc - m.mean));
    return m;
}

Scalar measured_rotation(const EllipseCoords& start, std::size_t n) {
    return measure_rotation(start, n).mean;
}

} // namespace bob
