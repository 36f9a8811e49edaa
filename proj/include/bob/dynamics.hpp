#pragma once

#include <cstddef>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "bob/geometry.hpp"
#include "bob/types.hpp"

namespace bob {

/// Element of the visibility domain: exterior point plus launch direction.
struct PhasePoint {
    Vec2 p{0.0, 0.0};
    Angle v;
};

/// Segment-system coordinates: height h stays constant along an orbit and
/// theta measures the launch direction from straight down (theta = arg(v) + pi/2).
struct SegmentState {
    Scalar x = 0.0;
    Scalar h = 1.0;
    Angle theta;
};

/// Everything one application of the map computes, for checks and Jacobians.
struct StepTrace {
    PhasePoint input;
    BounceData bounce;
    Angle reflected_dir;
    Vec2 p_prime{0.0, 0.0};
    Angle u;
    VisualCone cone;
    PhasePoint output;
};

bool in_visibility_domain(const Shape& shape, const PhasePoint& pp);

/// One application of the bouncing outer billiard map: specular bounce at the
/// nearest boundary point, outer-billiard point reflection to p' with
/// |p - w| = |p' - w|, then reflection of the return direction across the
/// visual-cone bisector at p'.
/// Throws DegenerateBounce / LeftVisibility.
StepTrace step(const Shape& shape, const PhasePoint& pp);

/// Closed-form segment map:
///   x'     = x + 2 h tan(theta)
///   theta' = theta + arctan((1-x')/h) + arctan((-1-x')/h)
/// Throws BounceOffSegment when the bounce x + h tan(theta) leaves [-1, 1]
/// and DegenerateBounce within tol_corner of an endpoint.
SegmentState step_segment(const SegmentState& s);

PhasePoint to_phase_point(const SegmentState& s);

/// Inverse of to_phase_point. Requires p.y > 0 and a downward direction.
SegmentState to_segment_state(const PhasePoint& pp);

enum class Termination { completed, degenerate_bounce, left_domain };

struct OrbitSample {
    std::size_t step = 0;
    PhasePoint state;
    Vec2 bounce{0.0, 0.0};
};

struct OrbitRecord {
    std::string scenario_id;
    std::vector<OrbitSample> samples;
    Termination termination = Termination::completed;
    std::size_t steps_completed = 0;
    std::size_t nudge_restarts = 0;
    Scalar max_radius = 0.0;
    Scalar height_drift = 0.0;
    std::optional<Scalar> invariant_drift;
    std::optional<Scalar> measured_rotation_value;
    std::optional<Scalar> lyapunov;
};

struct OrbitOptions {
    std::size_t record_every = 1;
    /// Non-canonical: on a degenerate bounce, nudge the angle by 1e-9 rad and
    /// continue instead of terminating. Contaminates Lyapunov statistics.
    bool nudge_restart = false;
    Scalar nudge = 1e-9;
    /// Called after every successful step with the 1-based step index.
    std::function<void(std::size_t, const StepTrace&)> observer;
};

/// Iterates the map, recording every record_every-th state together with the
/// bounce point of the ray it is about to launch. Error events end the orbit
/// and are reported in the record, never thrown.
OrbitRecord orbit(const Shape& shape, const PhasePoint& start, std::size_t n_steps,
                  const OrbitOptions& options = {});

} // namespace bob
