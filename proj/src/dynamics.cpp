#include "bob/dynamics.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "bob/errors.hpp"

namespace bob {

bool in_visibility_domain(const Shape& shape, const PhasePoint& pp) {
    if (contains(shape, pp.p)) return false;
    try {
        return ray_intersect(shape, pp.p, pp.v).has_value();
    } catch (const DegenerateBounce&) {
        return false; // formally in V_S but the map is undefined there
    }
}

StepTrace step(const Shape& shape, const PhasePoint& pp) {
    StepTrace trace;
    trace.input = pp;

    auto bounce = ray_intersect(shape, pp.p, pp.v);
    if (!bounce) throw LeftVisibility("launch ray misses the shape");
    trace.bounce = *bounce;

    trace.reflected_dir = reflect_across(trace.bounce.tangent_dir, pp.v);
    const Scalar dist = (pp.p - trace.bounce.point).norm();
    trace.p_prime = trace.bounce.point + dist * trace.reflected_dir.unit();
    trace.u = trace.reflected_dir.opposite();

    try {
        trace.cone = visual_cone(shape, trace.p_prime);
    } catch (const InsideShape& e) {
        throw LeftVisibility(e.what());
    }
    trace.output.p = trace.p_prime;
    trace.output.v = reflect_across(trace.cone.bisector, trace.u);
    return trace;
}

SegmentState step_segment(const SegmentState& s) {
    const Scalar th = s.theta.radians();
    if (!(s.h > 0.0)) throw std::invalid_argument("segment state requires h > 0");
    if (std::abs(th) >= kPi / 2.0)
        throw std::invalid_argument("segment state requires theta in (-pi/2, pi/2)");
    const Scalar tan_th = std::tan(th);
    const Scalar w = s.x + s.h * tan_th;
    if (std::abs(w) > 1.0) throw BounceOffSegment("bounce misses the segment");
    const Scalar x_next = s.x + 2.0 * s.h * tan_th;
    const Scalar theta_next =
        th + std::atan((1.0 - x_next) / s.h) + std::atan((-1.0 - x_next) / s.h);
    return SegmentState{x_next, s.h, Angle{theta_next}};
}

PhasePoint to_phase_point(const SegmentState& s) {
    return PhasePoint{Vec2{s.x, s.h}, Angle{s.theta.radians() - kPi / 2.0}};
}

SegmentState to_segment_state(const PhasePoint& pp) {
    if (!(pp.p.y() > 0.0))
        throw std::invalid_argument("segment coordinates need a point in the upper half-plane");
    const Scalar theta = wrap_angle(pp.v.radians() + kPi / 2.0);
    if (std::abs(theta) >= kPi / 2.0)
        throw std::invalid_argument("segment coordinates need a downward direction");
    return SegmentState{pp.p.x(), pp.p.y(), Angle{theta}};
}

OrbitRecord orbit(const Shape& shape, const PhasePoint& start, std::size_t n_steps,
                  const OrbitOptions& options) {
    const std::size_t every = options.record_every == 0 ? 1 : options.record_every;
    OrbitRecord rec;
    rec.samples.reserve(n_steps / every + 1);
    rec.max_radius = start.p.norm();

    PhasePoint cur = start;
    const Scalar h0 = start.p.y();

    auto finish = [&](Termination why, std::size_t done) {
        rec.termination = why;
        rec.steps_completed = done;
        return rec;
    };

    // Nudges alternate sign with growing magnitude around the step's original
    // direction, so a graze recovers whichever side the body is on.
    Angle base_v = cur.v;
    int attempt = 0;
    auto try_nudge = [&]() {
        if (!options.nudge_restart || rec.nudge_restarts >= 1000 || attempt >= 64) return false;
        ++rec.nudge_restarts;
        ++attempt;
        const Scalar offset =
            options.nudge * static_cast<Scalar>((attempt + 1) / 2) * (attempt % 2 ? 1.0 : -1.0);
        cur.v = Angle{base_v.radians() + offset};
        return true;
    };

    std::size_t i = 0;
    while (i < n_steps) {
        StepTrace trace;
        try {
            trace = step(shape, cur);
        } catch (const DegenerateBounce&) {
            if (try_nudge()) continue;
            return finish(Termination::degenerate_bounce, i);
        } catch (const LeftVisibility&) {
            if (attempt > 0 && try_nudge()) continue; // a nudge overshot the body
            return finish(Termination::left_domain, i);
        }
        if (i % every == 0) rec.samples.push_back({i, cur, trace.bounce.point});
        cur = trace.output;
        rec.max_radius = std::max(rec.max_radius, cur.p.norm());
        rec.height_drift = std::max(rec.height_drift, std::abs(cur.p.y() - h0));
        ++i;
        base_v = cur.v;
        attempt = 0;
        if (options.observer) options.observer(i, trace);
    }

    if (n_steps % every == 0) {
        OrbitSample last{n_steps, cur, Vec2{0.0, 0.0}};
        try {
            auto b = ray_intersect(shape, cur.p, cur.v);
            last.bounce = b ? b->point : Vec2{std::nan(""), std::nan("")};
        } catch (const DegenerateBounce&) {
            last.bounce = Vec2{std::nan(""), std::nan("")};
        }
        rec.samples.push_back(last);
    }
    return finish(Termination::completed, n_steps);
}

} // namespace bob
