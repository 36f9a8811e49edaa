#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "bob/dynamics.hpp"
#include "bob/errors.hpp"
#include "bob/rng.hpp"
#include "bob/segment_theory.hpp"

using namespace bob;

namespace {

const Shape kSegment = Segment{};
const Shape kDisc = Disc{Vec2{0.0, 0.0}, 1.0};

SegmentState random_valid_state(SplitMix64& rng) {
    const Scalar h = rng.uniform(0.2, 2.0);
    const Scalar a = rng.uniform(0.05, 0.95);
    const Scalar psi = rng.uniform(0.0, kTwoPi);
    return from_ellipse_coords(
        EllipseCoords{a * std::cos(psi), h, semi_axis_b(a, h) * std::sin(psi)});
}

Scalar phase_dist(const PhasePoint& a, const PhasePoint& b) {
    return (a.p - b.p).norm() + std::abs(angle_delta(a.v, b.v));
}

} // namespace

TEST_CASE("visibility domain membership") {
    CHECK(in_visibility_domain(kSegment, {Vec2{0.0, 1.0}, Angle{-kPi / 2.0}}));
    CHECK(!in_visibility_domain(kSegment, {Vec2{0.0, 1.0}, Angle{kPi / 2.0}}));
    // disc cone has half-width pi/6 from distance 2
    CHECK(in_visibility_domain(kDisc, {Vec2{2.0, 0.0}, Angle{kPi - kPi / 6.0 + 1e-6}}));
    CHECK(!in_visibility_domain(kDisc, {Vec2{2.0, 0.0}, Angle{kPi - kPi / 6.0 - 1e-6}}));
    CHECK(!in_visibility_domain(kDisc, {Vec2{0.5, 0.0}, Angle{0.0}}));
}

TEST_CASE("fixed points of the full map") {
    const PhasePoint seg_fp{Vec2{0.0, 1.0}, Angle{-kPi / 2.0}};
    const StepTrace t1 = step(kSegment, seg_fp);
    CHECK(phase_dist(t1.output, seg_fp) < 1e-14);

    const PhasePoint disc_fp{Vec2{2.0, 0.0}, Angle{kPi}};
    const StepTrace t2 = step(kDisc, disc_fp);
    CHECK(phase_dist(t2.output, disc_fp) < 1e-14);
}

TEST_CASE("worked segment step, against the closed-form map") {
    const Scalar theta = kPi / 6.0;
    const PhasePoint start{Vec2{0.0, 1.0}, Angle{theta - kPi / 2.0}};
    const StepTrace trace = step(kSegment, start);

    const Scalar x_next = 2.0 / std::sqrt(3.0); // 2*tan(pi/6)
    CHECK(trace.output.p.x() == doctest::Approx(x_next).epsilon(1e-14));
    CHECK(trace.output.p.y() == doctest::Approx(1.0).epsilon(1e-14));

    // direct evaluation of the update formula
    const Scalar theta_next =
        theta + std::atan(1.0 - x_next) + std::atan(-1.0 - x_next);
    CHECK(theta_next == doctest::Approx(-0.7661626496937841).epsilon(1e-12));
    CHECK(wrap_angle(trace.output.v.radians() + kPi / 2.0) ==
          doctest::Approx(theta_next).epsilon(1e-12));

    const SegmentState next = step_segment(SegmentState{0.0, 1.0, Angle{theta}});
    CHECK(next.x == doctest::Approx(x_next).epsilon(1e-14));
    CHECK(next.theta.radians() == doctest::Approx(theta_next).epsilon(1e-14));
}

TEST_CASE("closed-form segment map examples") {
    const SegmentState s1 = step_segment({0.0, 1.0, Angle{0.0}});
    CHECK(s1.x == 0.0);
    CHECK(s1.theta.radians() == 0.0);

    const SegmentState s2 = step_segment({0.0, 1.0, Angle{kPi / 4.0}});
    CHECK(s2.x == doctest::Approx(2.0).epsilon(1e-14));
    CHECK(s2.theta.radians() == doctest::Approx(-std::atan(3.0)).epsilon(1e-14));
    CHECK(s2.theta.radians() == doctest::Approx(-1.2490457723982544).epsilon(1e-12));

    const SegmentState s3 = step_segment({0.5, 1.0, Angle{0.0}});
    CHECK(s3.x == doctest::Approx(0.5).epsilon(1e-15));
    CHECK(s3.theta.radians() ==
          doctest::Approx(std::atan(0.5) - std::atan(1.5)).epsilon(1e-14));
    CHECK(s3.theta.radians() == doctest::Approx(-0.5191461142465229).epsilon(1e-12));

    CHECK_THROWS_AS((void)step_segment({0.9, 1.0, Angle{kPi / 4.0}}), BounceOffSegment);
    CHECK(s2.h == 1.0);
}

TEST_CASE("general map on the segment equals the closed form") {
    SplitMix64 rng(42);
    Scalar worst = 0.0;
    for (int i = 0; i < 10000; ++i) {
        const SegmentState s = random_valid_state(rng);
        const SegmentState via_general = to_segment_state(step(kSegment, to_phase_point(s)).output);
        const SegmentState via_formula = step_segment(s);
        worst = std::max({worst, std::abs(via_general.x - via_formula.x),
                          std::abs(angle_delta(via_general.theta, via_formula.theta))});
    }
    CHECK(worst < 1e-10);
}

TEST_CASE("reduced (x, theta) map preserves area") {
    SplitMix64 rng(43);
    for (int i = 0; i < 200; ++i) {
        const SegmentState s = random_valid_state(rng);
        const Scalar eps = 1e-6;
        auto f = [&](Scalar dx, Scalar dt) {
            const SegmentState out = step_segment({s.x + dx, s.h, Angle{s.theta.radians() + dt}});
            return std::pair{out.x, out.theta.radians()};
        };
        const auto [xp_x, tp_x] = f(eps, 0.0);
        const auto [xm_x, tm_x] = f(-eps, 0.0);
        const auto [xp_t, tp_t] = f(0.0, eps);
        const auto [xm_t, tm_t] = f(0.0, -eps);
        const Scalar j00 = (xp_x - xm_x) / (2 * eps);
        const Scalar j01 = (xp_t - xm_t) / (2 * eps);
        const Scalar j10 = wrap_angle(tp_x - tm_x) / (2 * eps);
        const Scalar j11 = wrap_angle(tp_t - tm_t) / (2 * eps);
        CHECK(std::abs(j00 * j11 - j01 * j10 - 1.0) < 1e-6);
    }
}

TEST_CASE("tangent launches reproduce the classical outer billiard") {
    SplitMix64 rng(44);
    for (int i = 0; i < 300; ++i) {
        const Scalar r = rng.uniform(1.2, 4.0);
        const Scalar t = rng.uniform(0.0, kTwoPi);
        const Vec2 p = r * Vec2{std::cos(t), std::sin(t)};
        const VisualCone cone = visual_cone(kDisc, p);
        const bool use_h = rng.uniform01() < 0.5;
        const PhasePoint pp{p, use_h ? cone.ray_h : cone.ray_k};
        const StepTrace trace = step(kDisc, pp);
        const VisualCone next_cone = visual_cone(kDisc, trace.output.p);
        const Scalar to_h = std::abs(angle_delta(trace.output.v, next_cone.ray_h));
        const Scalar to_k = std::abs(angle_delta(trace.output.v, next_cone.ray_k));
        CHECK(std::min(to_h, to_k) < 1e-8);
        // the outer-billiard image keeps the circumradius
        CHECK(std::abs(trace.output.p.norm() - r) < 1e-10);
    }
}

TEST_CASE("bounce distances match on both sides") {
    SplitMix64 rng(45);
    const Shape shapes[] = {kSegment, kDisc, Shape{Ellipse{1.0, 0.4}},
                            Shape{Polygon{{Vec2{0.5, -0.5}, Vec2{0.5, 0.5}, Vec2{-0.5, 0.5},
                                           Vec2{-0.5, -0.5}}}}};
    for (const Shape& shape : shapes) {
        int tested = 0;
        while (tested < 300) {
            const Scalar r = rng.uniform(1.2, 4.0);
            const Scalar t = rng.uniform(0.0, kTwoPi);
            const Vec2 p = r * Vec2{std::cos(t), std::sin(t)};
            VisualCone cone;
            try {
                cone = visual_cone(shape, p);
            } catch (const InsideShape&) {
                continue;
            }
            const Angle v{cone.bisector.radians() + 0.45 * cone.width() * rng.uniform(-1.0, 1.0)};
            StepTrace trace;
            try {
                trace = step(shape, {p, v});
            } catch (const BilliardError&) {
                continue;
            }
            ++tested;
            const Scalar din = (trace.input.p - trace.bounce.point).norm();
            const Scalar dout = (trace.p_prime - trace.bounce.point).norm();
            CHECK(std::abs(din - dout) <= 1e-12 * std::max(din, 1.0));
        }
    }
}

TEST_CASE("segment map commutes with the x -> -x, theta -> -theta reflection") {
    SplitMix64 rng(46);
    for (int i = 0; i < 1000; ++i) {
        const SegmentState s = random_valid_state(rng);
        const SegmentState direct = step_segment(s);
        const SegmentState mirrored =
            step_segment({-s.x, s.h, Angle{-s.theta.radians()}});
        CHECK(direct.x == doctest::Approx(-mirrored.x).epsilon(1e-12));
        CHECK(direct.theta.radians() ==
              doctest::Approx(-mirrored.theta.radians()).epsilon(1e-12));
    }
}

TEST_CASE("orbit recording") {
    const PhasePoint fp{Vec2{0.0, 1.0}, Angle{-kPi / 2.0}};
    OrbitOptions opts;
    const OrbitRecord rec = orbit(kSegment, fp, 1000, opts);
    CHECK(rec.termination == Termination::completed);
    CHECK(rec.samples.size() == 1001);
    for (const OrbitSample& s : rec.samples) {
        CHECK(phase_dist(s.state, fp) < 1e-12);
        CHECK(s.bounce.norm() < 1e-12);
    }

    // heights stay constant along segment orbits
    SplitMix64 rng(47);
    for (int i = 0; i < 5; ++i) {
        const SegmentState s = random_valid_state(rng);
        OrbitOptions sparse;
        sparse.record_every = 97;
        const OrbitRecord r = orbit(kSegment, to_phase_point(s), 10000, sparse);
        CHECK(r.termination == Termination::completed);
        CHECK(r.samples.size() == 10000 / 97 + 1);
        CHECK(r.height_drift < 1e-12);
        for (const OrbitSample& sample : r.samples)
            CHECK(std::abs(sample.state.p.y() - s.h) < 1e-12);
    }

    // disc orbits keep their radius
    PhasePoint disc_start{Vec2{2.0, 0.0}, Angle{0.0}};
    disc_start.v = Angle{visual_cone(kDisc, disc_start.p).bisector.radians() + 0.2};
    const OrbitRecord dr = orbit(kDisc, disc_start, 10000, OrbitOptions{});
    CHECK(dr.termination == Termination::completed);
    CHECK(std::abs(dr.max_radius - 2.0) < 1e-9);
}

TEST_CASE("orbit termination on a degenerate bounce") {
    // aimed exactly at a segment endpoint
    const PhasePoint bad{Vec2{1.0, 1.0}, Angle{-kPi / 2.0}};
    const OrbitRecord rec = orbit(kSegment, bad, 100, OrbitOptions{});
    CHECK(rec.termination == Termination::degenerate_bounce);
    CHECK(rec.steps_completed == 0);
    CHECK(rec.samples.empty());

    // aimed exactly at a square corner; one nudge slides the bounce onto an edge
    const Shape square =
        Polygon{{Vec2{0.5, -0.5}, Vec2{0.5, 0.5}, Vec2{-0.5, 0.5}, Vec2{-0.5, -0.5}}};
    const PhasePoint corner_aim{Vec2{0.0, 1.5}, Angle::of_vector(Vec2{0.5, -1.0})};
    const OrbitRecord rec1 = orbit(square, corner_aim, 50, OrbitOptions{});
    CHECK(rec1.termination == Termination::degenerate_bounce);

    OrbitOptions nudge;
    nudge.nudge_restart = true;
    const OrbitRecord rec2 = orbit(square, corner_aim, 50, nudge);
    CHECK(rec2.nudge_restarts > 0);
    CHECK(rec2.steps_completed == 50);
}

TEST_CASE("coordinate conversions round-trip") {
    SplitMix64 rng(48);
    for (int i = 0; i < 1000; ++i) {
        const SegmentState s = random_valid_state(rng);
        const SegmentState back = to_segment_state(to_phase_point(s));
        CHECK(back.x == doctest::Approx(s.x).epsilon(1e-15));
        CHECK(back.h == doctest::Approx(s.h).epsilon(1e-15));
        CHECK(std::abs(angle_delta(back.theta, s.theta)) < 1e-15);
    }
    CHECK_THROWS_AS((void)to_segment_state({Vec2{0.0, -1.0}, Angle{-kPi / 2.0}}),
                    std::invalid_argument);
    CHECK_THROWS_AS((void)to_segment_state({Vec2{0.0, 1.0}, Angle{kPi / 2.0}}),
                    std::invalid_argument);
}
