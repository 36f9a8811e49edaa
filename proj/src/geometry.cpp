#include "bob/geometry.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

#include "bob/errors.hpp"

namespace bob {

namespace {

Scalar cross(const Vec2& a, const Vec2& b) { return a.x() * b.y() - a.y() * b.x(); }

Scalar parabola_y(const ParabolaArc& arc, Scalar x) { return arc.height * (1.0 - x * x); }

// Open chord from `origin` to the boundary point at x = xw stays strictly
// above the graph. `x_other` is the second intersection of the chord's line
// with the parabola; the line dips below the graph exactly between the two
// intersections, so occlusion reduces to a side test.
bool parabola_chord_visible(const ParabolaArc& arc, const Vec2& origin, Scalar xw, Scalar x_other,
                            bool vertical) {
    if (vertical) return origin.y() > parabola_y(arc, xw);
    const Scalar side_origin = origin.x() - xw;
    const Scalar side_other  = x_other - xw;
    return side_origin * side_other <= 0.0;
}

// Both line-parabola intersection abscissae for a non-vertical ray, or the
// single crossing for a vertical one.
struct ParabolaHits {
    int count = 0;
    Scalar t[2];
    Scalar x[2];
    bool vertical = false;
};

ParabolaHits parabola_line_hits(const ParabolaArc& arc, const Vec2& o, const Vec2& u) {
    ParabolaHits hits;
    const Scalar ap = arc.height;
    const Scalar qa = ap * u.x() * u.x();
    const Scalar qb = 2.0 * ap * o.x() * u.x() + u.y();
    const Scalar qc = ap * o.x() * o.x() - ap + o.y();
    if (qa < 1e-300) {
        hits.vertical = true;
        if (std::abs(qb) < 1e-300) return hits;
        hits.count = 1;
        hits.t[0] = -qc / qb;
        hits.x[0] = o.x() + hits.t[0] * u.x();
        return hits;
    }
    const Scalar disc = qb * qb - 4.0 * qa * qc;
    if (disc < 0.0) return hits;
    const Scalar sq = std::sqrt(disc);
    // Citardauq form for the root that would lose precision.
    Scalar t0, t1;
    if (qb >= 0.0) {
        t0 = (-qb - sq) / (2.0 * qa);
        t1 = (2.0 * qc) / (-qb - sq);
    } else {
        t0 = (2.0 * qc) / (-qb + sq);
        t1 = (-qb + sq) / (2.0 * qa);
    }
    if (t0 > t1) std::swap(t0, t1);
    hits.count = 2;
    hits.t[0] = t0;
    hits.t[1] = t1;
    hits.x[0] = o.x() + t0 * u.x();
    hits.x[1] = o.x() + t1 * u.x();
    return hits;
}

BounceData parabola_boundary(const ParabolaArc& arc, Scalar x) {
    const Scalar slope = -2.0 * arc.height * x;
    BounceData b;
    b.point = Vec2{x, parabola_y(arc, x)};
    b.tangent_dir = Angle::of_vector(Vec2{1.0, slope});
    b.curvature = 2.0 * arc.height / std::pow(1.0 + slope * slope, 1.5);
    b.boundary_param = x;
    return b;
}

BounceData ellipse_boundary(const Ellipse& e, Scalar t) {
    const Scalar A = e.semi_major, B = e.semi_minor;
    const Scalar c = std::cos(t), s = std::sin(t);
    BounceData b;
    b.point = Vec2{A * c, B * s};
    b.tangent_dir = Angle::of_vector(Vec2{-A * s, B * c});
    b.curvature = A * B / std::pow(A * A * s * s + B * B * c * c, 1.5);
    b.boundary_param = t;
    return b;
}

// ---- ray_intersect per shape ----------------------------------------------

std::optional<BounceData> ray_segment(const Segment&, const Vec2& o, const Vec2& u) {
    if (u.y() == 0.0) {
        if (o.y() != 0.0) return std::nullopt;
        // collinear launch along the axis: at best grazes an endpoint
        const Scalar target = u.x() > 0.0 ? -1.0 : 1.0;
        if ((target - o.x()) * u.x() > 0.0)
            throw DegenerateBounce("axis-collinear ray meets the segment at an endpoint");
        return std::nullopt;
    }
    const Scalar t = -o.y() / u.y();
    if (t <= 0.0) return std::nullopt;
    const Scalar x = o.x() + t * u.x();
    if (std::abs(std::abs(x) - 1.0) <= tol_corner)
        throw DegenerateBounce("bounce at a segment endpoint");
    if (std::abs(x) > 1.0) return std::nullopt;
    BounceData b;
    b.point = Vec2{x, 0.0};
    b.tangent_dir = Angle{0.0};
    b.curvature = 0.0;
    b.boundary_param = x;
    return b;
}

std::optional<BounceData> ray_polygon(const Polygon& poly, const Vec2& o, const Vec2& u) {
    const std::size_t n = poly.vertices.size();
    Scalar best_t = std::numeric_limits<Scalar>::infinity();
    std::size_t best_edge = 0;
    Scalar best_s = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        const Vec2& a = poly.vertices[i];
        const Vec2& b = poly.vertices[(i + 1) % n];
        const Vec2 e = b - a;
        const Scalar den = cross(u, e);
        if (den == 0.0) continue;
        const Scalar t = cross(a - o, e) / den;
        const Scalar s = cross(a - o, u) / den;
        // slack keeps exact corner aims inside the degenerate-bounce check
        // instead of slipping between two edges
        const Scalar slack = tol_corner / e.norm();
        if (t > 0.0 && s >= -slack && s <= 1.0 + slack && t < best_t) {
            best_t = t;
            best_edge = i;
            best_s = s;
        }
    }
    if (!std::isfinite(best_t)) return std::nullopt;
    const Vec2& a = poly.vertices[best_edge];
    const Vec2& b = poly.vertices[(best_edge + 1) % n];
    const Vec2 e = b - a;
    const Scalar len = e.norm();
    if (best_s * len <= tol_corner || (1.0 - best_s) * len <= tol_corner)
        throw DegenerateBounce("bounce at a polygon vertex");
    BounceData hit;
    hit.point = a + best_s * e;
    hit.tangent_dir = Angle::of_vector(e);
    hit.curvature = 0.0;
    hit.boundary_param = static_cast<Scalar>(best_edge) + best_s;
    return hit;
}

std::optional<BounceData> ray_disc(const Disc& disc, const Vec2& o, const Vec2& u) {
    const Vec2 oc = o - disc.center;
    const Scalar half_b = oc.dot(u);
    const Scalar c = oc.squaredNorm() - disc.radius * disc.radius;
    Scalar det = half_b * half_b - c;
    // tangent launches (the outer-billiard boundary case) sit at det = 0
    if (det < 0.0 && det > -1e-12 * oc.squaredNorm()) det = 0.0;
    if (det < 0.0) return std::nullopt;
    const Scalar t = -half_b - std::sqrt(det);
    if (t <= 0.0) return std::nullopt;
    const Vec2 w = o + t * u;
    const Scalar param = std::atan2(w.y() - disc.center.y(), w.x() - disc.center.x());
    BounceData hit;
    hit.point = w;
    hit.tangent_dir = Angle{param + kPi / 2.0};
    hit.curvature = 1.0 / disc.radius;
    hit.boundary_param = param;
    return hit;
}

std::optional<BounceData> ray_ellipse(const Ellipse& el, const Vec2& o, const Vec2& u) {
    const Scalar A2 = el.semi_major * el.semi_major;
    const Scalar B2 = el.semi_minor * el.semi_minor;
    const Scalar qa = u.x() * u.x() / A2 + u.y() * u.y() / B2;
    const Scalar qb = o.x() * u.x() / A2 + o.y() * u.y() / B2;
    const Scalar qc = o.x() * o.x() / A2 + o.y() * o.y() / B2 - 1.0;
    Scalar det = qb * qb - qa * qc;
    if (det < 0.0 && det > -1e-12 * (qb * qb + std::abs(qa * qc))) det = 0.0;
    if (det < 0.0) return std::nullopt;
    const Scalar t = (-qb - std::sqrt(det)) / qa;
    if (t <= 0.0) return std::nullopt;
    const Vec2 w = o + t * u;
    return ellipse_boundary(el, std::atan2(w.y() / el.semi_minor, w.x() / el.semi_major));
}

std::optional<BounceData> ray_parabola(const ParabolaArc& arc, const Vec2& o, const Vec2& u) {
    const ParabolaHits hits = parabola_line_hits(arc, o, u);
    for (int i = 0; i < hits.count; ++i) {
        if (hits.t[i] <= 0.0) continue;
        const Scalar x = hits.x[i];
        if (std::abs(x) > 1.0 + tol_corner) continue;
        if (std::abs(std::abs(x) - 1.0) <= tol_corner)
            throw DegenerateBounce("bounce at a parabola arc endpoint");
        const Scalar x_other = hits.count == 2 ? hits.x[1 - i] : x;
        if (!parabola_chord_visible(arc, o, x, x_other, hits.vertical)) return std::nullopt;
        return parabola_boundary(arc, x);
    }
    return std::nullopt;
}

// ---- visual cones ----------------------------------------------------------

// Orients two boundary directions so that sweeping counterclockwise from
// ray_h by a width in (0, pi) reaches ray_k.
VisualCone make_cone(Angle d1, Angle d2) {
    Scalar delta = wrap_angle(d2.radians() - d1.radians());
    if (delta < 0.0) {
        std::swap(d1, d2);
        delta = -delta;
    }
    VisualCone cone;
    cone.ray_h = d1;
    cone.ray_k = d2;
    cone.bisector = Angle{d1.radians() + 0.5 * delta};
    return cone;
}

VisualCone cone_segment(const Segment&, const Vec2& apex) {
    const Angle to_right = Angle::of_vector(Vec2{1.0, 0.0} - apex);
    const Angle to_left  = Angle::of_vector(Vec2{-1.0, 0.0} - apex);
    const Scalar width = std::abs(wrap_angle(to_right.radians() - to_left.radians()));
    if (width < 1e-14 || width >= kPi)
        throw InsideShape("apex sees the segment edge-on or lies on it");
    return make_cone(to_left, to_right);
}

VisualCone cone_polygon(const Polygon& poly, const Vec2& apex) {
    Vec2 centroid{0.0, 0.0};
    for (const Vec2& v : poly.vertices) centroid += v;
    centroid /= static_cast<Scalar>(poly.vertices.size());
    const Scalar ref = std::atan2(centroid.y() - apex.y(), centroid.x() - apex.x());
    Scalar lo = 0.0, hi = 0.0;
    for (const Vec2& v : poly.vertices) {
        const Scalar off = wrap_angle(std::atan2(v.y() - apex.y(), v.x() - apex.x()) - ref);
        lo = std::min(lo, off);
        hi = std::max(hi, off);
    }
    if (hi - lo >= kPi) throw InsideShape("apex is inside the polygon");
    return make_cone(Angle{ref + lo}, Angle{ref + hi});
}

VisualCone cone_disc(const Disc& disc, const Vec2& apex) {
    const Vec2 rel = disc.center - apex;
    const Scalar dist = rel.norm();
    if (dist <= disc.radius) throw InsideShape("apex is inside the disc");
    const Scalar center_dir = std::atan2(rel.y(), rel.x());
    const Scalar half_width = std::asin(disc.radius / dist);
    VisualCone cone;
    cone.ray_h = Angle{center_dir - half_width};
    cone.ray_k = Angle{center_dir + half_width};
    cone.bisector = Angle{center_dir};
    return cone;
}

VisualCone cone_ellipse(const Ellipse& el, const Vec2& apex) {
    // Tangent points are the intersection of the polar line (chord of
    // contact) of the apex with the ellipse.
    const Scalar gx = apex.x() / el.semi_major;
    const Scalar gy = apex.y() / el.semi_minor;
    const Scalar R = std::hypot(gx, gy);
    if (R <= 1.0) throw InsideShape("apex is inside the ellipse");
    const Scalar phi0 = std::atan2(gy, gx);
    const Scalar spread = std::acos(1.0 / R);
    const Vec2 q1{el.semi_major * std::cos(phi0 + spread), el.semi_minor * std::sin(phi0 + spread)};
    const Vec2 q2{el.semi_major * std::cos(phi0 - spread), el.semi_minor * std::sin(phi0 - spread)};
    return make_cone(Angle::of_vector(q1 - apex), Angle::of_vector(q2 - apex));
}

VisualCone cone_parabola(const ParabolaArc& arc, const Vec2& apex) {
    if (contains(Shape{arc}, apex)) throw InsideShape("apex is under the parabola arc");

    // Endpoint chords are tested against the second intersection of their
    // supporting line with the parabola, same rule as ray_intersect.
    auto endpoint_visible = [&](Scalar x) {
        const Vec2 w{x, parabola_y(arc, x)};
        const Vec2 diff = w - apex;
        if (diff.squaredNorm() == 0.0) return false;
        const ParabolaHits hits = parabola_line_hits(arc, apex, diff.normalized());
        if (hits.count == 0) return false;
        const Scalar x_other =
            hits.count == 2 ? (std::abs(hits.x[0] - x) >= std::abs(hits.x[1] - x) ? hits.x[0] : hits.x[1]) : x;
        return parabola_chord_visible(arc, apex, x, x_other, hits.vertical);
    };

    // Candidate extremal boundary points: visible endpoints plus tangency
    // points, whose x-values solve a quadratic. A chord along a tangent line
    // of the concave graph touches it only at the tangency point, so
    // tangency candidates need no occlusion test.
    Scalar candidates[4];
    int n_cand = 0;
    if (endpoint_visible(-1.0)) candidates[n_cand++] = -1.0;
    if (endpoint_visible(1.0)) candidates[n_cand++] = 1.0;
    const Scalar disc = apex.x() * apex.x() - 1.0 + apex.y() / arc.height;
    if (disc > 0.0) {
        const Scalar sq = std::sqrt(disc);
        for (Scalar xt : {apex.x() - sq, apex.x() + sq})
            if (std::abs(xt) < 1.0) candidates[n_cand++] = xt;
    }
    if (n_cand == 0) throw InsideShape("apex cannot see the parabola arc");

    Scalar ref = 0.0, lo = 0.0, hi = 0.0;
    for (int i = 0; i < n_cand; ++i) {
        const Vec2 w{candidates[i], parabola_y(arc, candidates[i])};
        const Scalar dir = std::atan2(w.y() - apex.y(), w.x() - apex.x());
        if (i == 0) {
            ref = dir;
        } else {
            const Scalar off = wrap_angle(dir - ref);
            lo = std::min(lo, off);
            hi = std::max(hi, off);
        }
    }
    return make_cone(Angle{ref + lo}, Angle{ref + hi});
}

} // namespace

std::optional<BounceData> ray_intersect(const Shape& shape, const Vec2& origin, Angle dir) {
    const Vec2 u = dir.unit();
    return std::visit(
        [&](const auto& s) { // NOLINT
            using T = std::decay_t<decltype(s)>;
            if constexpr (std::is_same_v<T, Segment>) return ray_segment(s, origin, u);
            else if constexpr (std::is_same_v<T, Polygon>) return ray_polygon(s, origin, u);
            else if constexpr (std::is_same_v<T, Disc>) return ray_disc(s, origin, u);
            else if constexpr (std::is_same_v<T, Ellipse>) return ray_ellipse(s, origin, u);
            else return ray_parabola(s, origin, u);
        },
        shape);
}

VisualCone visual_cone(const Shape& shape, const Vec2& apex) {
    return std::visit(
        [&](const auto& s) {
            using T = std::decay_t<decltype(s)>;
            if constexpr (std::is_same_v<T, Segment>) return cone_segment(s, apex);
            else if constexpr (std::is_same_v<T, Polygon>) return cone_polygon(s, apex);
            else if constexpr (std::is_same_v<T, Disc>) return cone_disc(s, apex);
            else if constexpr (std::is_same_v<T, Ellipse>) return cone_ellipse(s, apex);
            else return cone_parabola(s, apex);
        },
        shape);
}

Angle bisector_direction(const Shape& shape, const Vec2& p) { return visual_cone(shape, p).bisector; }

BounceData boundary_data(const Shape& shape, Scalar param) {
    return std::visit(
        [&](const auto& s) -> BounceData {
            using T = std::decay_t<decltype(s)>;
            if constexpr (std::is_same_v<T, Segment>) {
                if (std::abs(param) > 1.0) throw std::out_of_range("segment parameter outside [-1,1]");
                if (1.0 - std::abs(param) <= tol_corner) throw OnCorner("segment endpoint");
                BounceData b;
                b.point = Vec2{param, 0.0};
                b.tangent_dir = Angle{0.0};
                b.curvature = 0.0;
                b.boundary_param = param;
                return b;
            } else if constexpr (std::is_same_v<T, Polygon>) {
                const std::size_t n = s.vertices.size();
                const Scalar wrapped = param - std::floor(param / static_cast<Scalar>(n)) * static_cast<Scalar>(n);
                const auto edge = static_cast<std::size_t>(wrapped);
                const Scalar frac = wrapped - static_cast<Scalar>(edge);
                const Vec2& a = s.vertices[edge % n];
                const Vec2& b = s.vertices[(edge + 1) % n];
                const Scalar len = (b - a).norm();
                if (frac * len <= tol_corner || (1.0 - frac) * len <= tol_corner)
                    throw OnCorner("polygon vertex");
                BounceData hit;
                hit.point = a + frac * (b - a);
                hit.tangent_dir = Angle::of_vector(b - a);
                hit.curvature = 0.0;
                hit.boundary_param = wrapped;
                return hit;
            } else if constexpr (std::is_same_v<T, Disc>) {
                BounceData b;
                b.point = s.center + s.radius * Vec2{std::cos(param), std::sin(param)};
                b.tangent_dir = Angle{param + kPi / 2.0};
                b.curvature = 1.0 / s.radius;
                b.boundary_param = wrap_angle(param);
                return b;
            } else if constexpr (std::is_same_v<T, Ellipse>) {
                return ellipse_boundary(s, param);
            } else {
                if (std::abs(param) > 1.0) throw std::out_of_range("arc parameter outside [-1,1]");
                if (1.0 - std::abs(param) <= tol_corner) throw OnCorner("parabola arc endpoint");
                return parabola_boundary(s, param);
            }
        },
        shape);
}

Scalar curvature_at(const Shape& shape, Scalar param) {
    return std::visit(
        [&](const auto& s) -> Scalar {
            using T = std::decay_t<decltype(s)>;
            if constexpr (std::is_same_v<T, Segment> || std::is_same_v<T, Polygon>) {
                (void)s;
                return 0.0;
            } else if constexpr (std::is_same_v<T, Disc>) {
                return 1.0 / s.radius;
            } else if constexpr (std::is_same_v<T, Ellipse>) {
                const Scalar c = std::cos(param), sn = std::sin(param);
                return s.semi_major * s.semi_minor /
                       std::pow(s.semi_major * s.semi_major * sn * sn +
                                    s.semi_minor * s.semi_minor * c * c,
                                1.5);
            } else {
                const Scalar slope = -2.0 * s.height * param;
                return 2.0 * s.height / std::pow(1.0 + slope * slope, 1.5);
            }
        },
        shape);
}

bool contains(const Shape& shape, const Vec2& p) {
    return std::visit(
        [&](const auto& s) -> bool {
            using T = std::decay_t<decltype(s)>;
            if constexpr (std::is_same_v<T, Segment>) {
                return std::abs(p.y()) <= 2.0 * tol_boundary && std::abs(p.x()) <= 1.0;
            } else if constexpr (std::is_same_v<T, Polygon>) {
                const std::size_t n = s.vertices.size();
                for (std::size_t i = 0; i < n; ++i) {
                    const Vec2& a = s.vertices[i];
                    const Vec2& b = s.vertices[(i + 1) % n];
                    if (cross(b - a, p - a) < 0.0) return false;
                }
                return true;
            } else if constexpr (std::is_same_v<T, Disc>) {
                return (p - s.center).norm() <= s.radius;
            } else if constexpr (std::is_same_v<T, Ellipse>) {
                const Scalar gx = p.x() / s.semi_major;
                const Scalar gy = p.y() / s.semi_minor;
                return gx * gx + gy * gy <= 1.0;
            } else {
                return std::abs(p.x()) <= 1.0 && p.y() <= parabola_y(s, p.x());
            }
        },
        shape);
}

Scalar shape_diameter(const Shape& shape) {
    return std::visit(
        [&](const auto& s) -> Scalar {
            using T = std::decay_t<decltype(s)>;
            if constexpr (std::is_same_v<T, Segment>) {
                return 2.0;
            } else if constexpr (std::is_same_v<T, Polygon>) {
                Scalar best = 0.0;
                for (std::size_t i = 0; i < s.vertices.size(); ++i)
                    for (std::size_t j = i + 1; j < s.vertices.size(); ++j)
                        best = std::max(best, (s.vertices[i] - s.vertices[j]).norm());
                return best;
            } else if constexpr (std::is_same_v<T, Disc>) {
                return 2.0 * s.radius;
            } else if constexpr (std::is_same_v<T, Ellipse>) {
                return 2.0 * s.semi_major;
            } else {
                return std::hypot(2.0, s.height);
            }
        },
        shape);
}

Vec2 shape_centroid(const Shape& shape) {
    if (const auto* poly = std::get_if<Polygon>(&shape)) {
        Vec2 mean{0.0, 0.0};
        for (const Vec2& v : poly->vertices) mean += v;
        return mean / static_cast<Scalar>(poly->vertices.size());
    }
    if (const auto* disc = std::get_if<Disc>(&shape)) return disc->center;
    if (const auto* arc = std::get_if<ParabolaArc>(&shape)) return Vec2{0.0, 0.5 * arc->height};
    return Vec2{0.0, 0.0};
}

void validate_shape(const Shape& shape) {
    std::visit(
        [&](const auto& s) {
            using T = std::decay_t<decltype(s)>;
            if constexpr (std::is_same_v<T, Polygon>) {
                const std::size_t n = s.vertices.size();
                if (n < 3) throw ValidationError("polygon needs at least 3 vertices");
                for (std::size_t i = 0; i < n; ++i) {
                    const Vec2 e0 = s.vertices[(i + 1) % n] - s.vertices[i];
                    const Vec2 e1 = s.vertices[(i + 2) % n] - s.vertices[(i + 1) % n];
                    if (cross(e0, e1) <= 0.0)
                        throw ValidationError("polygon must be strictly convex and counterclockwise");
                }
            } else if constexpr (std::is_same_v<T, Disc>) {
                if (!(s.radius > 0.0)) throw ValidationError("disc radius must be positive");
            } else if constexpr (std::is_same_v<T, Ellipse>) {
                if (!(s.semi_major >= s.semi_minor && s.semi_minor > 0.0))
                    throw ValidationError("ellipse requires semi_major >= semi_minor > 0");
            } else if constexpr (std::is_same_v<T, ParabolaArc>) {
                if (!(s.height > 0.0)) throw ValidationError("parabola height must be positive");
            } else {
                (void)s;
            }
        },
        shape);
}

} // namespace bob
