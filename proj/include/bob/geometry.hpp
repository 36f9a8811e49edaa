#pragma once

#include <optional>
#include <variant>
#include <vector>

#include "bob/types.hpp"

namespace bob {

// Convex bodies (and the one concave arc) the map is defined on.
// The segment is fixed to [-1,1] x {0}; every other segment is congruent
// to it up to scaling.

struct Segment {
    static constexpr Scalar half_length = 1.0;
};

/// Strictly convex, counterclockwise vertex list.
struct Polygon {
    std::vector<Vec2> vertices;
};

struct Disc {
    Vec2 center{0.0, 0.0};
    Scalar radius = 1.0;
};

/// Axis-aligned, centered at the origin, semi_major >= semi_minor > 0.
struct Ellipse {
    Scalar semi_major = 1.0;
    Scalar semi_minor = 1.0;
};

/// Graph of -height*x^2 + height over [-1, 1] (downward arc, open set).
struct ParabolaArc {
    Scalar height = 1.0;
};

using Shape = std::variant<Segment, Polygon, Disc, Ellipse, ParabolaArc>;

/// Boundary geometry at a bounce point.
struct BounceData {
    Vec2 point{0.0, 0.0};
    Angle tangent_dir;        ///< direction of the boundary tangent at point
    Scalar curvature = 0.0;   ///< >= 0; zero on flat pieces
    Scalar boundary_param = 0.0;
};

/// Cone of directions from an exterior apex to the shape.
/// Sweeping counterclockwise from ray_h by width() reaches ray_k.
struct VisualCone {
    Angle ray_h;
    Angle ray_k;
    Angle bisector;

    Scalar width() const { return wrap_angle(ray_k.radians() - ray_h.radians()); }
};

// Absolute tolerance for "point is on the boundary", relative to shape diameter.
inline constexpr Scalar tol_boundary = 1e-12;
// Bounces closer than this to a vertex / arc endpoint are degenerate.
inline constexpr Scalar tol_corner = 1e-9;

/// Nearest intersection of the ray (origin, dir) with the boundary.
/// Returns nullopt when the ray misses; for ParabolaArc an intersection
/// only counts when the open chord origin -> w stays strictly above the
/// graph (the arc's underside is not visible).
/// Throws DegenerateBounce within tol_corner of a vertex or arc endpoint.
std::optional<BounceData> ray_intersect(const Shape& shape, const Vec2& origin, Angle dir);

/// Cone of directions from apex to the shape. For smooth closed shapes the
/// boundary rays are the two tangent rays; for Segment/Polygon they point at
/// silhouette endpoints/vertices; for ParabolaArc at the extreme visible
/// candidates (endpoints and tangency points, occlusion-filtered).
/// Throws InsideShape when the apex is inside/on the shape or sees nothing.
VisualCone visual_cone(const Shape& shape, const Vec2& apex);

/// Angular midpoint of visual_cone(shape, p).
Angle bisector_direction(const Shape& shape, const Vec2& p);

/// Point, unit tangent direction and curvature at a boundary parameter.
/// Parameter domains: Segment/ParabolaArc: x in [-1,1]; Disc/Ellipse: angle;
/// Polygon: edge index + fraction in [0, n).
/// Throws OnCorner at polygon vertices and arc endpoints.
BounceData boundary_data(const Shape& shape, Scalar boundary_param);

/// Membership in the closed region bounded by the shape. For Segment the
/// region is the segment itself; for ParabolaArc everything on or below the
/// graph with |x| <= 1 counts as inside (invisible underside).
bool contains(const Shape& shape, const Vec2& p);

/// Curvature sign convention: always the nonnegative magnitude.
Scalar curvature_at(const Shape& shape, Scalar boundary_param);

/// Loose size scale used for tolerances and plotting margins.
Scalar shape_diameter(const Shape& shape);

/// Center of the shape (vertex mean for polygons); anchors fixed-point loops.
Vec2 shape_centroid(const Shape& shape);

/// Throws ValidationError on non-convex polygons / non-positive dimensions.
void validate_shape(const Shape& shape);

} // namespace bob
