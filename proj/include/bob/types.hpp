#pragma once

#include <Eigen/Core>
#include <cmath>
#include <numbers>

namespace bob {

using Scalar  = double;
using Vec2    = Eigen::Vector2d;
using Matrix3 = Eigen::Matrix3d;

inline constexpr Scalar kPi    = std::numbers::pi_v<Scalar>;
inline constexpr Scalar kTwoPi = 2.0 * std::numbers::pi_v<Scalar>;

/// Wrap a raw radian value into (-pi, pi].
inline Scalar wrap_angle(Scalar radians) {
    Scalar r = std::remainder(radians, kTwoPi);
    return r <= -kPi ? r + kTwoPi : r;
}

/// Plane direction, always normalized to (-pi, pi].
class Angle {
public:
    Angle() = default;
    explicit Angle(Scalar radians) : rad_(wrap_angle(radians)) {}

    static Angle of_vector(const Vec2& v) { return Angle{std::atan2(v.y(), v.x())}; }

    Scalar radians() const { return rad_; }
    Vec2 unit() const { return {std::cos(rad_), std::sin(rad_)}; }

    Angle operator+(Angle o) const { return Angle{rad_ + o.rad_}; }
    Angle operator-(Angle o) const { return Angle{rad_ - o.rad_}; }
    Angle opposite() const { return Angle{rad_ + kPi}; }

    friend bool operator==(Angle a, Angle b) { return a.rad_ == b.rad_; }

private:
    Scalar rad_ = 0.0;
};

/// Signed difference a - b in (-pi, pi].
inline Scalar angle_delta(Angle a, Angle b) { return wrap_angle(a.radians() - b.radians()); }

/// Mirror image of `a` across the axis direction `mirror` (2*mirror - a).
inline Angle reflect_across(Angle mirror, Angle a) {
    return Angle{2.0 * mirror.radians() - a.radians()};
}

} // namespace bob
