#pragma once

#include <string>

#include "bob/dynamics.hpp"

namespace bob {

/// Locale-independent decimal form with 17 significant digits, enough for an
/// exact double round-trip.
std::string format_full(Scalar value);

/// Header `step,px,py,angle,wx,wy`, one row per recorded sample, LF endings.
std::string export_orbit_csv(const OrbitRecord& record);

} // namespace bob
