#include "bob/csv_export.hpp"

#include <charconv>
#include <system_error>

namespace bob {

std::string format_full(Scalar value) {
    char buffer[40];
    const auto res =
        std::to_chars(buffer, buffer + sizeof(buffer), value, std::chars_format::general, 17);
    return std::string(buffer, res.ptr);
}

std::string export_orbit_csv(const OrbitRecord& record) {
    std::string out = "step,px,py,angle,wx,wy\n";
    for (const OrbitSample& s : record.samples) {
        out += std::to_string(s.step);
        out += ',';
        out += format_full(s.state.p.x());
        out += ',';
        out += format_full(s.state.p.y());
        out += ',';
        out += format_full(s.state.v.radians());
        out += ',';
        out += format_full(s.bounce.x());
        out += ',';
        out += format_full(s.bounce.y());
        out += '\n';
    }
    return out;
}

} // namespace bob
