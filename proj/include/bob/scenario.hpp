#pragma once

#include <cstdint>
#include <string>
#include <variant>
#include <vector>

#include "bob/dynamics.hpp"
#include "bob/geometry.hpp"

namespace bob {

struct AnalysisToggles {
    bool lyapunov = false;
    bool periodic = false;
    bool jacobian = false;
};

/// Initial conditions come in two spellings: absolute phase points
/// {"x","y","angle"} and segment coordinates {"x","h","theta"}.
using InitialState = std::variant<PhasePoint, SegmentState>;

struct ScenarioConfig {
    int version = 1;
    std::string id;
    Shape shape = Segment{};
    std::vector<InitialState> initial;
    std::size_t steps = 1000;
    std::size_t record_every = 1;
    std::uint64_t seed = 0;
    AnalysisToggles analysis;
    bool nudge_restart = false;
    std::string out_csv; ///< default CSV path; --out overrides
    std::string out_svg; ///< default SVG path; --svg overrides
};

/// Parses and validates a scenario JSON document. Unknown keys are rejected
/// with their path (SchemaError); semantic problems raise ValidationError.
ScenarioConfig parse_scenario(const std::string& text);

/// Serializes with every default materialized; parse(emit(c)) == c.
std::string emit_scenario(const ScenarioConfig& config);

PhasePoint as_phase_point(const InitialState& state);

} // namespace bob
