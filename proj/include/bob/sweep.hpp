#pragma once

#include <optional>
#include <string>
#include <vector>

#include "bob/scenario.hpp"

namespace bob {

enum class SweepParam { height, invariant_a, launch_angle, loop_radius };

struct SweepAxis {
    SweepParam param = SweepParam::height;
    std::vector<Scalar> values;
};

struct SweepConfig {
    ScenarioConfig base;
    std::vector<SweepAxis> axes; ///< one or two
    std::vector<std::string> summary;
    std::size_t max_cells = 100000;
    /// When set, each cell's initial conditions are replaced by the periodic
    /// orbit built for this rotation number at the cell height, seeded at
    /// phase builder_phase on its invariant ellipse.
    std::optional<Scalar> builder_target_phi;
    Scalar builder_phase = 0.0;
};

struct SweepRow {
    std::size_t cell = 0;
    std::vector<Scalar> params;
    bool ok = true;
    std::string error;
    std::vector<Scalar> values; ///< aligned with SweepReport::columns
};

struct SweepReport {
    std::vector<std::string> param_names;
    std::vector<std::string> columns;
    std::vector<SweepRow> rows;
};

/// Evaluates every grid cell independently (worker pool of n_threads, 0 =
/// hardware concurrency); rows are ordered by cell index whatever the
/// execution order, so reports are identical across worker counts.
/// Per-cell failures land in the row's error field and never abort the sweep.
SweepReport run_sweep(const SweepConfig& config, unsigned n_threads = 0);

std::string sweep_report_csv(const SweepReport& report);

SweepConfig parse_sweep(const std::string& text);

const char* sweep_param_name(SweepParam param);

} // namespace bob
