#include "bob/sweep.hpp"

#include <atomic>
#include <cmath>
#include <thread>

#include <json.hpp>

#include "bob/analysis.hpp"
#include "bob/csv_export.hpp"
#include "bob/errors.hpp"
#include "bob/segment_theory.hpp"

namespace bob {

using nlohmann::json;

namespace {

const std::vector<std::string> known_summaries = {
    "max_radius",        "height_drift", "invariant_drift",   "measured_rotation",
    "phi",               "lyapunov",     "extreme_x",         "circle_residual",
    "w_ellipse_residual", "fixed_count", "max_fixed_residual"};

bool wants(const SweepConfig& cfg, const std::string& name) {
    for (const auto& s : cfg.summary)
        if (s == name) return true;
    return false;
}

void apply_param(InitialState& state, SweepParam param, Scalar value) {
    switch (param) {
    case SweepParam::height:
        if (auto* s = std::get_if<SegmentState>(&state))
            s->h = value;
        else
            std::get<PhasePoint>(state).p.y() = value;
        break;
    case SweepParam::invariant_a: {
        const Scalar h = std::holds_alternative<SegmentState>(state)
                             ? std::get<SegmentState>(state).h
                             : std::get<PhasePoint>(state).p.y();
        state = from_ellipse_coords(EllipseCoords{value, h, 0.0});
        break;
    }
    case SweepParam::launch_angle:
        if (auto* s = std::get_if<SegmentState>(&state))
            s->theta = Angle{value};
        else
            std::get<PhasePoint>(state).v = Angle{value};
        break;
    case SweepParam::loop_radius:
        break; // consumed by the fixed-point cell path
    }
}

struct CellTask {
    std::vector<Scalar> params;
};

SweepRow evaluate_cell(const SweepConfig& cfg, const SweepReport& header, std::size_t index,
                       const CellTask& task) {
    SweepRow row;
    row.cell = index;
    row.params = task.params;
    row.values.assign(header.columns.size(), std::nan(""));

    auto put = [&](const std::string& name, Scalar v) {
        for (std::size_t c = 0; c < header.columns.size(); ++c)
            if (header.columns[c] == name) row.values[c] = v;
    };

    try {
        // loop_radius axes run the fixed-point finder instead of an orbit
        std::optional<Scalar> loop_radius;
        ScenarioConfig scenario = cfg.base;
        for (std::size_t a = 0; a < cfg.axes.size(); ++a) {
            if (cfg.axes[a].param == SweepParam::loop_radius) {
                loop_radius = task.params[a];
            } else {
                for (InitialState& state : scenario.initial)
                    apply_param(state, cfg.axes[a].param, task.params[a]);
            }
        }

        if (loop_radius) {
            const auto fixed = find_fixed_points(
                scenario.shape, CircleLoop{shape_centroid(scenario.shape), *loop_radius});
            put("fixed_count", static_cast<Scalar>(fixed.size()));
            Scalar worst = 0.0;
            for (const PhasePoint& pp : fixed) {
                const StepTrace t = step(scenario.shape, pp);
                worst = std::max(worst, (t.output.p - pp.p).norm() +
                                            std::abs(angle_delta(t.output.v, pp.v)));
            }
            put("max_fixed_residual", worst);
            return row;
        }

        if (cfg.builder_target_phi) {
            if (!std::holds_alternative<Segment>(scenario.shape))
                throw ValidationError("builder sweeps need a segment scenario");
            // cell height comes from the (possibly overridden) first state
            const Scalar h = std::holds_alternative<SegmentState>(scenario.initial.front())
                                 ? std::get<SegmentState>(scenario.initial.front()).h
                                 : std::get<PhasePoint>(scenario.initial.front()).p.y();
            const auto built = build_periodic_orbit(h, *cfg.builder_target_phi);
            if (!built) throw ValidationError("no periodic orbit at this height");
            const Invariants inv = invariants(to_ellipse_coords(*built));
            scenario.initial.assign(
                1, from_ellipse_coords(ellipse_point(inv, h, cfg.builder_phase)));
        }

        const bool is_segment = std::holds_alternative<Segment>(scenario.shape);
        Scalar max_radius = 0.0, height_drift = 0.0, invariant_drift = 0.0;
        for (const InitialState& state : scenario.initial) {
            const PhasePoint start = as_phase_point(state);
            OrbitOptions opts;
            opts.record_every = scenario.steps + 1; // summaries only
            std::optional<Invariants> inv0;
            if (is_segment && start.p.y() > 0.0) {
                inv0 = invariants(to_ellipse_coords(to_segment_state(start)));
                if (!inv0->degenerate)
                    opts.observer = [&](std::size_t, const StepTrace& t) {
                        const auto e = to_ellipse_coords(to_segment_state(t.output));
                        const Invariants inv = invariants(e);
                        invariant_drift =
                            std::max(invariant_drift,
                                     std::abs(inv.a_sq - inv0->a_sq) / std::max(inv0->a_sq, 1e-300));
                    };
            }
            const OrbitRecord rec = orbit(scenario.shape, start, scenario.steps, opts);
            if (rec.termination != Termination::completed)
                throw ValidationError("orbit terminated early at step " +
                                      std::to_string(rec.steps_completed));
            max_radius = std::max(max_radius, rec.max_radius);
            height_drift = std::max(height_drift, rec.height_drift);
        }
        put("max_radius", max_radius);
        put("height_drift", height_drift);
        if (is_segment) put("invariant_drift", invariant_drift);

        if (is_segment && as_phase_point(scenario.initial.front()).p.y() > 0.0) {
            const auto e0 = to_ellipse_coords(to_segment_state(as_phase_point(scenario.initial.front())));
            const Invariants inv = invariants(e0);
            if (!inv.degenerate) {
                if (wants(cfg, "phi")) put("phi", rotation_number(inv.a(), inv.b()).phi);
                if (wants(cfg, "measured_rotation"))
                    put("measured_rotation",
                        measured_rotation(e0, std::min<std::size_t>(scenario.steps, 20000)));
                if (wants(cfg, "extreme_x") || wants(cfg, "circle_residual") ||
                    wants(cfg, "w_ellipse_residual")) {
                    SegmentState s = to_segment_state(as_phase_point(scenario.initial.front()));
                    Scalar extreme = std::abs(s.x);
                    const std::size_t span = std::min<std::size_t>(scenario.steps, 64);
                    for (std::size_t i = 0; i < span; ++i) {
                        s = step_segment(s);
                        extreme = std::max(extreme, std::abs(s.x));
                    }
                    put("extreme_x", extreme);
                    put("circle_residual", std::abs(extreme * extreme + s.h * s.h - 1.0));
                    put("w_ellipse_residual",
                        std::abs(0.5 * extreme * extreme + s.h * s.h - 1.0));
                }
            }
        }
        if (wants(cfg, "lyapunov")) {
            const auto lyap = lyapunov_exponent(
                scenario.shape, as_phase_point(scenario.initial.front()), scenario.steps);
            put("lyapunov", lyap.lambda);
        }
    } catch (const std::exception& e) {
        row.ok = false;
        row.error = e.what();
    }
    return row;
}

} // namespace

const char* sweep_param_name(SweepParam param) {
    switch (param) {
    case SweepParam::height: return "height";
    case SweepParam::invariant_a: return "invariant_a";
    case SweepParam::launch_angle: return "launch_angle";
    case SweepParam::loop_radius: return "loop_radius";
    }
    return "?";
}

SweepReport run_sweep(const SweepConfig& config, unsigned n_threads) {
    if (config.axes.empty() || config.axes.size() > 2)
        throw ValidationError("sweep needs one or two axes");
    for (const SweepAxis& axis : config.axes)
        if (axis.values.empty()) throw ValidationError("sweep axis has no values");

    SweepReport report;
    for (const SweepAxis& axis : config.axes)
        report.param_names.emplace_back(sweep_param_name(axis.param));

    const bool fixed_point_mode = config.axes.front().param == SweepParam::loop_radius;
    for (const std::string& name : config.summary) {
        bool known = false;
        for (const auto& k : known_summaries)
            if (k == name) known = true;
        if (!known) throw ValidationError("unknown summary field '" + name + "'");
        report.columns.push_back(name);
    }
    if (report.columns.empty()) {
        if (fixed_point_mode)
            report.columns = {"fixed_count", "max_fixed_residual"};
        else
            report.columns = {"max_radius", "height_drift"};
    }

    std::vector<CellTask> tasks;
    if (config.axes.size() == 1) {
        for (Scalar v : config.axes[0].values) tasks.push_back({{v}});
    } else {
        for (Scalar v0 : config.axes[0].values)
            for (Scalar v1 : config.axes[1].values) tasks.push_back({{v0, v1}});
    }
    if (tasks.size() > config.max_cells)
        throw ValidationError("sweep grid exceeds max_cells");

    report.rows.resize(tasks.size());
    unsigned workers = n_threads == 0 ? std::max(1u, std::thread::hardware_concurrency()) : n_threads;
    workers = std::min<unsigned>(workers, static_cast<unsigned>(tasks.size()));

    std::atomic<std::size_t> cursor{0};
    auto work = [&]() {
        while (true) {
            const std::size_t i = cursor.fetch_add(1);
            if (i >= tasks.size()) return;
            report.rows[i] = evaluate_cell(config, report, i, tasks[i]);
        }
    };
    if (workers <= 1) {
        work();
    } else {
        std::vector<std::thread> pool;
        pool.reserve(workers);
        for (unsigned t = 0; t < workers; ++t) pool.emplace_back(work);
        for (std::thread& t : pool) t.join();
    }
    return report;
}

std::string sweep_report_csv(const SweepReport& report) {
    std::string out = "cell";
    for (const std::string& p : report.param_names) out += "," + p;
    out += ",ok,error";
    for (const std::string& c : report.columns) out += "," + c;
    out += '\n';
    for (const SweepRow& row : report.rows) {
        out += std::to_string(row.cell);
        for (Scalar p : row.params) out += "," + format_full(p);
        out += row.ok ? ",1," : ",0,";
        std::string err = row.error;
        for (char& ch : err)
            if (ch == ',' || ch == '\n') ch = ';';
        out += err;
        for (Scalar v : row.values) out += "," + format_full(v);
        out += '\n';
    }
    return out;
}

SweepConfig parse_sweep(const std::string& text) {
    json doc;
    try {
        doc = json::parse(text);
    } catch (const json::parse_error& e) {
        throw SchemaError("/", e.what());
    }
    if (!doc.is_object()) throw SchemaError("/", "expected a JSON object");
    for (const auto& [key, value] : doc.items()) {
        (void)value;
        if (key != "version" && key != "base" && key != "axes" && key != "summary" &&
            key != "builder" && key != "max_cells")
            throw SchemaError("/" + key, "unknown key");
    }
    if (doc.contains("version") && (!doc.at("version").is_number_integer() ||
                                    doc.at("version").get<int>() != 1))
        throw ValidationError("unsupported config version");

    SweepConfig config;
    if (!doc.contains("base")) throw SchemaError("/base", "missing base scenario");
    config.base = parse_scenario(doc.at("base").dump());

    if (!doc.contains("axes") || !doc.at("axes").is_array())
        throw SchemaError("/axes", "expected an array");
    std::size_t idx = 0;
    for (const json& node : doc.at("axes")) {
        const std::string path = "/axes/" + std::to_string(idx++);
        if (!node.is_object()) throw SchemaError(path, "expected an object");
        for (const auto& [key, value] : node.items()) {
            (void)value;
            if (key != "param" && key != "values" && key != "from" && key != "to" &&
                key != "count")
                throw SchemaError(path + "/" + key, "unknown key");
        }
        if (!node.contains("param") || !node.at("param").is_string())
            throw SchemaError(path + "/param", "missing axis parameter");
        const std::string pname = node.at("param").get<std::string>();
        SweepAxis axis;
        if (pname == "height") axis.param = SweepParam::height;
        else if (pname == "invariant_a") axis.param = SweepParam::invariant_a;
        else if (pname == "launch_angle") axis.param = SweepParam::launch_angle;
        else if (pname == "loop_radius") axis.param = SweepParam::loop_radius;
        else throw SchemaError(path + "/param", "unknown parameter '" + pname + "'");

        if (node.contains("values")) {
            if (!node.at("values").is_array()) throw SchemaError(path + "/values", "expected an array");
            for (const json& v : node.at("values")) {
                if (!v.is_number()) throw SchemaError(path + "/values", "expected numbers");
                axis.values.push_back(v.get<Scalar>());
            }
        } else {
            if (!node.contains("from") || !node.contains("to") || !node.contains("count"))
                throw SchemaError(path, "axis needs either values or from/to/count");
            const Scalar from = node.at("from").get<Scalar>();
            const Scalar to = node.at("to").get<Scalar>();
            const auto count = node.at("count").get<std::size_t>();
            if (count < 1) throw ValidationError("axis count must be >= 1");
            for (std::size_t i = 0; i < count; ++i)
                axis.values.push_back(
                    count == 1 ? from
                               : from + (to - from) * static_cast<Scalar>(i) /
                                     static_cast<Scalar>(count - 1));
        }
        config.axes.push_back(std::move(axis));
    }

    if (doc.contains("summary")) {
        if (!doc.at("summary").is_array()) throw SchemaError("/summary", "expected an array");
        for (const json& s : doc.at("summary")) {
            if (!s.is_string()) throw SchemaError("/summary", "expected strings");
            config.summary.push_back(s.get<std::string>());
        }
    }
    if (doc.contains("builder")) {
        const json& b = doc.at("builder");
        if (!b.is_object()) throw SchemaError("/builder", "expected an object");
        for (const auto& [key, value] : b.items()) {
            (void)value;
            if (key != "target_phi" && key != "phase") throw SchemaError("/builder/" + key, "unknown key");
        }
        if (!b.contains("target_phi") || !b.at("target_phi").is_number())
            throw SchemaError("/builder/target_phi", "expected a number");
        config.builder_target_phi = b.at("target_phi").get<Scalar>();
        if (b.contains("phase")) config.builder_phase = b.at("phase").get<Scalar>();
    }
    if (doc.contains("max_cells")) {
        if (!doc.at("max_cells").is_number_unsigned())
            throw SchemaError("/max_cells", "expected a count");
        config.max_cells = doc.at("max_cells").get<std::size_t>();
    }
    return config;
}

} // namespace bob
