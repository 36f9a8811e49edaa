// bob: bouncing outer billiards on convex bodies.
// Subcommands: orbit, sweep, fixed-points, rotation, verify, plot.

#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>

#include <CLI11.hpp>

#include "bob/analysis.hpp"
#include "bob/csv_export.hpp"
#include "bob/errors.hpp"
#include "bob/scenario.hpp"
#include "bob/segment_theory.hpp"
#include "bob/svg_render.hpp"
#include "bob/sweep.hpp"
#include "bob/verify.hpp"

namespace {

std::string read_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open " + path);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

void write_file(const std::string& path, const std::string& content) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot write " + path);
    out << content;
}

std::string indexed_path(const std::string& path, std::size_t index, std::size_t total) {
    if (total <= 1) return path;
    const std::filesystem::path p(path);
    std::filesystem::path q = p.parent_path() / p.stem();
    return q.string() + "_" + std::to_string(index) + p.extension().string();
}

std::vector<bob::OrbitRecord> run_scenario(const bob::ScenarioConfig& config,
                                           std::size_t steps_override) {
    std::vector<bob::OrbitRecord> records;
    const std::size_t steps = steps_override > 0 ? steps_override : config.steps;
    for (std::size_t i = 0; i < config.initial.size(); ++i) {
        const bob::PhasePoint start = bob::as_phase_point(config.initial[i]);
        bob::OrbitOptions opts;
        opts.record_every = config.record_every;
        opts.nudge_restart = config.nudge_restart;

        const bool is_segment = std::holds_alternative<bob::Segment>(config.shape);
        std::optional<bob::Invariants> inv0;
        bob::Scalar drift = 0.0;
        if (is_segment && start.p.y() > 0.0) {
            const auto e0 = bob::to_ellipse_coords(bob::to_segment_state(start));
            inv0 = bob::invariants(e0);
            if (!inv0->degenerate)
                opts.observer = [&](std::size_t, const bob::StepTrace& t) {
                    const auto inv =
                        bob::invariants(bob::to_ellipse_coords(bob::to_segment_state(t.output)));
                    drift = std::max(drift, std::abs(inv.a_sq - inv0->a_sq) / inv0->a_sq);
                };
        }

        bob::OrbitRecord rec = bob::orbit(config.shape, start, steps, opts);
        rec.scenario_id = config.id.empty() ? "orbit_" + std::to_string(i)
                                            : config.id + "_" + std::to_string(i);
        if (inv0 && !inv0->degenerate) rec.invariant_drift = drift;
        if (config.analysis.lyapunov)
            rec.lyapunov = bob::lyapunov_exponent(config.shape, start, steps).lambda;
        if (inv0 && !inv0->degenerate)
            rec.measured_rotation_value = bob::measured_rotation(
                bob::to_ellipse_coords(bob::to_segment_state(start)),
                std::min<std::size_t>(steps, 20000));
        if (rec.nudge_restarts > 0)
            std::cerr << "note: orbit " << i << " used " << rec.nudge_restarts
                      << " non-canonical angular nudges\n";

        if (config.analysis.jacobian) {
            const bob::Matrix3 jac = bob::finite_diff_jacobian(config.shape, start);
            std::cout << "orbit " << i << ": det DF = " << jac.determinant() << "\n";
        }
        if (config.analysis.periodic) {
            const auto report = bob::detect_periodic(config.shape, start, 24, 1e-6);
            if (!report) {
                std::cout << "orbit " << i << ": no period <= 24 found\n";
            } else {
                std::cout << "orbit " << i << ": period " << report->period << ", closure "
                          << report->closure_error << ", eigenvalues";
                for (const auto& ev : report->eigenvalues) {
                    std::cout << " " << ev.real();
                    if (ev.imag() != 0.0) std::cout << (ev.imag() > 0 ? "+" : "") << ev.imag() << "i";
                }
                std::cout << "\n";
            }
        }
        records.push_back(std::move(rec));
    }
    return records;
}

const char* termination_name(bob::Termination t) {
    switch (t) {
    case bob::Termination::completed: return "completed";
    case bob::Termination::degenerate_bounce: return "degenerate_bounce";
    case bob::Termination::left_domain: return "left_domain";
    }
    return "?";
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"bouncing outer billiards: orbits, invariants, figures"};
    app.require_subcommand(1);

    std::string config_path, out_path, svg_path, data_dir = BOB_DATA_DIR;
    std::size_t steps = 0;
    unsigned threads = 0;
    bool quick = false;

    auto* orbit_cmd = app.add_subcommand("orbit", "iterate orbits and export CSV/SVG");
    orbit_cmd->add_option("--config", config_path, "scenario JSON")->required();
    orbit_cmd->add_option("--out", out_path, "orbit CSV path");
    orbit_cmd->add_option("--svg", svg_path, "orbit SVG path");
    orbit_cmd->add_option("--steps", steps, "override step count");

    auto* plot_cmd = app.add_subcommand("plot", "render a figure-grade SVG");
    plot_cmd->add_option("--config", config_path, "scenario JSON")->required();
    plot_cmd->add_option("--svg", svg_path, "output SVG path")->required();
    plot_cmd->add_option("--steps", steps, "override step count");
    double point_radius = 1.2;
    plot_cmd->add_option("--point-radius", point_radius, "dot radius in px");

    auto* sweep_cmd = app.add_subcommand("sweep", "deterministic parameter sweep");
    sweep_cmd->add_option("--config", config_path, "sweep JSON")->required();
    sweep_cmd->add_option("--out", out_path, "report CSV path");
    sweep_cmd->add_option("--threads", threads, "worker threads (0 = auto)");

    auto* fixed_cmd = app.add_subcommand("fixed-points", "scan a loop for fixed points");
    fixed_cmd->add_option("--config", config_path, "scenario JSON (shape is used)")->required();
    double loop_radius = 2.0;
    std::size_t n_samples = 720;
    fixed_cmd->add_option("--radius", loop_radius, "loop radius");
    fixed_cmd->add_option("--samples", n_samples, "samples around the loop");
    fixed_cmd->add_option("--out", out_path, "fixed-point CSV path");

    auto* rotation_cmd = app.add_subcommand("rotation", "rotation numbers on the segment");
    double rot_h = 0.0, rot_a = 0.0, rot_target = 0.0;
    rotation_cmd->add_option("--height", rot_h, "orbit height")->required();
    rotation_cmd->add_option("--a", rot_a, "invariant ellipse semi-axis a");
    rotation_cmd->add_option("--target", rot_target, "build a periodic orbit for this phi");
    rotation_cmd->add_option("--steps", steps, "iterates for the measured rotation");

    auto* verify_cmd = app.add_subcommand("verify", "run the verification battery");
    verify_cmd->add_flag("--quick", quick, "reduced iteration counts");
    verify_cmd->add_option("--data", data_dir, "seed-corpus directory");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 1;
    }

    try {
        if (*orbit_cmd || *plot_cmd) {
            const auto config = bob::parse_scenario(read_file(config_path));
            if (out_path.empty()) out_path = config.out_csv;
            if (svg_path.empty()) svg_path = config.out_svg;
            const auto records = run_scenario(config, steps);
            for (std::size_t i = 0; i < records.size(); ++i) {
                const auto& rec = records[i];
                std::cout << "orbit " << i << ": " << rec.steps_completed << " steps, "
                          << termination_name(rec.termination)
                          << ", max |p| = " << rec.max_radius;
                if (rec.invariant_drift) std::cout << ", a^2 drift " << *rec.invariant_drift;
                if (rec.measured_rotation_value)
                    std::cout << ", measured rotation " << *rec.measured_rotation_value;
                if (rec.lyapunov) std::cout << ", lyapunov " << *rec.lyapunov;
                std::cout << "\n";
            }
            if (!out_path.empty())
                for (std::size_t i = 0; i < records.size(); ++i)
                    write_file(indexed_path(out_path, i, records.size()),
                               bob::export_orbit_csv(records[i]));
            if (!svg_path.empty()) {
                bob::SvgStyle style;
                if (*plot_cmd) style.point_radius = point_radius;
                write_file(svg_path, bob::render_svg(config.shape, records, style));
            }
            return 0;
        }

        if (*sweep_cmd) {
            const auto config = bob::parse_sweep(read_file(config_path));
            const auto report = bob::run_sweep(config, threads);
            const std::string csv = bob::sweep_report_csv(report);
            if (out_path.empty())
                std::cout << csv;
            else
                write_file(out_path, csv);
            return 0;
        }

        if (*fixed_cmd) {
            const auto config = bob::parse_scenario(read_file(config_path));
            const auto fixed = bob::find_fixed_points(
                config.shape, bob::CircleLoop{bob::shape_centroid(config.shape), loop_radius},
                n_samples);
            std::string csv = "px,py,angle,residual\n";
            for (const auto& pp : fixed) {
                const auto trace = bob::step(config.shape, pp);
                const bob::Scalar res = (trace.output.p - pp.p).norm() +
                                        std::abs(bob::angle_delta(trace.output.v, pp.v));
                csv += bob::format_full(pp.p.x()) + "," + bob::format_full(pp.p.y()) + "," +
                       bob::format_full(pp.v.radians()) + "," + bob::format_full(res) + "\n";
            }
            std::cout << fixed.size() << " fixed points on loop radius " << loop_radius << "\n";
            if (!out_path.empty())
                write_file(out_path, csv);
            else
                std::cout << csv;
            return 0;
        }

        if (*rotation_cmd) {
            const auto [lo, hi] = bob::rotation_range(rot_h);
            std::cout << "rotation range at h = " << rot_h << ": (" << lo << ", " << hi << ")\n";
            if (rot_a > 0.0) {
                const bob::Scalar b = bob::semi_axis_b(rot_a, rot_h);
                const auto rot = bob::rotation_number(rot_a, b);
                std::cout << "a = " << rot_a << ", b = " << b << ", phi = " << rot.phi
                          << ", dphi/da|_b = " << rot.phi_prime << "\n";
                const bob::EllipseCoords e{rot_a, rot_h, 0.0};
                std::cout << "measured rotation (" << (steps > 0 ? steps : 10000)
                          << " iterates): "
                          << bob::measured_rotation(e, steps > 0 ? steps : 10000) << "\n";
            }
            if (rot_target > 0.0) {
                const auto built = bob::build_periodic_orbit(rot_h, rot_target);
                if (!built) {
                    std::cout << "no orbit with rotation number " << rot_target << " at h = "
                              << rot_h << "\n";
                } else {
                    std::cout << "periodic orbit: x = " << built->x << ", h = " << built->h
                              << ", theta = " << built->theta.radians() << "\n";
                }
            }
            return 0;
        }

        if (*verify_cmd) {
            bob::VerifyOptions options;
            options.level = quick ? bob::VerifyLevel::quick : bob::VerifyLevel::full;
            options.data_dir = data_dir;
            bool all_pass = true;
            for (const auto& result : bob::verify_suite(options)) {
                std::cout << bob::format_claim_line(result) << "\n";
                all_pass = all_pass && result.pass;
            }
            return all_pass ? 0 : 2;
        }
    } catch (const bob::SchemaError& e) {
        std::cerr << "schema error: " << e.what() << "\n";
        return 1;
    } catch (const bob::ValidationError& e) {
        std::cerr << "invalid config: " << e.what() << "\n";
        return 1;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 0;
}
