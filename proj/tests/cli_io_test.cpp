#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>
#include <vector>

#include "bob/csv_export.hpp"
#include "bob/errors.hpp"
#include "bob/scenario.hpp"
#include "bob/segment_theory.hpp"
#include "bob/svg_render.hpp"
#include "bob/sweep.hpp"
#include "bob/verify.hpp"

using namespace bob;

namespace {

std::string slurp(const std::string& path) {
    std::ifstream in(path);
    REQUIRE(in.good());
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

void spit(const std::string& path, const std::string& text) {
    std::ofstream out(path);
    out << text;
}

} // namespace

TEST_CASE("scenario parsing with defaults") {
    const auto config = parse_scenario(
        R"({"shape":{"type":"segment"},"initial":[{"x":0,"h":1,"theta":0}],"steps":100})");
    CHECK(config.version == 1);
    CHECK(config.steps == 100);
    CHECK(config.record_every == 1);
    CHECK(config.seed == 0);
    CHECK(!config.analysis.lyapunov);
    CHECK(std::holds_alternative<Segment>(config.shape));
    REQUIRE(config.initial.size() == 1);
    const auto& s = std::get<SegmentState>(config.initial[0]);
    CHECK(s.h == 1.0);

    const auto ellipse_cfg = parse_scenario(
        R"({"shape":{"type":"ellipse","semi_major":1,"semi_minor":0.4},
            "initial":[{"x":2,"y":0,"angle":3.14159}],"steps":10})");
    CHECK(std::get<Ellipse>(ellipse_cfg.shape).semi_minor == 0.4);
}

TEST_CASE("scenario schema and validation errors") {
    CHECK_THROWS_AS((void)parse_scenario("{"), SchemaError);
    CHECK_THROWS_AS(
        (void)parse_scenario(
            R"({"shape":{"type":"segment"},"initial":[{"x":0,"h":1,"theta":0}],"bogus":1})"),
        SchemaError);
    CHECK_THROWS_AS(
        (void)parse_scenario(
            R"({"shape":{"type":"segment","radius":1},"initial":[{"x":0,"h":1,"theta":0}]})"),
        SchemaError);
    CHECK_THROWS_AS(
        (void)parse_scenario(
            R"({"shape":{"type":"segment"},"initial":[{"x":0,"h":1,"angle":0}]})"),
        SchemaError);
    CHECK_THROWS_AS((void)parse_scenario(R"({"shape":{"type":"segment"},"initial":[]})"),
                    ValidationError);
    // three collinear vertices
    CHECK_THROWS_AS(
        (void)parse_scenario(
            R"({"shape":{"type":"polygon","vertices":[[0,0],[1,0],[2,0]]},
                "initial":[{"x":0,"y":2,"angle":-1.5}]})"),
        ValidationError);
    CHECK_THROWS_AS(
        (void)parse_scenario(
            R"({"shape":{"type":"segment"},"initial":[{"x":0,"h":1,"theta":0}],"record_every":0})"),
        ValidationError);

    try {
        (void)parse_scenario(
            R"({"shape":{"type":"disc","radius":1,"middle":[0,0]},"initial":[{"x":0,"h":1,"theta":0}]})");
        CHECK(false);
    } catch (const SchemaError& e) {
        CHECK(e.path == "/shape/middle");
    }
}

TEST_CASE("emit then parse is the identity") {
    const std::string text =
        R"({"shape":{"type":"disc","center":[0.5,-1],"radius":2},
            "initial":[{"x":3,"y":0,"angle":2.8},{"x":0,"h":1,"theta":0.3}],
            "steps":512,"record_every":4,"seed":99,
            "analysis":{"lyapunov":true},"id":"demo"})";
    const ScenarioConfig a = parse_scenario(text);
    const ScenarioConfig b = parse_scenario(emit_scenario(a));
    CHECK(b.id == a.id);
    CHECK(b.steps == a.steps);
    CHECK(b.record_every == a.record_every);
    CHECK(b.seed == a.seed);
    CHECK(b.analysis.lyapunov == a.analysis.lyapunov);
    CHECK(std::get<Disc>(b.shape).center.x() == std::get<Disc>(a.shape).center.x());
    REQUIRE(b.initial.size() == a.initial.size());
    CHECK(std::get<PhasePoint>(b.initial[0]).v.radians() ==
          std::get<PhasePoint>(a.initial[0]).v.radians());
    CHECK(std::get<SegmentState>(b.initial[1]).theta.radians() ==
          std::get<SegmentState>(a.initial[1]).theta.radians());
}

TEST_CASE("orbit CSV export") {
    const PhasePoint fp{Vec2{0.0, 1.0}, Angle{-kPi / 2.0}};
    OrbitOptions opts;
    OrbitRecord rec = orbit(Segment{}, fp, 2, opts);
    const std::string csv = export_orbit_csv(rec);
    std::istringstream lines(csv);
    std::string line;
    std::getline(lines, line);
    CHECK(line == "step,px,py,angle,wx,wy");
    // fixed-point rows repeat (up to the 1-ulp-per-step walk of double trig)
    auto row_values = [&](const std::string& row) {
        std::vector<double> vals;
        std::istringstream cells(row);
        std::string cell;
        while (std::getline(cells, cell, ',')) vals.push_back(std::strtod(cell.c_str(), nullptr));
        return vals;
    };
    std::string row0, row1, row2;
    std::getline(lines, row0);
    std::getline(lines, row1);
    std::getline(lines, row2);
    const auto v0 = row_values(row0), v2 = row_values(row2);
    REQUIRE(v0.size() == v2.size());
    for (std::size_t c = 1; c < v0.size(); ++c) CHECK(std::abs(v0[c] - v2[c]) < 1e-12);

    // segment orbit: py column constant, round-trip bit exact
    const SegmentState s = from_ellipse_coords({0.4, 0.77, 0.1});
    rec = orbit(Segment{}, to_phase_point(s), 50, opts);
    const std::string csv2 = export_orbit_csv(rec);
    std::istringstream in(csv2);
    std::getline(in, line); // header
    std::size_t idx = 0;
    while (std::getline(in, line)) {
        std::istringstream cells(line);
        std::string cell;
        std::getline(cells, cell, ','); // step
        CHECK(std::stoul(cell) == rec.samples[idx].step);
        std::getline(cells, cell, ',');
        CHECK(std::strtod(cell.c_str(), nullptr) == rec.samples[idx].state.p.x());
        std::getline(cells, cell, ',');
        CHECK(std::strtod(cell.c_str(), nullptr) == rec.samples[idx].state.p.y());
        CHECK(std::strtod(cell.c_str(), nullptr) == doctest::Approx(0.77).epsilon(1e-13));
        std::getline(cells, cell, ',');
        CHECK(std::strtod(cell.c_str(), nullptr) == rec.samples[idx].state.v.radians());
        std::getline(cells, cell, ',');
        CHECK(std::strtod(cell.c_str(), nullptr) == rec.samples[idx].bounce.x());
        ++idx;
    }
    CHECK(idx == rec.samples.size());
}

TEST_CASE("SVG rendering is deterministic") {
    const Shape ellipse = Ellipse{1.0, 0.4};
    const std::string empty_svg = render_svg(ellipse, {});
    CHECK(empty_svg.rfind("<svg", 0) == 0);
    CHECK(empty_svg.find("<path") != std::string::npos);

    const SegmentState s = from_ellipse_coords({0.6, 0.8, 0.0});
    OrbitOptions opts;
    const OrbitRecord rec = orbit(Segment{}, to_phase_point(s), 500, opts);
    const std::string svg1 = render_svg(Segment{}, {rec});
    const std::string svg2 = render_svg(Segment{}, {rec});
    CHECK(svg1 == svg2);
    CHECK(svg1.find("<circle") != std::string::npos);
}

TEST_CASE("sweep: single cell equals a direct run") {
    SweepConfig config;
    config.base = parse_scenario(
        R"({"shape":{"type":"segment"},"initial":[{"x":0.1,"h":0.9,"theta":0.2}],"steps":200})");
    config.axes = {{SweepParam::height, {0.9}}};
    config.summary = {"max_radius", "invariant_drift"};
    const SweepReport report = run_sweep(config, 1);
    REQUIRE(report.rows.size() == 1);
    CHECK(report.rows[0].ok);

    OrbitOptions opts;
    opts.record_every = 201;
    const OrbitRecord direct =
        orbit(Segment{}, as_phase_point(config.base.initial[0]), 200, opts);
    CHECK(report.rows[0].values[0] == doctest::Approx(direct.max_radius).epsilon(1e-15));
}

TEST_CASE("sweep: period-4 builder loci and monotone rotation column") {
    SweepConfig config;
    config.base = parse_scenario(
        R"({"shape":{"type":"segment"},"initial":[{"x":0,"h":0.5,"theta":0}],"steps":64})");
    config.axes = {{SweepParam::height, {0.2, 0.3, 0.4, 0.5, 0.6, 0.7, 0.8, 0.9}}};
    config.builder_target_phi = 1.5 * kPi;
    config.builder_phase = -kPi / 4.0;
    config.summary = {"extreme_x", "w_ellipse_residual"};
    const SweepReport report = run_sweep(config, 1);
    for (const SweepRow& row : report.rows) {
        REQUIRE(row.ok);
        CHECK(row.values[1] < 1e-8); // W-family extremes on x^2/2 + y^2 = 1
    }

    SweepConfig rot;
    rot.base = parse_scenario(
        R"({"shape":{"type":"segment"},"initial":[{"x":0,"h":1,"theta":0.1}],"steps":100})");
    SweepAxis axis;
    axis.param = SweepParam::invariant_a;
    for (int i = 0; i < 30; ++i) axis.values.push_back(0.1 + 0.8 * i / 29.0);
    rot.axes = {axis};
    rot.summary = {"phi", "measured_rotation"};
    const SweepReport rr = run_sweep(rot, 1);
    for (std::size_t i = 0; i < rr.rows.size(); ++i) {
        REQUIRE(rr.rows[i].ok);
        CHECK(rr.rows[i].values[0] == doctest::Approx(rr.rows[i].values[1]).epsilon(1e-6));
        if (i > 0) CHECK(rr.rows[i].values[0] < rr.rows[i - 1].values[0]); // phi falls as a grows
    }
}

TEST_CASE("sweep reports are identical across worker counts") {
    const std::string sweep_json = R"({
        "version": 1,
        "base": {"shape":{"type":"segment"},"initial":[{"x":0.1,"h":1,"theta":0.15}],"steps":500},
        "axes": [{"param":"height","from":0.4,"to":1.6,"count":7},
                  {"param":"launch_angle","from":-0.3,"to":0.3,"count":5}],
        "summary": ["max_radius","invariant_drift","measured_rotation"]
    })";
    const SweepConfig config = parse_sweep(sweep_json);
    CHECK(config.axes.size() == 2);
    const std::string csv1 = sweep_report_csv(run_sweep(config, 1));
    const std::string csv3 = sweep_report_csv(run_sweep(config, 3));
    CHECK(csv1 == csv3);
    CHECK(csv1.find("cell,height,launch_angle,ok,error") == 0);
}

TEST_CASE("sweep validation") {
    SweepConfig config;
    config.base = parse_scenario(
        R"({"shape":{"type":"segment"},"initial":[{"x":0,"h":1,"theta":0}],"steps":10})");
    CHECK_THROWS_AS((void)run_sweep(config, 1), ValidationError); // no axes
    config.axes = {{SweepParam::height, {1.0, 2.0}}};
    config.max_cells = 1;
    CHECK_THROWS_AS((void)run_sweep(config, 1), ValidationError); // too many cells
    config.max_cells = 10;
    config.summary = {"nonsense"};
    CHECK_THROWS_AS((void)run_sweep(config, 1), ValidationError);
}

TEST_CASE("verify battery: quick level passes and the tamper hook fails") {
    VerifyOptions options;
    options.level = VerifyLevel::quick;
    const ClaimResult rotation = run_claim(3, options);
    CHECK(rotation.pass);

    VerifyOptions tampered = options;
    tampered.hooks.rotation_phi = [](Scalar a, Scalar b) {
        return rotation_number(a, b).phi + 1e-3;
    };
    const ClaimResult broken = run_claim(3, tampered);
    CHECK(!broken.pass);
}

#ifdef BOB_CLI_PATH
TEST_CASE("command-line round trip") {
    const std::string dir = "cli_io_test_artifacts";
    const int prep = std::system(("rm -rf " + dir + " && mkdir -p " + dir).c_str());
    REQUIRE(prep == 0);
    spit(dir + "/scenario.json",
         R"({"shape":{"type":"segment"},"initial":[{"x":0.1,"h":0.8,"theta":0.1}],"steps":100})");

    const std::string cli = BOB_CLI_PATH;
    int rc = std::system((cli + " orbit --config " + dir + "/scenario.json --out " + dir +
                          "/orbit.csv --svg " + dir + "/orbit.svg > " + dir + "/stdout.txt 2>&1")
                             .c_str());
    CHECK(rc == 0);
    const std::string csv = slurp(dir + "/orbit.csv");
    CHECK(csv.rfind("step,px,py,angle,wx,wy", 0) == 0);
    CHECK(slurp(dir + "/orbit.svg").rfind("<svg", 0) == 0);

    // schema failure -> exit code 1
    spit(dir + "/bad.json", R"({"shape":{"type":"segment"},"initial":[{"x":0}]})");
    rc = std::system((cli + " orbit --config " + dir + "/bad.json > /dev/null 2>&1").c_str());
    CHECK(WEXITSTATUS(rc) == 1);

    rc = std::system((cli + " rotation --height 1.0 --a 0.5 > " + dir + "/rot.txt 2>&1").c_str());
    CHECK(rc == 0);
    CHECK(slurp(dir + "/rot.txt").find("phi") != std::string::npos);

    spit(dir + "/sweep.json", R"({
        "base": {"shape":{"type":"segment"},"initial":[{"x":0,"h":1,"theta":0.1}],"steps":50},
        "axes": [{"param":"height","values":[0.5,1.0,1.5]}],
        "summary": ["max_radius","phi"]
    })");
    rc = std::system((cli + " sweep --config " + dir + "/sweep.json --out " + dir +
                      "/sweep.csv > /dev/null 2>&1")
                         .c_str());
    CHECK(rc == 0);
    CHECK(slurp(dir + "/sweep.csv").rfind("cell,height,ok,error,max_radius,phi", 0) == 0);

    spit(dir + "/ellipse.json",
         R"({"shape":{"type":"ellipse","semi_major":1,"semi_minor":0.4},
             "initial":[{"x":2,"y":0,"angle":3.14}],"steps":10})");
    rc = std::system((cli + " fixed-points --config " + dir + "/ellipse.json --radius 2 --out " +
                      dir + "/fixed.csv > /dev/null 2>&1")
                         .c_str());
    CHECK(rc == 0);
    CHECK(slurp(dir + "/fixed.csv").rfind("px,py,angle,residual", 0) == 0);

    rc = std::system((cli + " verify --quick > " + dir + "/verify.txt 2>&1").c_str());
    CHECK(rc == 0);
    const std::string verify_out = slurp(dir + "/verify.txt");
    CHECK(verify_out.find("[PASS] 1.") != std::string::npos);
    CHECK(verify_out.find("[FAIL]") == std::string::npos);
}
#endif
