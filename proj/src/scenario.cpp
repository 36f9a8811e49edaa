#include "bob/scenario.hpp"

#include <json.hpp>

#include "bob/errors.hpp"

namespace bob {

using nlohmann::json;

namespace {

void reject_unknown_keys(const json& obj, const std::string& path,
                         std::initializer_list<const char*> allowed) {
    for (const auto& [key, value] : obj.items()) {
        bool known = false;
        for (const char* a : allowed)
            if (key == a) known = true;
        if (!known) throw SchemaError(path + "/" + key, "unknown key");
    }
}

Scalar require_number(const json& obj, const std::string& path, const char* key) {
    if (!obj.contains(key)) throw SchemaError(path + "/" + key, "missing required number");
    const json& v = obj.at(key);
    if (!v.is_number()) throw SchemaError(path + "/" + key, "expected a number");
    return v.get<Scalar>();
}

Shape parse_shape(const json& node, const std::string& path) {
    if (!node.is_object()) throw SchemaError(path, "expected an object");
    if (!node.contains("type") || !node.at("type").is_string())
        throw SchemaError(path + "/type", "missing shape type");
    const std::string type = node.at("type").get<std::string>();

    if (type == "segment") {
        reject_unknown_keys(node, path, {"type"});
        return Segment{};
    }
    if (type == "polygon") {
        reject_unknown_keys(node, path, {"type", "vertices"});
        if (!node.contains("vertices") || !node.at("vertices").is_array())
            throw SchemaError(path + "/vertices", "expected an array of [x, y] pairs");
        Polygon poly;
        std::size_t idx = 0;
        for (const json& v : node.at("vertices")) {
            const std::string vpath = path + "/vertices/" + std::to_string(idx++);
            if (!v.is_array() || v.size() != 2 || !v[0].is_number() || !v[1].is_number())
                throw SchemaError(vpath, "expected [x, y]");
            poly.vertices.emplace_back(v[0].get<Scalar>(), v[1].get<Scalar>());
        }
        return poly;
    }
    if (type == "disc") {
        reject_unknown_keys(node, path, {"type", "center", "radius"});
        Disc disc;
        disc.radius = require_number(node, path, "radius");
        if (node.contains("center")) {
            const json& c = node.at("center");
            if (!c.is_array() || c.size() != 2 || !c[0].is_number() || !c[1].is_number())
                throw SchemaError(path + "/center", "expected [x, y]");
            disc.center = Vec2{c[0].get<Scalar>(), c[1].get<Scalar>()};
        }
        return disc;
    }
    if (type == "ellipse") {
        reject_unknown_keys(node, path, {"type", "semi_major", "semi_minor"});
        Ellipse ellipse;
        ellipse.semi_major = require_number(node, path, "semi_major");
        ellipse.semi_minor = require_number(node, path, "semi_minor");
        return ellipse;
    }
    if (type == "parabola") {
        reject_unknown_keys(node, path, {"type", "height"});
        return ParabolaArc{require_number(node, path, "height")};
    }
    throw SchemaError(path + "/type", "unknown shape type '" + type + "'");
}

json emit_shape(const Shape& shape) {
    json node;
    if (std::holds_alternative<Segment>(shape)) {
        node["type"] = "segment";
    } else if (const auto* poly = std::get_if<Polygon>(&shape)) {
        node["type"] = "polygon";
        json verts = json::array();
        for (const Vec2& v : poly->vertices) verts.push_back({v.x(), v.y()});
        node["vertices"] = verts;
    } else if (const auto* disc = std::get_if<Disc>(&shape)) {
        node["type"] = "disc";
        node["center"] = {disc->center.x(), disc->center.y()};
        node["radius"] = disc->radius;
    } else if (const auto* el = std::get_if<Ellipse>(&shape)) {
        node["type"] = "ellipse";
        node["semi_major"] = el->semi_major;
        node["semi_minor"] = el->semi_minor;
    } else {
        node["type"] = "parabola";
        node["height"] = std::get<ParabolaArc>(shape).height;
    }
    return node;
}

InitialState parse_initial(const json& node, const std::string& path) {
    if (!node.is_object()) throw SchemaError(path, "expected an object");
    const bool segment_style = node.contains("theta") || node.contains("h");
    const bool phase_style = node.contains("angle") || node.contains("y");
    if (segment_style && phase_style)
        throw SchemaError(path, "mix of segment keys (h/theta) and phase keys (y/angle)");
    if (segment_style) {
        reject_unknown_keys(node, path, {"x", "h", "theta"});
        SegmentState s;
        s.x = require_number(node, path, "x");
        s.h = require_number(node, path, "h");
        s.theta = Angle{require_number(node, path, "theta")};
        if (!(s.h > 0.0)) throw ValidationError(path + ": h must be positive");
        return s;
    }
    if (phase_style) {
        reject_unknown_keys(node, path, {"x", "y", "angle"});
        PhasePoint pp;
        pp.p = Vec2{require_number(node, path, "x"), require_number(node, path, "y")};
        pp.v = Angle{require_number(node, path, "angle")};
        return pp;
    }
    throw SchemaError(path, "initial condition needs either h/theta or y/angle");
}

} // namespace

ScenarioConfig parse_scenario(const std::string& text) {
    json doc;
    try {
        doc = json::parse(text);
    } catch (const json::parse_error& e) {
        throw SchemaError("/", e.what());
    }
    if (!doc.is_object()) throw SchemaError("/", "expected a JSON object");
    reject_unknown_keys(doc, "", {"version", "id", "shape", "initial", "steps", "record_every",
                                  "seed", "analysis", "nudge_restart", "output"});

    ScenarioConfig config;
    if (doc.contains("version")) {
        if (!doc.at("version").is_number_integer())
            throw SchemaError("/version", "expected an integer");
        config.version = doc.at("version").get<int>();
        if (config.version != 1) throw ValidationError("unsupported config version");
    }
    if (doc.contains("id")) {
        if (!doc.at("id").is_string()) throw SchemaError("/id", "expected a string");
        config.id = doc.at("id").get<std::string>();
    }
    if (!doc.contains("shape")) throw SchemaError("/shape", "missing shape");
    config.shape = parse_shape(doc.at("shape"), "/shape");
    validate_shape(config.shape);

    if (!doc.contains("initial") || !doc.at("initial").is_array())
        throw SchemaError("/initial", "expected an array of initial conditions");
    std::size_t idx = 0;
    for (const json& node : doc.at("initial"))
        config.initial.push_back(parse_initial(node, "/initial/" + std::to_string(idx++)));
    if (config.initial.empty()) throw ValidationError("at least one initial condition is required");

    if (doc.contains("steps")) {
        if (!doc.at("steps").is_number_unsigned()) throw SchemaError("/steps", "expected a count");
        config.steps = doc.at("steps").get<std::size_t>();
    }
    if (doc.contains("record_every")) {
        if (!doc.at("record_every").is_number_unsigned())
            throw SchemaError("/record_every", "expected a count");
        config.record_every = doc.at("record_every").get<std::size_t>();
        if (config.record_every == 0) throw ValidationError("record_every must be >= 1");
    }
    if (doc.contains("seed")) {
        if (!doc.at("seed").is_number_unsigned()) throw SchemaError("/seed", "expected an integer");
        config.seed = doc.at("seed").get<std::uint64_t>();
    }
    if (doc.contains("analysis")) {
        const json& a = doc.at("analysis");
        if (!a.is_object()) throw SchemaError("/analysis", "expected an object");
        reject_unknown_keys(a, "/analysis", {"lyapunov", "periodic", "jacobian"});
        auto flag = [&](const char* key, bool& out) {
            if (!a.contains(key)) return;
            if (!a.at(key).is_boolean()) throw SchemaError(std::string("/analysis/") + key, "expected a boolean");
            out = a.at(key).get<bool>();
        };
        flag("lyapunov", config.analysis.lyapunov);
        flag("periodic", config.analysis.periodic);
        flag("jacobian", config.analysis.jacobian);
    }
    if (doc.contains("nudge_restart")) {
        if (!doc.at("nudge_restart").is_boolean())
            throw SchemaError("/nudge_restart", "expected a boolean");
        config.nudge_restart = doc.at("nudge_restart").get<bool>();
    }
    if (doc.contains("output")) {
        const json& out = doc.at("output");
        if (!out.is_object()) throw SchemaError("/output", "expected an object");
        reject_unknown_keys(out, "/output", {"csv", "svg"});
        auto path = [&](const char* key, std::string& dst) {
            if (!out.contains(key)) return;
            if (!out.at(key).is_string())
                throw SchemaError(std::string("/output/") + key, "expected a string");
            dst = out.at(key).get<std::string>();
        };
        path("csv", config.out_csv);
        path("svg", config.out_svg);
    }
    return config;
}

std::string emit_scenario(const ScenarioConfig& config) {
    json doc;
    doc["version"] = config.version;
    doc["id"] = config.id;
    doc["shape"] = emit_shape(config.shape);
    json initial = json::array();
    for (const InitialState& state : config.initial) {
        json node;
        if (const auto* s = std::get_if<SegmentState>(&state)) {
            node["x"] = s->x;
            node["h"] = s->h;
            node["theta"] = s->theta.radians();
        } else {
            const auto& pp = std::get<PhasePoint>(state);
            node["x"] = pp.p.x();
            node["y"] = pp.p.y();
            node["angle"] = pp.v.radians();
        }
        initial.push_back(node);
    }
    doc["initial"] = initial;
    doc["steps"] = config.steps;
    doc["record_every"] = config.record_every;
    doc["seed"] = config.seed;
    doc["analysis"] = {{"lyapunov", config.analysis.lyapunov},
                       {"periodic", config.analysis.periodic},
                       {"jacobian", config.analysis.jacobian}};
    doc["nudge_restart"] = config.nudge_restart;
    doc["output"] = {{"csv", config.out_csv}, {"svg", config.out_svg}};
    return doc.dump(2);
}

PhasePoint as_phase_point(const InitialState& state) {
    if (const auto* s = std::get_if<SegmentState>(&state)) return to_phase_point(*s);
    return std::get<PhasePoint>(state);
}

} // namespace bob
