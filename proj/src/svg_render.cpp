#include "bob/svg_render.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <limits>

namespace bob {

namespace {

struct Box {
    Scalar xmin = std::numeric_limits<Scalar>::infinity();
    Scalar xmax = -std::numeric_limits<Scalar>::infinity();
    Scalar ymin = std::numeric_limits<Scalar>::infinity();
    Scalar ymax = -std::numeric_limits<Scalar>::infinity();

    void expand(const Vec2& p) {
        if (!std::isfinite(p.x()) || !std::isfinite(p.y())) return;
        xmin = std::min(xmin, p.x());
        xmax = std::max(xmax, p.x());
        ymin = std::min(ymin, p.y());
        ymax = std::max(ymax, p.y());
    }
};

std::string fmt(Scalar v) {
    char buffer[32];
    const auto res = std::to_chars(buffer, buffer + sizeof(buffer), v, std::chars_format::fixed, 3);
    return std::string(buffer, res.ptr);
}

std::vector<Vec2> shape_outline(const Shape& shape) {
    std::vector<Vec2> pts;
    if (std::holds_alternative<Segment>(shape)) {
        pts = {Vec2{-1.0, 0.0}, Vec2{1.0, 0.0}};
    } else if (const auto* poly = std::get_if<Polygon>(&shape)) {
        pts = poly->vertices;
        pts.push_back(poly->vertices.front());
    } else if (const auto* disc = std::get_if<Disc>(&shape)) {
        for (int i = 0; i <= 256; ++i) {
            const Scalar t = kTwoPi * i / 256.0;
            pts.push_back(disc->center + disc->radius * Vec2{std::cos(t), std::sin(t)});
        }
    } else if (const auto* el = std::get_if<Ellipse>(&shape)) {
        for (int i = 0; i <= 256; ++i) {
            const Scalar t = kTwoPi * i / 256.0;
            pts.emplace_back(el->semi_major * std::cos(t), el->semi_minor * std::sin(t));
        }
    } else {
        const auto& arc = std::get<ParabolaArc>(shape);
        for (int i = 0; i <= 256; ++i) {
            const Scalar x = -1.0 + 2.0 * i / 256.0;
            pts.emplace_back(x, arc.height * (1.0 - x * x));
        }
    }
    return pts;
}

} // namespace

std::string render_svg(const Shape& shape, const std::vector<OrbitRecord>& orbits,
                       const SvgStyle& style) {
    const std::vector<Vec2> outline = shape_outline(shape);

    Box box;
    for (const Vec2& p : outline) box.expand(p);
    for (const OrbitRecord& rec : orbits)
        for (const OrbitSample& s : rec.samples) {
            box.expand(s.state.p);
            if (style.draw_bounces) box.expand(s.bounce);
        }
    if (!(box.xmax > box.xmin)) {
        box.xmin -= 1.0;
        box.xmax += 1.0;
    }
    if (!(box.ymax > box.ymin)) {
        box.ymin -= 1.0;
        box.ymax += 1.0;
    }
    const Scalar mx = 0.05 * (box.xmax - box.xmin);
    const Scalar my = 0.05 * (box.ymax - box.ymin);
    box.xmin -= mx;
    box.xmax += mx;
    box.ymin -= my;
    box.ymax += my;

    const Scalar scale = std::min(style.width / (box.xmax - box.xmin),
                                  style.height / (box.ymax - box.ymin));
    const Scalar x_off = 0.5 * (style.width - scale * (box.xmax - box.xmin));
    const Scalar y_off = 0.5 * (style.height - scale * (box.ymax - box.ymin));
    auto sx = [&](Scalar x) { return x_off + scale * (x - box.xmin); };
    auto sy = [&](Scalar y) { return y_off + scale * (box.ymax - y); }; // y grows upward

    std::string svg;
    svg += "<svg xmlns=\"http://www.w3.org/2000/svg\" version=\"1.1\" width=\"" +
           std::to_string(style.width) + "\" height=\"" + std::to_string(style.height) + "\">\n";
    svg += "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";

    if (style.draw_shape && !outline.empty()) {
        svg += "<path fill=\"none\" stroke=\"black\" stroke-width=\"1.5\" d=\"";
        for (std::size_t i = 0; i < outline.size(); ++i) {
            svg += (i == 0 ? "M" : " L");
            svg += fmt(sx(outline[i].x())) + " " + fmt(sy(outline[i].y()));
        }
        svg += "\"/>\n";
    }

    const std::string radius = fmt(style.point_radius);
    for (std::size_t k = 0; k < orbits.size(); ++k) {
        const std::string& color =
            style.palette.empty() ? std::string("#000000") : style.palette[k % style.palette.size()];
        svg += "<g fill=\"" + color + "\">\n";
        for (const OrbitSample& s : orbits[k].samples) {
            if (!std::isfinite(s.state.p.x()) || !std::isfinite(s.state.p.y())) continue;
            svg += "<circle cx=\"" + fmt(sx(s.state.p.x())) + "\" cy=\"" + fmt(sy(s.state.p.y())) +
                   "\" r=\"" + radius + "\"/>\n";
            if (style.draw_bounces && std::isfinite(s.bounce.x()))
                svg += "<circle cx=\"" + fmt(sx(s.bounce.x())) + "\" cy=\"" +
                       fmt(sy(s.bounce.y())) + "\" r=\"" + radius + "\" fill-opacity=\"0.4\"/>\n";
        }
        svg += "</g>\n";
    }
    svg += "</svg>\n";
    return svg;
}

} // namespace bob
