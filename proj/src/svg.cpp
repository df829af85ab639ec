#include "lgrad/svg.hpp"

#include <algorithm>
#include <cstdio>
#include <fstream>
#include <sstream>

namespace lgrad {

namespace {
std::string fmt(double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.3f", v);
    return buf;
}
}  // namespace

SvgWriter::SvgWriter(double xmin, double xmax, double ymin, double ymax) : xmin_(xmin), ymin_(ymin) {
    double w = std::max(xmax - xmin, 1e-12), h = std::max(ymax - ymin, 1e-12);
    scale_ = 960.0 / std::max(w, h);
    // Recenter so the content sits inside the fixed canvas with a margin.
    xmin_ -= (1000.0 / scale_ - w) / 2.0;
    ymin_ -= (1000.0 / scale_ - h) / 2.0;
}

Vec2 SvgWriter::map(const Vec2& p) const {
    return {(p.x - xmin_) * scale_, 1000.0 - (p.y - ymin_) * scale_};
}

void SvgWriter::polyline(const std::vector<Vec2>& pts, const std::string& color, double width,
                         bool closed) {
    if (pts.size() < 2) return;
    std::ostringstream os;
    os << (closed ? "<polygon" : "<polyline") << " fill=\"none\" stroke=\"" << color
       << "\" stroke-width=\"" << fmt(width) << "\" points=\"";
    for (std::size_t i = 0; i < pts.size(); ++i) {
        Vec2 m = map(pts[i]);
        if (i) os << ' ';
        os << fmt(m.x) << ',' << fmt(m.y);
    }
    os << "\"/>";
    elements_.push_back(os.str());
}

void SvgWriter::circle(const Vec2& center, double world_radius, const std::string& color) {
    Vec2 m = map(center);
    std::ostringstream os;
    os << "<circle cx=\"" << fmt(m.x) << "\" cy=\"" << fmt(m.y) << "\" r=\""
       << fmt(world_radius * scale_) << "\" fill=\"" << color << "\"/>";
    elements_.push_back(os.str());
}

std::string SvgWriter::str() const {
    std::ostringstream os;
    os << "<svg xmlns=\"http://www.w3.org/2000/svg\" viewBox=\"0 0 1000 1000\">\n";
    for (const auto& e : elements_) os << e << '\n';
    os << "</svg>\n";
    return os.str();
}

void SvgWriter::write(const std::string& path) const {
    std::ofstream out(path, std::ios::binary);
    out << str();
}

std::string SvgWriter::level_color(double t) {
    t = std::clamp(t, 0.0, 1.0);
    int r = static_cast<int>(40 + 215 * t);
    int g = 60;
    int b = static_cast<int>(255 - 215 * t);
    char buf[16];
    std::snprintf(buf, sizeof buf, "#%02x%02x%02x", r, g, b);
    return buf;
}

void render_family(const std::string& path, const LevelSetFamily& family,
                   const LevelSetFamily* overlay) {
    const auto& bd = family.domain().boundary();
    double xmin = 1e300, xmax = -1e300, ymin = 1e300, ymax = -1e300;
    for (const auto& v : bd) {
        xmin = std::min(xmin, v.x); xmax = std::max(xmax, v.x);
        ymin = std::min(ymin, v.y); ymax = std::max(ymax, v.y);
    }
    SvgWriter svg(xmin, xmax, ymin, ymax);
    svg.polyline(bd, "#222222", 3.0, true);
    const double lo = family.min_value(), hi = family.max_value();
    for (const Level& lvl : family.levels()) {
        double t01 = hi > lo ? (lvl.t - lo) / (hi - lo) : 0.5;
        for (const LevelChain& ch : lvl.chains)
            svg.polyline(ch.pts, SvgWriter::level_color(t01), 1.2);
    }
    if (overlay) {
        for (const Level& lvl : overlay->levels())
            for (const LevelChain& ch : lvl.chains) svg.polyline(ch.pts, "#00aa44", 0.8);
    }
    svg.write(path);
}

}  // namespace lgrad
