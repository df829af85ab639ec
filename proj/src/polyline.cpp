#include "lgrad/polyline.hpp"

#include <stdexcept>

namespace lgrad {

Polyline::Polyline(std::vector<Vec2> vertices, bool closed)
    : vertices_(std::move(vertices)), closed_(closed) {
    if (vertices_.size() < 2) throw std::invalid_argument("Polyline: need at least 2 vertices");
    const std::size_t m = segment_count();
    normals_.resize(m);
    lengths_.resize(m);
    for (std::size_t i = 0; i < m; ++i) {
        Vec2 d = segment_end(i) - segment_start(i);
        double len = d.norm();
        if (len <= 0.0) throw std::invalid_argument("Polyline: repeated consecutive vertices");
        lengths_[i] = len;
        normals_[i] = d.rot90() * (1.0 / len);
    }
}

double Polyline::euclidean_length() const {
    double s = 0.0;
    for (double l : lengths_) s += l;
    return s;
}

double Polyline::deviation_from_chord() const {
    const Vec2& a = vertices_.front();
    const Vec2& b = vertices_.back();
    double dev = 0.0;
    for (const auto& v : vertices_) dev = std::max(dev, point_segment_dist(v, a, b));
    return dev;
}

}  // namespace lgrad
