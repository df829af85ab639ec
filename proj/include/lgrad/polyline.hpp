#pragma once

#include <vector>

#include "lgrad/vec.hpp"

namespace lgrad {

// Oriented polygonal curve. Normals are the left normals of the travel
// direction, unit length; closing segment included when `closed`.
class Polyline {
  public:
    explicit Polyline(std::vector<Vec2> vertices, bool closed = false);

    const std::vector<Vec2>& vertices() const { return vertices_; }
    bool closed() const { return closed_; }
    std::size_t segment_count() const { return closed_ ? vertices_.size() : vertices_.size() - 1; }

    Vec2 segment_start(std::size_t i) const { return vertices_[i]; }
    Vec2 segment_end(std::size_t i) const { return vertices_[(i + 1) % vertices_.size()]; }
    const Vec2& normal(std::size_t i) const { return normals_[i]; }
    double segment_length(std::size_t i) const { return lengths_[i]; }

    double euclidean_length() const;

    // Max distance from the straight segment between the endpoints (open
    // curves only); used by the strict-Jensen tests.
    double deviation_from_chord() const;

  private:
    std::vector<Vec2> vertices_;
    std::vector<Vec2> normals_;
    std::vector<double> lengths_;
    bool closed_;
};

}  // namespace lgrad
