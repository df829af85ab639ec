#pragma once

#include <string>
#include <vector>

#include "lgrad/level_set.hpp"
#include "lgrad/vec.hpp"

namespace lgrad {

// Minimal deterministic SVG writer: a fixed 1000x1000 viewbox, world
// coordinates mapped with a uniform scale and flipped y.
class SvgWriter {
  public:
    SvgWriter(double xmin, double xmax, double ymin, double ymax);

    void polyline(const std::vector<Vec2>& pts, const std::string& color, double width,
                  bool closed = false);
    void circle(const Vec2& center, double world_radius, const std::string& color);

    void write(const std::string& path) const;
    std::string str() const;

    // Blue-to-red ramp for level coloring; t in [0, 1].
    static std::string level_color(double t);

  private:
    double xmin_, ymin_, scale_;
    std::vector<std::string> elements_;
    Vec2 map(const Vec2& p) const;
};

// Domain boundary plus level chains colored by level; optional overlay
// family drawn on top in a contrasting style.
void render_family(const std::string& path, const LevelSetFamily& family,
                   const LevelSetFamily* overlay = nullptr);

}  // namespace lgrad
