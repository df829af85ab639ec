#pragma once

#include "lgrad/vec.hpp"

namespace lgrad {

// Common evaluation interface for the two solution representations (chord
// level-set families and raster grid functions) and for the closed-form
// pathology constructions.
class SolutionField {
  public:
    virtual ~SolutionField() = default;
    virtual double value(const Vec2& p) const = 0;
};

}  // namespace lgrad
