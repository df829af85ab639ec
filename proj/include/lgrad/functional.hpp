#pragma once

#include "lgrad/domain.hpp"
#include "lgrad/grid.hpp"
#include "lgrad/level_set.hpp"
#include "lgrad/norm.hpp"
#include "lgrad/polyline.hpp"

namespace lgrad {

struct EnergyReport {
    double interior{0.0};  // phi-total variation
    double boundary{0.0};  // trace penalty against the prescribed data
    double total() const { return interior + boundary; }
};

// Sum over segments of phi(normal) * length.
double anisotropic_length(const AnisotropyNorm& norm, const Polyline& curve);

// phi-length of the straight segment between the endpoints; a lower bound
// for every curve with endpoints p1, p2.
double jensen_lower_bound(const AnisotropyNorm& norm, const Vec2& p1, const Vec2& p2);

// Coarea sum: sum over levels of weight * chain phi-lengths.
double coarea_tv(const AnisotropyNorm& norm, const LevelSetFamily& family);

// Relaxed functional: interior phi-TV plus the boundary penalty
// integral of phi(outward normal) |Tu - f| along the boundary polyline.
EnergyReport relaxed_energy(const AnisotropyNorm& norm, const ConvexDomain& domain,
                            const LevelSetFamily& u, const BoundaryFunction& f);
EnergyReport relaxed_energy(const AnisotropyNorm& norm, const ConvexDomain& domain,
                            const GridFunction& u, const BoundaryFunction& f);

// Discrete phi-TV of a raster: h^2 * sum phi(forward-difference gradient).
double grid_tv(const AnisotropyNorm& norm, const GridFunction& u);

}  // namespace lgrad
