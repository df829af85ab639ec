#pragma once

#include <functional>
#include <optional>
#include <vector>

#include "lgrad/domain.hpp"
#include "lgrad/functional.hpp"
#include "lgrad/grid.hpp"
#include "lgrad/level_set.hpp"
#include "lgrad/norm.hpp"

namespace lgrad {

// Euclidean projection onto the polar unit ball { w : phi0(w) <= 1 }.
// Closed form for disks, boxes and polygon+disk Minkowski sums (covering
// l2, l1 and every regularized polygonal gauge); Newton iteration for
// ellipses; fine polygonal fallback otherwise.
class PolarProjector {
  public:
    explicit PolarProjector(const AnisotropyNorm& norm);

    Vec2 operator()(const Vec2& z) const {
        switch (kind_) {
            case Kind::Radial: {
                double n = z.norm();
                return n <= radius_ ? z : z * (radius_ / n);
            }
            case Kind::Box: {
                return {std::clamp(z.x, -bx_, bx_), std::clamp(z.y, -by_, by_)};
            }
            case Kind::RoundedBox: {
                Vec2 q{std::clamp(z.x, -bx_, bx_), std::clamp(z.y, -by_, by_)};
                Vec2 d = z - q;
                double n = d.norm();
                return n <= radius_ ? z : q + d * (radius_ / n);
            }
            case Kind::EllipseDual:
                return project_ellipse(z);
            case Kind::Polygon:
            case Kind::RoundedPolygon:
                return project_polygon(z);
        }
        return z;
    }

  private:
    enum class Kind { Radial, Box, RoundedBox, EllipseDual, Polygon, RoundedPolygon };
    Kind kind_{Kind::Radial};
    double radius_{1.0};        // disk radius of the Minkowski part
    double bx_{1.0}, by_{1.0};  // box half-widths
    std::vector<Vec2> poly_;    // polar ball polygon (CCW)
    // Eigen-decomposition of the polar ellipse matrix.
    double ed1_{1.0}, ed2_{1.0};
    Vec2 ev1_{1, 0}, ev2_{0, 1};

    Vec2 project_ellipse(const Vec2& z) const;
    Vec2 project_polygon(const Vec2& z) const;
};

// Convenience wrapper matching the per-call operation contract.
Vec2 project_polar_ball(const AnisotropyNorm& norm, const Vec2& z);

struct OracleOptions {
    int resolution{256};
    int max_iters{3000};
    double tol{1e-3};       // relative primal-dual alignment gap
    int seed{0};            // initialization selector
    int init_sweeps{100};   // harmonic warm start sweeps
    int trace_stride{1};    // record energy every k-th iteration
    // When set, free cells start from this field (overrides `seed`).
    std::function<double(Vec2)> init_field;
};

struct OracleResult {
    GridFunction u;
    std::vector<double> energy_trace;  // discrete phi-TV per recorded iteration
    std::vector<double> gap_trace;     // normalized duality-alignment gap
    int iterations{0};
    bool converged{false};
    double final_energy{0.0};
};

// Saddle-point minimization of the discrete phi-total variation with hard
// Dirichlet data on the boundary band: dual ascent + polar projection,
// primal divergence descent, over-relaxation. Steps from the operator-norm
// bound sqrt(8)/h of the forward-difference gradient.
OracleResult minimize_tv(const AnisotropyNorm& norm, const ConvexDomain& domain,
                         const BoundaryFunction& f, const OracleOptions& opts = {});

struct CompareReport {
    double l1{0.0};
    double sup{0.0};
    double area{0.0};
    EnergyReport energy_family;
    EnergyReport energy_grid;
    std::size_t cells{0};
};

// Cross-validate a chord solution against the raster oracle on the oracle's
// free cells.
CompareReport compare(const LevelSetFamily& family, const GridFunction& grid,
                      const AnisotropyNorm& norm, const BoundaryFunction& f);

}  // namespace lgrad
