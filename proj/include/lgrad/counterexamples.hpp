#pragma once

#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "lgrad/chord_solver.hpp"
#include "lgrad/domain.hpp"
#include "lgrad/functional.hpp"
#include "lgrad/level_set.hpp"
#include "lgrad/norm.hpp"
#include "lgrad/polyline.hpp"

namespace lgrad {

// Depth-limited Cantor stairs function on [0, 1]; the ternary recursion
// truncated after `depth` subdivisions (error <= 2^-depth).
double cantor_function(double x, int depth);

// ---------------------------------------------------------------------------
// Equal-perimeter facet perturbations

struct PerturbationShape {
    enum class Kind { Triangle, Staircase };
    Kind kind{Kind::Triangle};
    // Triangle bump: isosceles detour with apex over `position` (fraction of
    // the chord), base `base_fraction` of the chord length, flanks deflected
    // by `angle` (0 picks 40% of the smaller arc margin automatically).
    double position{0.5};
    double base_fraction{0.3};
    double angle{0.0};
    // Staircase along the facet arc's extreme directions.
    int steps{4};
};

// Polygonal chain from p1 to p2 with every segment normal inside the facet's
// normal arc, hence with the same anisotropic length as the straight chord.
// Throws when the chord's normal is not interior to the arc, a requested
// normal escapes the arc, or the chain exits the domain.
Polyline facet_perturbation(const AnisotropyNorm& norm, const ConvexDomain& domain,
                            const Facet& facet, const Vec2& p1, const Vec2& p2,
                            const PerturbationShape& shape = {});

// ---------------------------------------------------------------------------
// Straight-chord solution of linear data nu0 . x (the baseline all the
// pathologies perturb)

struct LinearSolution {
    LevelSetFamily family;
    BoundaryFunction data;
    Vec2 nu0;
};

LinearSolution linear_solution(const ConvexDomain& domain, const Vec2& nu0, int levels = 101);

// ---------------------------------------------------------------------------
// Non-uniqueness: two distinct minimizers with identical trace and energy

struct NonuniquePair {
    LevelSetFamily u;         // straight chords
    LevelSetFamily u_tilde;   // band of levels detoured by triangle bumps
    BoundaryFunction data;
    Vec2 nu0;
    EnergyReport energy_u, energy_tilde;
    double max_pointwise_diff{0.0};
};

NonuniquePair nonunique_pair(const AnisotropyNorm& norm, const ConvexDomain& domain,
                             int levels = 101);

// ---------------------------------------------------------------------------
// Minimizer outside W^{1,1}: a band of level chains shares one segment,
// creating a jump of the band's height across it.

struct NonW11Result {
    std::shared_ptr<SolutionField> u1;  // closed-form evaluator
    LevelSetFamily family_view;         // its level chains on a grid
    LevelSetFamily baseline;
    BoundaryFunction data;
    double band_width{0.0};
    double jump_measured{0.0};
    Vec2 segment_a, segment_b;          // the shared jump segment
    EnergyReport energy_base, energy_pert;
};

NonW11Result non_w11_minimizer(const AnisotropyNorm& norm, const ConvexDomain& domain,
                               double band_fraction = 0.2, double segment_fraction = 0.3,
                               int levels = 101);

// ---------------------------------------------------------------------------
// Minimizer outside SBV: level detours driven by (t + g(t))/2 with g the
// Cantor stairs, producing a Cantor (diffuse singular) derivative part.

struct NonSBVResult {
    std::shared_ptr<SolutionField> u2;
    LevelSetFamily family_view;
    LevelSetFamily baseline;
    BoundaryFunction data;
    int depth{12};
    double band_lo{0.0}, band_hi{0.0};
    double transversal_xi{0.0};  // xi-coordinate of the mid-strip transversal
    Vec2 frame_nu0;
    EnergyReport energy_base, energy_pert;
    // Internal consistency of the evaluator along the transversal: max
    // |recovered level - level| over 1000 samples of the construction's own
    // stairs map (independent verification belongs to the test oracles).
    double transversal_max_error{0.0};

    // Map between frame coordinates (xi along the chords, y along nu0) and
    // world coordinates, used by the transversal tests.
    Vec2 world_from_frame(double xi, double y) const;
};

NonSBVResult non_sbv_minimizer(const AnisotropyNorm& norm, const ConvexDomain& domain,
                               int depth = 12, double band_fraction = 0.4, int levels = 101);

// ---------------------------------------------------------------------------
// Vanishing-L1 family: equal-energy minimizers with L1 norms shrinking to 0

struct VanishingL1Result {
    std::vector<std::shared_ptr<SolutionField>> members;
    std::vector<LevelSetFamily> family_views;
    std::vector<double> l1_norms;
    std::vector<EnergyReport> energies;
    BoundaryFunction data;
    Vec2 x0;  // boundary point whose outward normal is interior to the facet arc
};

VanishingL1Result vanishing_l1_family(const AnisotropyNorm& norm, const ConvexDomain& domain,
                                      int n, int levels = 201);

// ---------------------------------------------------------------------------
// Barrier condition classification

struct BarrierResult {
    enum class Verdict { Satisfied, Violated, Indeterminate };
    Verdict verdict{Verdict::Indeterminate};
    std::string reason;
    std::optional<Vec2> witness;          // boundary point x0 when violated
    std::vector<Vec2> witness_wedge;      // x1, x0, x2 of the wedge competitor
    std::optional<Facet> witness_facet;
};

// Classifies (norm, domain): violated for non-strictly-convex domains and
// for smooth boundary points whose normal is interior to a facet arc;
// satisfied for strictly convex balls on strictly convex domains and for the
// corner configuration whose opening is narrower than every facet arc it
// meets; indeterminate otherwise.
BarrierResult barrier_check(const AnisotropyNorm& norm, const ConvexDomain& domain);

}  // namespace lgrad
