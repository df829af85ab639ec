#pragma once

#include <optional>
#include <string>
#include <vector>

#include "lgrad/domain.hpp"
#include "lgrad/functional.hpp"
#include "lgrad/level_set.hpp"
#include "lgrad/norm.hpp"

namespace lgrad {

// Boundary arcs { f >= t } for one level.
struct LevelArcs {
    enum class Kind { Empty, Full, Arcs };
    Kind kind{Kind::Arcs};
    std::vector<std::pair<double, double>> arcs;  // (s_enter, s_exit), CCW order
    bool degenerate{false};  // some sample sat on the level within tolerance
};

LevelArcs level_arcs(const ConvexDomain& domain, const BoundaryFunction& f, double t);

struct MatchEndpoint {
    double s;     // boundary arc length
    Vec2 p;
    bool enter;   // true: f crosses up through t here (arc begins)
};

// Minimum-cost non-crossing perfect matching of enter/exit endpoints in
// cyclic boundary order, by interval dynamic programming. Ties resolve to
// the lexicographically smallest pairing. When `avoid` is given, chords
// crossing those chains pay a small penalty so that equal-cost matchings
// prefer the nested one.
std::vector<std::pair<int, int>> optimal_matching(const AnisotropyNorm& norm,
                                                  const std::vector<MatchEndpoint>& endpoints,
                                                  const std::vector<LevelChain>* avoid = nullptr);

struct SolveOptions {
    int level_count{101};
    bool descending{false};   // process levels top-down (result must agree)
    int cyclic_shift{0};      // rotate endpoint order fed to the matcher
    double value_tol_scale{1e-9};
};

// Least-gradient solution for strictly convex norm and domain: per level,
// boundary arcs + optimal chord matching, with nesting enforced across
// levels. Throws when the strict hypotheses fail.
LevelSetFamily solve_strict(const AnisotropyNorm& norm, const ConvexDomain& domain,
                            const BoundaryFunction& f, const SolveOptions& opts = {});

struct RegularizationReport {
    std::vector<double> eps;
    std::vector<double> sup_distances;  // between consecutive iterates, size eps-1
    bool cauchy{false};
    bool collapsed{false};  // norm already strictly convex, schedule unused
    bool warning_not_converged{false};
};

struct RegularizedSolution {
    LevelSetFamily family;
    RegularizationReport report;
};

// Existence route for faceted norms: solve with phi + eps l2 along the
// schedule and track sup-norm distances between successive solutions on a
// probe grid.
RegularizedSolution solve_regularized(const AnisotropyNorm& norm, const ConvexDomain& domain,
                                      const BoundaryFunction& f,
                                      const std::vector<double>& eps_schedule,
                                      const SolveOptions& opts = {}, double cauchy_tol = 1e-3,
                                      int probe_res = 64);

struct ModulusReport {
    double max_ratio{0.0};
    Vec2 worst_p, worst_q;
    double c_omega{0.0};       // regularity constant used
    double exponent{0.5};      // 1/2 or 1/(beta+2)
    std::size_t pairs{0};
};

// Checks |u(p) - u(q)| <= omega(c(Omega) |p - q|^e) over random interior
// pairs; e = 1/2, or 1/(beta+2) when beta_mode is set and the domain carries
// a beta certificate.
ModulusReport modulus_check(const SolutionField& u, const ConvexDomain& domain,
                            const Modulus& omega, bool beta_mode = false,
                            std::size_t n_pairs = 100000, unsigned seed = 1);

struct TraceReport {
    double max_deviation{0.0};
    double argmax_s{0.0};
    std::size_t samples{0};
};

// Compare the interior limit of u along inward normals with f.
TraceReport trace_check(const SolutionField& u, const ConvexDomain& domain,
                        const BoundaryFunction& f, std::size_t n_samples = 512,
                        double delta_factor = 1e-4);

// Probe lattice of interior points used by the regularization reports.
std::vector<Vec2> probe_grid(const ConvexDomain& domain, int res, double margin_factor = 1e-3);

}  // namespace lgrad
