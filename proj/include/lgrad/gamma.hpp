#pragma once

#include <vector>

#include "lgrad/chord_solver.hpp"
#include "lgrad/domain.hpp"
#include "lgrad/functional.hpp"
#include "lgrad/grid.hpp"
#include "lgrad/level_set.hpp"
#include "lgrad/norm.hpp"

namespace lgrad {

struct GammaBoundReport {
    double lhs{0.0};       // |F_a(u) - F_b(u)|
    double rhs{0.0};       // sup|a - b| * F_l2(u)
    double sup_dist{0.0};
    double f_l2{0.0};
    bool holds{false};     // lhs <= rhs * (1 + slack)
};

// The uniform-distance energy inequality |F_a(u) - F_b(u)| <=
// sup_{|v|=1} |a(v) - b(v)| * F_l2(u).
GammaBoundReport gamma_bound_check(const AnisotropyNorm& a, const AnisotropyNorm& b,
                                   const ConvexDomain& domain, const LevelSetFamily& u,
                                   const BoundaryFunction& f, double slack = 1e-6);
GammaBoundReport gamma_bound_check(const AnisotropyNorm& a, const AnisotropyNorm& b,
                                   const ConvexDomain& domain, const GridFunction& u,
                                   const BoundaryFunction& f, double slack = 1e-6);

struct LiminfReport {
    std::vector<double> eps;
    std::vector<double> f_eps;     // F_{phi+eps l2}(u_eps)
    double f_limit{0.0};           // F_phi(last iterate)
    double margin{0.0};            // min(tail) + slack - f_limit
    bool holds{false};
    double noise{0.0};
};

// Solve under the regularized norms along the schedule and test
// F_phi(u_last) <= min over the last three F_eps values (a finite surrogate
// for the liminf inequality). With noise > 0 the energies are evaluated on a
// raster perturbed by +-noise*eps, which only raises them.
LiminfReport liminf_experiment(const AnisotropyNorm& norm, const ConvexDomain& domain,
                               const BoundaryFunction& f, const std::vector<double>& eps_schedule,
                               const SolveOptions& opts = {}, double noise = 0.0,
                               double slack = 1e-6);

struct RecoveryRow {
    double eps{0.0};
    double f_eps{0.0};
    double diff{0.0};   // F_eps - F_base
    double bound{0.0};  // eps * F_l2
};

struct RecoveryReport {
    std::vector<RecoveryRow> rows;
    double f_base{0.0};
    double f_l2{0.0};
    bool monotone{false};
    bool within_bound{false};
    double slope_rel_err{0.0};  // max |diff/(eps*F_l2) - 1|
};

// Recovery-sequence check along the constant sequence u_n = u: the
// regularized energies must decrease to F_phi(u) with gap exactly
// eps * F_l2(u) for additive regularization.
RecoveryReport recovery_experiment(const AnisotropyNorm& norm, const ConvexDomain& domain,
                                   const LevelSetFamily& u, const BoundaryFunction& f,
                                   const std::vector<double>& eps_schedule);

struct PointwiseUniformReport {
    std::vector<double> sampled_max;     // max over the K directions
    std::vector<double> certified_sup;   // sampled_max + Lipschitz slack
    std::vector<double> true_sup;        // independent dense estimate
    double max_slack{0.0};               // worst inter-sample slack
    bool certified_decreasing{false};
};

// Pointwise convergence at K sampled directions promotes to uniform: the
// gauges are Lipschitz on the circle with constant sup phi_n, which bounds
// the gap between samples. K must be at least 8.
PointwiseUniformReport pointwise_uniform_check(const std::vector<AnisotropyNorm>& sequence,
                                               const AnisotropyNorm& limit, int K);

}  // namespace lgrad
