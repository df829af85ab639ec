#include "lgrad/gamma.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace lgrad {

namespace {

constexpr double kPi = 3.14159265358979323846264338327950288;

GammaBoundReport assemble(double ea, double eb, double el2, const AnisotropyNorm& a,
                          const AnisotropyNorm& b, double slack) {
    GammaBoundReport rep;
    SupDistance sd = sup_distance(a, b);
    rep.sup_dist = sd.value + sd.error_bound;
    rep.f_l2 = el2;
    rep.lhs = std::fabs(ea - eb);
    rep.rhs = rep.sup_dist * el2;
    rep.holds = rep.lhs <= rep.rhs * (1.0 + slack) + 1e-14;
    return rep;
}

}  // namespace

GammaBoundReport gamma_bound_check(const AnisotropyNorm& a, const AnisotropyNorm& b,
                                   const ConvexDomain& domain, const LevelSetFamily& u,
                                   const BoundaryFunction& f, double slack) {
    double ea = relaxed_energy(a, domain, u, f).total();
    double eb = relaxed_energy(b, domain, u, f).total();
    double el2 = relaxed_energy(AnisotropyNorm::euclidean(), domain, u, f).total();
    return assemble(ea, eb, el2, a, b, slack);
}

GammaBoundReport gamma_bound_check(const AnisotropyNorm& a, const AnisotropyNorm& b,
                                   const ConvexDomain& domain, const GridFunction& u,
                                   const BoundaryFunction& f, double slack) {
    double ea = relaxed_energy(a, domain, u, f).total();
    double eb = relaxed_energy(b, domain, u, f).total();
    double el2 = relaxed_energy(AnisotropyNorm::euclidean(), domain, u, f).total();
    return assemble(ea, eb, el2, a, b, slack);
}

LiminfReport liminf_experiment(const AnisotropyNorm& norm, const ConvexDomain& domain,
                               const BoundaryFunction& f, const std::vector<double>& eps_schedule,
                               const SolveOptions& opts, double noise, double slack) {
    if (eps_schedule.empty()) throw std::invalid_argument("liminf_experiment: empty schedule");
    LiminfReport rep;
    rep.noise = noise;

    std::vector<LevelSetFamily> iterates;
    for (double eps : eps_schedule) {
        AnisotropyNorm reg = norm.is_strictly_convex() && eps <= 0 ? norm : norm.regularized(eps);
        LevelSetFamily u_eps = solve_strict(reg, domain, f, opts);
        double energy;
        if (noise > 0.0) {
            // Rasterize and perturb; extra oscillation only raises the energy.
            GridFunction g(domain, 128);
            g.apply_dirichlet(f);
            for (int j = 0; j < g.ny(); ++j) {
                for (int i = 0; i < g.nx(); ++i) {
                    if (g.cell(i, j) != GridFunction::Cell::Free) continue;
                    unsigned h = static_cast<unsigned>(i * 2654435761u ^ j * 40503u);
                    h ^= h >> 13;
                    double sgn = (h & 1) ? 1.0 : -1.0;
                    g.at(i, j) = u_eps.value(g.center(i, j)) + sgn * noise * eps;
                }
            }
            energy = relaxed_energy(reg, domain, g, f).total();
        } else {
            energy = relaxed_energy(reg, domain, u_eps, f).total();
        }
        rep.eps.push_back(eps);
        rep.f_eps.push_back(energy);
        iterates.push_back(std::move(u_eps));
    }
    rep.f_limit = relaxed_energy(norm, domain, iterates.back(), f).total();
    std::size_t tail = std::min<std::size_t>(3, rep.f_eps.size());
    double tail_min = rep.f_eps.back();
    for (std::size_t i = rep.f_eps.size() - tail; i < rep.f_eps.size(); ++i)
        tail_min = std::min(tail_min, rep.f_eps[i]);
    double allowance = tail_min + slack * std::max(1.0, tail_min);
    rep.margin = allowance - rep.f_limit;
    rep.holds = rep.f_limit <= allowance;
    return rep;
}

RecoveryReport recovery_experiment(const AnisotropyNorm& norm, const ConvexDomain& domain,
                                   const LevelSetFamily& u, const BoundaryFunction& f,
                                   const std::vector<double>& eps_schedule) {
    RecoveryReport rep;
    rep.f_base = relaxed_energy(norm, domain, u, f).total();
    rep.f_l2 = relaxed_energy(AnisotropyNorm::euclidean(), domain, u, f).total();
    rep.monotone = true;
    rep.within_bound = true;
    double prev = std::numeric_limits<double>::infinity();
    for (double eps : eps_schedule) {
        RecoveryRow row;
        row.eps = eps;
        row.f_eps = eps > 0 ? relaxed_energy(norm.regularized(eps), domain, u, f).total()
                            : rep.f_base;
        row.diff = row.f_eps - rep.f_base;
        row.bound = eps * rep.f_l2;
        if (row.f_eps > prev + 1e-12 * std::max(1.0, prev)) rep.monotone = false;
        if (std::fabs(row.diff) > row.bound * (1.0 + 1e-9) + 1e-12) rep.within_bound = false;
        if (eps > 0 && rep.f_l2 > 0)
            rep.slope_rel_err = std::max(rep.slope_rel_err, std::fabs(row.diff / row.bound - 1.0));
        prev = row.f_eps;
        rep.rows.push_back(row);
    }
    return rep;
}

PointwiseUniformReport pointwise_uniform_check(const std::vector<AnisotropyNorm>& sequence,
                                               const AnisotropyNorm& limit, int K) {
    if (K < 8) throw std::invalid_argument("pointwise_uniform_check: need K >= 8 directions");
    PointwiseUniformReport rep;
    for (const AnisotropyNorm& n : sequence) {
        double m = 0.0;
        for (int k = 0; k < K; ++k) {
            Vec2 d = unit_dir(2.0 * kPi * k / K);
            m = std::max(m, std::fabs(n(d) - limit(d)));
        }
        // Both gauges are Lipschitz on the circle with constant sup phi, so
        // between samples the difference moves at most lip * (pi / K).
        double lip = n.gamma_upper() + limit.gamma_upper();
        double slack = lip * kPi / K;
        rep.sampled_max.push_back(m);
        rep.certified_sup.push_back(m + slack);
        rep.true_sup.push_back(sup_distance(n, limit).value);
        rep.max_slack = std::max(rep.max_slack, slack);
    }
    rep.certified_decreasing = true;
    for (std::size_t i = 1; i < rep.certified_sup.size(); ++i)
        if (rep.certified_sup[i] > rep.certified_sup[i - 1] + 1e-12) rep.certified_decreasing = false;
    return rep;
}

}  // namespace lgrad
