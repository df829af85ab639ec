#include <doctest.h>

#include <cmath>
#include <random>
#include <stdexcept>

#include "lgrad/counterexamples.hpp"
#include "lgrad/gamma.hpp"
#include "lgrad/grid_oracle.hpp"
#include "oracles.hpp"

using namespace lgrad;

namespace {
BoundaryFunction cos_data(const ConvexDomain& disk) {
    return BoundaryFunction::from_function(disk, [](Vec2 p) { return p.x; },
                                           Modulus::lipschitz(1.0));
}
}  // namespace

TEST_CASE("uniform-distance energy inequality") {
    auto disk = ConvexDomain::disk(1.0, 256);
    auto f = cos_data(disk);
    auto lin = linear_solution(disk, {1, 0}, 101);
    auto l1 = AnisotropyNorm::pnorm(1);

    SUBCASE("identical norms give a zero gap") {
        auto rep = gamma_bound_check(l1, l1, disk, lin.family, f);
        CHECK(rep.lhs == doctest::Approx(0.0));
        CHECK(rep.holds);
    }
    SUBCASE("diamond against its regularizations") {
        for (double eps : {0.5, 0.1, 0.02}) {
            auto rep = gamma_bound_check(l1, l1.regularized(eps), disk, lin.family, f);
            CHECK(rep.holds);
            CHECK(rep.lhs <= rep.rhs + 1e-12);
        }
    }
    SUBCASE("random norm pairs on random rasters") {
        std::mt19937_64 rng(21);
        std::uniform_real_distribution<double> u(-1, 1);
        GridFunction g(disk, 48);
        g.apply_dirichlet(f);
        for (int j = 0; j < g.ny(); ++j)
            for (int i = 0; i < g.nx(); ++i)
                if (g.inside(i, j)) g.at(i, j) = u(rng);
        for (int trial = 0; trial < 30; ++trial) {
            auto a = oracles::random_polygon_norm(rng);
            auto b = oracles::random_polygon_norm(rng);
            auto rep = gamma_bound_check(a, b, disk, g, f);
            CHECK(rep.holds);
        }
    }
    SUBCASE("constant function and data") {
        auto fc = BoundaryFunction::from_function(disk, [](Vec2) { return 1.0; },
                                                  Modulus::lipschitz(0.0));
        auto uc = LevelSetFamily::constant(disk, 1.0);
        auto rep = gamma_bound_check(l1, AnisotropyNorm::euclidean(), disk, uc, fc);
        CHECK(rep.lhs == doctest::Approx(0.0));
        CHECK(rep.holds);
    }
}

TEST_CASE("liminf experiment") {
    auto disk = ConvexDomain::disk(1.0, 256);
    auto f = cos_data(disk);
    std::vector<double> schedule{1.0, 0.5, 0.25, 0.125, 0.0625};

    SUBCASE("strictly convex norm collapses the chain") {
        auto rep = liminf_experiment(AnisotropyNorm::pnorm(4), disk, f, schedule, {101});
        CHECK(rep.holds);
    }
    SUBCASE("diamond gauge with cosine data") {
        auto rep = liminf_experiment(AnisotropyNorm::pnorm(1), disk, f, schedule, {101});
        CHECK(rep.holds);
        CHECK(rep.margin >= 0.0);
    }
    SUBCASE("noise only raises the regularized energies") {
        auto rep = liminf_experiment(AnisotropyNorm::pnorm(1), disk, f, schedule, {101}, 1.0);
        CHECK(rep.holds);
    }
}

TEST_CASE("recovery experiment: additive regularization is exact") {
    auto disk = ConvexDomain::disk(1.0, 256);
    auto f = cos_data(disk);
    auto lin = linear_solution(disk, {1, 0}, 101);
    auto l1 = AnisotropyNorm::pnorm(1);
    std::vector<double> schedule;
    for (int k = 0; k <= 10; ++k) schedule.push_back(std::pow(2.0, -k));

    auto rep = recovery_experiment(l1, disk, lin.family, f, schedule);
    CHECK(rep.monotone);
    CHECK(rep.within_bound);
    CHECK(rep.slope_rel_err <= 0.01);  // diff = eps * F_l2 exactly
    // eps -> 0 recovers the base energy.
    std::vector<double> zero{0.0};
    auto rep0 = recovery_experiment(l1, disk, lin.family, f, zero);
    CHECK(rep0.rows[0].diff == doctest::Approx(0.0));

    SUBCASE("the jump construction obeys the same bound") {
        auto w11 = non_w11_minimizer(l1, disk, 0.2, 0.3, 101);
        auto repj = recovery_experiment(l1, disk, w11.family_view, f, schedule);
        CHECK(repj.within_bound);
        CHECK(repj.monotone);
        CHECK(repj.slope_rel_err <= 0.01);
    }
}

TEST_CASE("pointwise convergence promotes to uniform") {
    auto l1 = AnisotropyNorm::pnorm(1);

    SUBCASE("additive schedule: sup distance is exactly eps") {
        std::vector<AnisotropyNorm> seq;
        for (int n = 1; n <= 8; ++n) seq.push_back(l1.regularized(1.0 / n));
        auto rep = pointwise_uniform_check(seq, l1, 64);
        for (std::size_t k = 0; k < seq.size(); ++k) {
            CHECK(rep.sampled_max[k] == doctest::Approx(1.0 / (k + 1)).epsilon(1e-9));
            CHECK(rep.certified_sup[k] >= rep.true_sup[k] - 1e-9);
        }
        CHECK(rep.certified_decreasing);
    }
    SUBCASE("p-norm exponents approaching 1") {
        std::vector<AnisotropyNorm> seq;
        for (int n = 1; n <= 6; ++n) seq.push_back(AnisotropyNorm::pnorm(1.0 + 1.0 / n));
        auto rep = pointwise_uniform_check(seq, l1, 128);
        // Certified bounds dominate the dense estimates and shrink with n.
        for (std::size_t k = 0; k < seq.size(); ++k)
            CHECK(rep.certified_sup[k] >= rep.true_sup[k] - 1e-9);
        CHECK(rep.true_sup.back() < rep.true_sup.front());
    }
    SUBCASE("constant sequence has zero distance") {
        std::vector<AnisotropyNorm> seq{l1, l1};
        auto rep = pointwise_uniform_check(seq, l1, 32);
        CHECK(rep.sampled_max[0] == doctest::Approx(0.0));
        CHECK(rep.true_sup[1] == doctest::Approx(0.0));
    }
    SUBCASE("too few directions are rejected") {
        std::vector<AnisotropyNorm> seq{l1};
        CHECK_THROWS(pointwise_uniform_check(seq, l1, 4));
    }
}

TEST_CASE("cluster points of regularized minimizers minimize the limit energy") {
    auto disk = ConvexDomain::disk(1.0, 256);
    auto f = cos_data(disk);
    std::vector<double> schedule;
    for (int k = 0; k <= 8; ++k) schedule.push_back(std::pow(2.0, -k));
    auto sol = solve_regularized(AnisotropyNorm::pnorm(1), disk, f, schedule, {101});
    double chord_energy = relaxed_energy(AnisotropyNorm::pnorm(1), disk, sol.family, f).total();

    OracleOptions opts;
    opts.resolution = 96;
    opts.max_iters = 3000;
    opts.tol = 1e-5;
    auto oracle = minimize_tv(AnisotropyNorm::pnorm(1), disk, f, opts);
    double oracle_energy =
        relaxed_energy(AnisotropyNorm::pnorm(1), disk, oracle.u, f).total();
    CHECK(chord_energy <= oracle_energy + 0.05 * oracle_energy);
}
