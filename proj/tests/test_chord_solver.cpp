#include <doctest.h>

#include <cmath>
#include <random>
#include <stdexcept>

#include "lgrad/chord_solver.hpp"
#include "lgrad/counterexamples.hpp"
#include "lgrad/grid_oracle.hpp"
#include "oracles.hpp"

using namespace lgrad;

namespace {

BoundaryFunction cos_data(const ConvexDomain& disk) {
    return BoundaryFunction::from_function(disk, [](Vec2 p) { return p.x; },
                                           Modulus::lipschitz(1.0));
}

BoundaryFunction two_bump_data(const ConvexDomain& disk) {
    return BoundaryFunction::from_function(
        disk, [](Vec2 p) { return std::cos(2.0 * p.angle()); }, Modulus::lipschitz(4.0));
}

}  // namespace

TEST_CASE("level arcs of cosine data") {
    auto disk = ConvexDomain::disk(1.0, 512);
    auto f = cos_data(disk);

    SUBCASE("t = 0: one arc with endpoints (0, +-1)") {
        auto arcs = level_arcs(disk, f, 0.0);
        REQUIRE(arcs.kind == LevelArcs::Kind::Arcs);
        REQUIRE(arcs.arcs.size() == 1);
        Vec2 enter = disk.point_at(arcs.arcs[0].first);
        Vec2 exit = disk.point_at(arcs.arcs[0].second);
        CHECK(dist(enter, Vec2{0, -1}) < 1e-3);
        CHECK(dist(exit, Vec2{0, 1}) < 1e-3);
    }
    SUBCASE("t below the range: full boundary") {
        CHECK(level_arcs(disk, f, f.min_value() - 1.0).kind == LevelArcs::Kind::Full);
        CHECK(level_arcs(disk, f, f.max_value() + 0.5).kind == LevelArcs::Kind::Empty);
    }
    SUBCASE("two bumps at an intermediate level: two arcs, four endpoints") {
        auto g = two_bump_data(disk);
        auto arcs = level_arcs(disk, g, 0.25);
        REQUIRE(arcs.kind == LevelArcs::Kind::Arcs);
        CHECK(arcs.arcs.size() == 2);
    }
}

TEST_CASE("optimal matching") {
    auto l2 = AnisotropyNorm::euclidean();
    auto deg = [](double d) { return d * oracles::kPi / 180.0; };

    SUBCASE("k = 1: the unique chord") {
        std::vector<MatchEndpoint> eps{{0.0, unit_dir(0), true}, {1.0, unit_dir(deg(90)), false}};
        auto pairs = optimal_matching(l2, eps);
        REQUIRE(pairs.size() == 1);
        CHECK(pairs[0] == std::pair<int, int>{0, 1});
    }
    SUBCASE("k = 2 on the disk: shorter total length wins") {
        // Arcs [10, 80] and [100, 170] degrees; candidate matchings pair
        // within arcs (cost 2*2sin(35)) or across (2sin(80) + 2sin(10)).
        std::vector<MatchEndpoint> eps{{deg(10), unit_dir(deg(10)), true},
                                       {deg(80), unit_dir(deg(80)), false},
                                       {deg(100), unit_dir(deg(100)), true},
                                       {deg(170), unit_dir(deg(170)), false}};
        auto pairs = optimal_matching(l2, eps);
        double within = 4.0 * std::sin(deg(35));
        double across = 2.0 * std::sin(deg(80)) + 2.0 * std::sin(deg(10));
        REQUIRE(within < across);  // sanity of the hand computation
        REQUIRE(pairs.size() == 2);
        CHECK(pairs[0] == std::pair<int, int>{0, 1});
        CHECK(pairs[1] == std::pair<int, int>{2, 3});
    }
    SUBCASE("exact tie resolves to the lexicographically smallest pairing") {
        // Perfect square: both non-crossing matchings cost the same.
        std::vector<MatchEndpoint> eps{{0.0, unit_dir(deg(45)), true},
                                       {1.0, unit_dir(deg(135)), false},
                                       {2.0, unit_dir(deg(225)), true},
                                       {3.0, unit_dir(deg(315)), false}};
        auto pairs = optimal_matching(l2, eps);
        REQUIRE(pairs.size() == 2);
        CHECK(pairs[0] == std::pair<int, int>{0, 1});
        CHECK(pairs[1] == std::pair<int, int>{2, 3});
        // Determinism under repetition.
        for (int rep = 0; rep < 5; ++rep) CHECK(optimal_matching(l2, eps) == pairs);
    }
    SUBCASE("odd endpoint count is rejected") {
        std::vector<MatchEndpoint> eps{{0.0, unit_dir(0), true}};
        CHECK_THROWS(optimal_matching(l2, eps));
    }
    SUBCASE("non-alternating labels are rejected") {
        std::vector<MatchEndpoint> eps{{0.0, unit_dir(0), true},
                                       {1.0, unit_dir(1), true},
                                       {2.0, unit_dir(2), false},
                                       {3.0, unit_dir(3), false}};
        CHECK_THROWS(optimal_matching(l2, eps));
    }
}

TEST_CASE("solve_strict hypothesis checks") {
    auto disk = ConvexDomain::disk(1.0, 256);
    auto square = ConvexDomain::polygon({{1, 1}, {-1, 1}, {-1, -1}, {1, -1}}, 16);
    auto f = cos_data(disk);
    CHECK_THROWS_WITH_AS(solve_strict(AnisotropyNorm::pnorm(1), disk, f),
                         doctest::Contains("solve_regularized"), std::runtime_error);
    auto fsq = BoundaryFunction::from_function(square, [](Vec2 p) { return p.x; },
                                               Modulus::lipschitz(1.0));
    CHECK_THROWS(solve_strict(AnisotropyNorm::euclidean(), square, fsq));
}

TEST_CASE("solve_strict on constant data") {
    auto disk = ConvexDomain::disk(1.0, 256);
    auto fc = BoundaryFunction::from_function(disk, [](Vec2) { return 2.5; },
                                              Modulus::lipschitz(0.0));
    auto fam = solve_strict(AnisotropyNorm::euclidean(), disk, fc);
    CHECK(fam.levels().empty());
    CHECK(fam.value({0.3, -0.2}) == doctest::Approx(2.5));
}

TEST_CASE("solve_strict on linear data reproduces the linear function") {
    auto disk = ConvexDomain::disk(1.0, 512);
    Vec2 nu0 = unit_dir(0.3);
    auto f = BoundaryFunction::from_function(disk, [&](Vec2 p) { return dot(nu0, p); },
                                             Modulus::lipschitz(1.0));
    auto fam = solve_strict(AnisotropyNorm::pnorm(4), disk, f, {201});
    // All chords perpendicular to nu0.
    for (const auto& lvl : fam.levels()) {
        for (const auto& ch : lvl.chains) {
            Vec2 d = (ch.pts.back() - ch.pts.front()).normalized();
            CHECK(std::fabs(dot(d, nu0)) < 1e-6);
        }
    }
    std::mt19937_64 rng(3);
    std::uniform_real_distribution<double> u(-0.6, 0.6);
    for (int i = 0; i < 200; ++i) {
        Vec2 p{u(rng), u(rng)};
        CHECK(fam.value(p) == doctest::Approx(dot(nu0, p)).epsilon(0.02));
    }
}

TEST_CASE("cosine data on the disk: vertical chords, u = x") {
    auto disk = ConvexDomain::disk(1.0, 512);
    auto f = cos_data(disk);
    auto fam = solve_strict(AnisotropyNorm::euclidean(), disk, f, {101});
    for (const auto& lvl : fam.levels()) {
        REQUIRE(lvl.chains.size() == 1);
        const auto& ch = lvl.chains[0];
        CHECK(std::fabs(ch.pts.front().x - ch.pts.back().x) < 1e-9);
        // Chord endpoints lie on the level set of f.
        CHECK(std::fabs(f.value_at(ch.s_begin) - lvl.t) <= 1e-6);
        CHECK(std::fabs(f.value_at(ch.s_end) - lvl.t) <= 1e-6);
    }
    CHECK(fam.value({0, 0}) == doctest::Approx(0.0).epsilon(0.02));
    CHECK(fam.count_nesting_violations(probe_grid(disk, 32)) == 0);
}

TEST_CASE("two-bump data stays nested with multiple chords per level") {
    auto disk = ConvexDomain::disk(1.0, 512);
    auto f = two_bump_data(disk);
    auto fam = solve_strict(AnisotropyNorm::euclidean(), disk, f, {101});
    bool saw_two = false;
    for (const auto& lvl : fam.levels()) saw_two = saw_two || lvl.chains.size() == 2;
    CHECK(saw_two);
    CHECK(fam.count_nesting_violations(probe_grid(disk, 32)) == 0);
    // Within-level chords are disjoint.
    for (const auto& lvl : fam.levels()) {
        for (std::size_t i = 0; i < lvl.chains.size(); ++i)
            for (std::size_t j = i + 1; j < lvl.chains.size(); ++j)
                CHECK(segment_crossing(lvl.chains[i].pts.front(), lvl.chains[i].pts.back(),
                                       lvl.chains[j].pts.front(), lvl.chains[j].pts.back(),
                                       1e-12) != 1);
    }
}

TEST_CASE("uniqueness surrogate: order and input permutations do not matter") {
    auto disk = ConvexDomain::disk(1.0, 256);
    auto f = two_bump_data(disk);
    auto norm = AnisotropyNorm::pnorm(4);
    auto a = solve_strict(norm, disk, f, {101, false, 0});
    auto b = solve_strict(norm, disk, f, {101, true, 0});
    auto c = solve_strict(norm, disk, f, {101, false, 2});
    std::mt19937_64 rng(9);
    std::uniform_real_distribution<double> u(-0.9, 0.9);
    const double dt = f.range() / 101.0;
    int n = 0;
    while (n < 1000) {
        Vec2 p{u(rng), u(rng)};
        if (!disk.contains(p)) continue;
        ++n;
        double va = a.value(p);
        CHECK(std::fabs(va - b.value(p)) <= dt + 1e-9);
        CHECK(std::fabs(va - c.value(p)) <= dt + 1e-9);
    }
}

TEST_CASE("trace check on the strict solution") {
    auto disk = ConvexDomain::disk(1.0, 512);
    auto f = cos_data(disk);
    auto fam = solve_strict(AnisotropyNorm::euclidean(), disk, f, {201});
    auto rep = trace_check(fam, disk, f);
    const double dt = f.range() / 201.0;
    CHECK(rep.max_deviation <= dt + 0.01);
}

TEST_CASE("interior ball inside plateau level sets") {
    // Clamped cosine: f plateaus at 1/2 over an arc, so {u >= t_top} has
    // interior; every plateau point admits a ball inside it.
    auto disk = ConvexDomain::disk(1.0, 512);
    auto f = BoundaryFunction::from_function(
        disk, [](Vec2 p) { return std::clamp(p.x, -0.5, 0.5); }, Modulus::lipschitz(1.0));
    auto fam = solve_strict(AnisotropyNorm::euclidean(), disk, f, {101});
    std::size_t top = fam.levels().size() - 1;
    Vec2 plateau_pt{0.8, 0.0};
    REQUIRE(fam.contains(top, plateau_pt));
    const double r = 0.05;
    for (int k = 0; k < 16; ++k) {
        Vec2 q = plateau_pt + r * unit_dir(2 * oracles::kPi * k / 16);
        CHECK(fam.contains(top, q));
    }
}

TEST_CASE("solve_regularized collapses for strictly convex norms") {
    auto disk = ConvexDomain::disk(1.0, 256);
    auto f = cos_data(disk);
    auto sol = solve_regularized(AnisotropyNorm::pnorm(4), disk, f, {1.0, 0.5, 0.25});
    CHECK(sol.report.collapsed);
    CHECK(sol.report.cauchy);
}

TEST_CASE("solve_regularized on the diamond gauge") {
    auto disk = ConvexDomain::disk(1.0, 256);
    auto f = cos_data(disk);
    std::vector<double> schedule;
    for (int k = 0; k <= 6; ++k) schedule.push_back(std::pow(2.0, -k));
    auto sol = solve_regularized(AnisotropyNorm::pnorm(1), disk, f, schedule, {101});
    CHECK(!sol.report.collapsed);
    CHECK(sol.report.cauchy);
    REQUIRE(sol.report.sup_distances.size() == schedule.size() - 1);
    // Cosine data forces the same chords at every eps: distances vanish.
    for (double d : sol.report.sup_distances) CHECK(d <= 1e-12);
    auto rep = trace_check(sol.family, disk, f);
    CHECK(rep.max_deviation <= f.range() / 101.0 + 0.01);
}

TEST_CASE("solve_regularized on two-bump data (matching depends on eps)") {
    auto disk = ConvexDomain::disk(1.0, 512);
    auto f = two_bump_data(disk);
    std::vector<double> schedule;
    for (int k = 0; k <= 8; ++k) schedule.push_back(std::pow(2.0, -k));
    auto sol = solve_regularized(AnisotropyNorm::pnorm(1), disk, f, schedule, {101});
    CHECK(sol.report.cauchy);
    CHECK(sol.family.count_nesting_violations(probe_grid(disk, 24)) == 0);
    // The selected limit is energy-minimal for the crystalline norm up to
    // discretization: cross-check against the raster path.
    OracleOptions opts;
    opts.resolution = 96;
    opts.max_iters = 3000;
    opts.tol = 1e-5;
    auto res = minimize_tv(AnisotropyNorm::pnorm(1), disk, f, opts);
    double chord_e = relaxed_energy(AnisotropyNorm::pnorm(1), disk, sol.family, f).total();
    double grid_e = relaxed_energy(AnisotropyNorm::pnorm(1), disk, res.u, f).total();
    CHECK(chord_e <= grid_e * 1.05);

    SUBCASE("a schedule cut short reports non-convergence") {
        auto brief = solve_regularized(AnisotropyNorm::pnorm(1), disk, f, {1.0, 0.9}, {101},
                                       1e-9);
        CHECK((brief.report.warning_not_converged || brief.report.sup_distances.back() <= 1e-9 * f.range()));
    }
}

TEST_CASE("modulus check on the disk") {
    auto disk = ConvexDomain::disk(1.0, 256);
    auto f = cos_data(disk);
    auto fam = solve_strict(AnisotropyNorm::euclidean(), disk, f, {101});
    auto rep = modulus_check(fam, disk, f.modulus(), false, 20000, 5);
    CHECK(rep.c_omega == doctest::Approx(4.0).epsilon(1e-3));
    CHECK(rep.max_ratio <= 1.0 + 1e-3);

    auto rc = modulus_check(LevelSetFamily::constant(disk, 1.0), disk, Modulus::lipschitz(1.0),
                            false, 1000, 5);
    CHECK(rc.max_ratio == doctest::Approx(0.0));
}

TEST_CASE("ellipse domain: chords and the c(Omega)=12 modulus bound") {
    auto ell = ConvexDomain::ellipse(2, 1, 1024);
    Vec2 nu0 = unit_dir(1.1);
    auto f = BoundaryFunction::from_function(ell, [&](Vec2 p) { return dot(nu0, p); },
                                             Modulus::lipschitz(1.0));
    auto fam = solve_strict(AnisotropyNorm::euclidean(), ell, f, {101});
    for (const auto& lvl : fam.levels())
        for (const auto& ch : lvl.chains)
            CHECK(std::fabs(dot((ch.pts.back() - ch.pts.front()).normalized(), nu0)) < 1e-6);
    // Regularity constant diam + 1/a = 4 + 8 = 12 bounds the modulus.
    auto rep = modulus_check(fam, ell, f.modulus(), false, 20000, 9);
    CHECK(rep.c_omega == doctest::Approx(12.0).epsilon(2e-3));
    CHECK(rep.max_ratio <= 1.0 + 1e-3);
}

TEST_CASE("degenerate level data is flagged, not silently accepted") {
    auto disk = ConvexDomain::disk(1.0, 64);
    auto f = BoundaryFunction::from_function(
        disk, [](Vec2 p) { return std::clamp(p.x, -0.5, 0.5); }, Modulus::lipschitz(1.0));
    // The clamped plateau sits exactly at value 0.5: querying that level
    // reports degeneracy.
    auto arcs = level_arcs(disk, f, 0.5);
    CHECK(arcs.degenerate);
}
