#include <doctest.h>

#include <cmath>
#include <random>
#include <stdexcept>

#include "lgrad/domain.hpp"
#include "oracles.hpp"

using namespace lgrad;

TEST_CASE("strict convexity classification") {
    CHECK(ConvexDomain::disk(1.0, 256).is_strictly_convex());
    auto square = ConvexDomain::polygon({{1, 1}, {-1, 1}, {-1, -1}, {1, -1}}, 16);
    CHECK(!square.is_strictly_convex());
    CHECK(!ConvexDomain::stadium(1.0, 1.0, 512).is_strictly_convex());
    CHECK(ConvexDomain::ellipse(2, 1, 512).is_strictly_convex());
}

TEST_CASE("uniform convexity coefficient") {
    SUBCASE("unit disk: a = 1/2") {
        auto disk = ConvexDomain::disk(1.0, 256);
        CHECK(disk.uniform_convexity_coefficient() == doctest::Approx(0.5).epsilon(1e-3));
        CHECK(disk.regularity_constant() == doctest::Approx(4.0).epsilon(1e-3));
    }
    SUBCASE("ellipse (2,1): a = min curvature / 2 = 1/8") {
        auto ell = ConvexDomain::ellipse(2, 1, 1024);
        CHECK(ell.uniform_convexity_coefficient() == doctest::Approx(0.125).epsilon(2e-3));
        CHECK(ell.regularity_constant() == doctest::Approx(12.0).epsilon(2e-3));
    }
    SUBCASE("disk of radius R: c = 4R") {
        auto disk3 = ConvexDomain::disk(3.0, 512);
        CHECK(disk3.uniform_convexity_coefficient() == doctest::Approx(1.0 / 6.0).epsilon(1e-3));
        CHECK(disk3.regularity_constant() == doctest::Approx(12.0).epsilon(1e-3));
    }
    SUBCASE("square is not uniformly convex") {
        auto square = ConvexDomain::polygon({{1, 1}, {-1, 1}, {-1, -1}, {1, -1}}, 16);
        CHECK_THROWS_WITH_AS(square.uniform_convexity_coefficient(),
                             doctest::Contains("not uniformly convex"), std::runtime_error);
    }
}

TEST_CASE("maximality bracket: 2a fails the containment test") {
    auto disk = ConvexDomain::disk(1.0, 256);
    double a = disk.uniform_convexity_coefficient();
    CHECK(disk.supporting_body_contains(a));
    CHECK(!disk.supporting_body_contains(2 * a));
}

TEST_CASE("regularity constant is monotone in diameter and coefficient") {
    auto d1 = ConvexDomain::disk(1.0, 256);
    auto d2 = ConvexDomain::disk(1.5, 256);
    CHECK(d2.regularity_constant() > d1.regularity_constant());
}

TEST_CASE("beta-uniform convexity of the quartic ball") {
    auto quartic = ConvexDomain::superellipse(4.0, 1.0, 1024);
    REQUIRE(quartic.beta().has_value());
    CHECK(*quartic.beta() == doctest::Approx(2.0));
    // The quartic body at its flattest point has local height s^4 / 4.
    double a = quartic.uniform_convexity_coefficient();
    CHECK(a > 0.0);
    CHECK(a <= 0.26);
    CHECK(quartic.supporting_body_contains(a));
    CHECK(!quartic.supporting_body_contains(2 * a));
}

TEST_CASE("supporting lines") {
    auto disk = ConvexDomain::disk(1.0, 256);
    auto sl = disk.supporting_line({1, 0});
    CHECK(std::fabs(sl.dir.x) < 1e-9);  // vertical tangent
    CHECK(!sl.corner);

    auto ell = ConvexDomain::ellipse(2, 1, 512);
    auto sl2 = ell.supporting_line({2, 0});
    CHECK(std::fabs(sl2.dir.x) < 1e-9);

    auto square = ConvexDomain::polygon({{1, 1}, {-1, 1}, {-1, -1}, {1, -1}}, 16);
    auto sl3 = square.supporting_line({1, 1});
    CHECK(sl3.corner);
    // Extreme directions span the corner's supporting cone: the two edges.
    CHECK(std::fabs(cross(sl3.dir_low, Vec2{0, 1})) < 1e-12);
    CHECK(std::fabs(cross(sl3.dir_high, Vec2{-1, 0})) < 1e-12);

    CHECK_THROWS(disk.supporting_line({0.5, 0.5}));  // interior point
}

TEST_CASE("chord intersections") {
    auto disk = ConvexDomain::disk(1.0, 1024);
    auto two = disk.chord_intersections({Vec2{0, 0}, Vec2{0, 1}});
    REQUIRE(two.size() == 2);
    CHECK(two[0].y == doctest::Approx(-1.0).epsilon(1e-4));
    CHECK(two[1].y == doctest::Approx(1.0).epsilon(1e-4));
    CHECK(disk.chord_intersections({Vec2{2, 0}, Vec2{0, 1}}).empty());
    auto tangent = disk.chord_intersections({Vec2{1, 0}, Vec2{0, 1}});
    CHECK(tangent.size() <= 1);  // tangency within tolerance
}

TEST_CASE("arc length parametrization wraps") {
    auto disk = ConvexDomain::disk(1.0, 256);
    double P = disk.perimeter();
    CHECK(P == doctest::Approx(2 * oracles::kPi).epsilon(1e-3));
    Vec2 p0 = disk.point_at(0.0);
    Vec2 p1 = disk.point_at(P);
    CHECK(dist(p0, p1) < 1e-12);
    CHECK(disk.diameter() == doctest::Approx(2.0).epsilon(1e-6));
    // Outward normal at angle 0 points along +x.
    Vec2 n = disk.outward_normal_at(0.0);
    CHECK(n.x > 0.99);
}

TEST_CASE("boundary function interpolation and modulus validation") {
    auto disk = ConvexDomain::disk(1.0, 256);
    auto f = BoundaryFunction::from_function(disk, [](Vec2 p) { return p.x; },
                                             Modulus::lipschitz(1.0));
    CHECK(f.min_value() == doctest::Approx(-1.0));
    CHECK(f.max_value() == doctest::Approx(1.0));
    // f = x is 1-Lipschitz in the chord distance.
    CHECK(f.modulus_validation_ratio() <= 1.0 + 1e-9);
    // Interpolated values match x along the boundary.
    for (double s : {0.1, 1.0, 2.5, 4.0, 6.0}) {
        Vec2 p = disk.point_at(s);
        CHECK(f.value_at(s) == doctest::Approx(p.x).epsilon(1e-4));
    }
    // A too-small modulus is rejected by the validation ratio.
    auto bad = BoundaryFunction::from_function(disk, [](Vec2 p) { return p.x; },
                                               Modulus::lipschitz(0.25));
    CHECK(bad.modulus_validation_ratio() > 1.0);
}

TEST_CASE("interpolated samples obey the modulus up to 1+1e-9") {
    auto disk = ConvexDomain::disk(1.0, 128);
    auto f = BoundaryFunction::from_function(
        disk, [](Vec2 p) { return std::cos(2.0 * p.angle()); }, Modulus::lipschitz(4.0));
    std::mt19937_64 rng(5);
    std::uniform_real_distribution<double> us(0.0, disk.perimeter());
    for (int i = 0; i < 2000; ++i) {
        double s1 = us(rng), s2 = us(rng);
        double d = dist(disk.point_at(s1), disk.point_at(s2));
        if (d < 1e-9) continue;
        CHECK(std::fabs(f.value_at(s1) - f.value_at(s2)) <=
              (1.0 + 1e-9) * f.modulus()(d) + 1e-12);
    }
}

TEST_CASE("lens generator produces the two-corner geometry") {
    auto lens = ConvexDomain::lens({1, 1}, oracles::kPi / 8, 512);
    CHECK(lens.is_strictly_convex());
    // The tips are on the boundary.
    Vec2 nearest;
    lens.project_to_boundary({1, 1}, &nearest);
    CHECK(dist(nearest, Vec2{1, 1}) < 1e-9);
    auto sl = lens.supporting_line({1, 1});
    CHECK(sl.corner);
}
