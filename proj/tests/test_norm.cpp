#include <doctest.h>

#include <cmath>
#include <limits>
#include <random>

#include "lgrad/norm.hpp"
#include "oracles.hpp"

using namespace lgrad;

namespace {
const double kInf = std::numeric_limits<double>::infinity();

AnisotropyNorm hexagon_gauge() {
    std::vector<Vec2> v;
    for (int k = 0; k < 6; ++k) v.push_back(unit_dir(oracles::kPi * k / 3.0));
    return AnisotropyNorm::polygonal(v);
}
}  // namespace

TEST_CASE("gauge evaluation on the closed forms") {
    auto l1 = AnisotropyNorm::pnorm(1);
    auto l2 = AnisotropyNorm::euclidean();
    CHECK(l1(Vec2{1, 1}) == doctest::Approx(2.0));
    CHECK(l2(Vec2{3, 4}) == doctest::Approx(5.0));
    CHECK(AnisotropyNorm::pnorm(kInf)(Vec2{3, -4}) == doctest::Approx(4.0));
    CHECK(AnisotropyNorm::pnorm(4)(Vec2{1, 1}) == doctest::Approx(std::pow(2.0, 0.25)));

    auto hex = hexagon_gauge();
    for (const auto& v : hex.vertices()) CHECK(hex(v) == doctest::Approx(1.0));
    CHECK(l1(Vec2{0, 0}) == 0.0);
}

TEST_CASE("polygonal construction rejects bad vertex lists") {
    CHECK_THROWS(AnisotropyNorm::polygonal({{1, 0}, {0, 1}, {-1, 0}}));  // not symmetric
    CHECK_THROWS(AnisotropyNorm::polygonal({{1, 0}, {-1, 0}}));          // too few
    // Non-convex list
    CHECK_THROWS(AnisotropyNorm::polygonal(
        {{1, 0}, {0.1, 0.1}, {0, 1}, {-1, 0}, {-0.1, -0.1}, {0, -1}}));
}

TEST_CASE("polar duals") {
    auto l1 = AnisotropyNorm::pnorm(1);
    auto linf = l1.polar();
    CHECK(linf(Vec2{1, 1}) == doctest::Approx(1.0));
    auto l2 = AnisotropyNorm::euclidean().polar();
    CHECK(l2(Vec2{3, 4}) == doctest::Approx(5.0));
    CHECK(AnisotropyNorm::pnorm(3).polar().pnorm_exponent() == doctest::Approx(1.5));

    // Ellipse dual: phi(x) = sqrt(x^T A x) has polar sqrt(x^T A^{-1} x).
    auto e = AnisotropyNorm::ellipse(4, 0, 1);
    auto ep = e.polar();
    CHECK(ep(Vec2{1, 0}) == doctest::Approx(0.5));
    CHECK(ep(Vec2{0, 1}) == doctest::Approx(1.0));

    // Hexagon polar against the brute-force supremum oracle.
    auto hex = hexagon_gauge();
    auto hexp = hex.polar();
    std::mt19937_64 rng(42);
    std::uniform_real_distribution<double> u(-2, 2);
    for (int i = 0; i < 24; ++i) {
        Vec2 z{u(rng), u(rng)};
        double brute = oracles::brute_polar(hex, z);
        // The sampled sup sits below the true value by at most the angular
        // step times |z|.
        CHECK(hexp(z) >= brute - 1e-12);
        CHECK(hexp(z) == doctest::Approx(brute).epsilon(1e-4));
    }
}

TEST_CASE("bipolar identity for polygonal norms") {
    std::mt19937_64 rng(7);
    std::uniform_real_distribution<double> u(-3, 3);
    for (int trial = 0; trial < 12; ++trial) {
        auto phi = oracles::random_polygon_norm(rng);
        auto phi2 = phi.polar().polar();
        for (int i = 0; i < 100; ++i) {
            Vec2 xi{u(rng), u(rng)};
            CHECK(phi2(xi) == doctest::Approx(phi(xi)).epsilon(1e-9));
        }
    }
}

TEST_CASE("facets of the diamond") {
    auto l1 = AnisotropyNorm::pnorm(1);
    auto facets = l1.facets();
    REQUIRE(facets.size() == 4);
    // Facet from (1,0) to (0,1): arc [0, pi/2].
    const Facet* f = nullptr;
    for (const auto& fa : facets)
        if (dist(fa.a, Vec2{1, 0}) < 1e-12 && dist(fa.b, Vec2{0, 1}) < 1e-12) f = &fa;
    REQUIRE(f != nullptr);
    CHECK(f->arc_begin == doctest::Approx(0.0));
    CHECK(f->arc_end == doctest::Approx(oracles::kPi / 2));
    // alpha nu0 with alpha = 1/phi(nu0) lands on the segment.
    Vec2 nu0 = unit_dir(oracles::kPi / 4);
    Vec2 pt = nu0 * (1.0 / l1(nu0));
    CHECK(point_segment_dist(pt, f->a, f->b) < 1e-12);
    CHECK(pt.x == doctest::Approx(0.5));

    CHECK(AnisotropyNorm::euclidean().facets().empty());
    CHECK(l1.regularized(0.01).facets().empty());
}

TEST_CASE("facet consistency: interior arc directions hit the segment") {
    auto hex = hexagon_gauge();
    for (const auto& fa : hex.facets()) {
        for (int k = 1; k < 100; ++k) {
            double th = fa.arc_begin + fa.arc_width() * k / 100.0;
            Vec2 d = unit_dir(th);
            Vec2 p = d * (1.0 / hex(d));
            CHECK(point_segment_dist(p, fa.a, fa.b) < 1e-9);
        }
    }
    // Arcs of distinct facets have disjoint interiors.
    auto facets = hex.facets();
    for (std::size_t i = 0; i < facets.size(); ++i)
        for (std::size_t j = i + 1; j < facets.size(); ++j) {
            double mid = facets[i].arc_mid();
            CHECK(!facets[j].contains_angle(mid, 1e-9));
        }
}

TEST_CASE("strict convexity dispatch") {
    CHECK(AnisotropyNorm::euclidean().is_strictly_convex());
    CHECK(!AnisotropyNorm::pnorm(1).is_strictly_convex());
    CHECK(!AnisotropyNorm::pnorm(kInf).is_strictly_convex());
    CHECK(AnisotropyNorm::pnorm(4).is_strictly_convex());
    auto reg = AnisotropyNorm::weighted_sum(
        {{1.0, AnisotropyNorm::pnorm(1)}, {0.1, AnisotropyNorm::euclidean()}});
    CHECK(reg.is_strictly_convex());
    CHECK(!hexagon_gauge().is_strictly_convex());
    // Piecewise-linear sum: l1 + linf ball is a polygon with 8 facets.
    auto mixed = AnisotropyNorm::weighted_sum(
        {{1.0, AnisotropyNorm::pnorm(1)}, {1.0, AnisotropyNorm::pnorm(kInf)}});
    CHECK(!mixed.is_strictly_convex());
    CHECK(mixed.facets().size() == 8);
}

TEST_CASE("regularization") {
    auto l1 = AnisotropyNorm::pnorm(1);
    CHECK(l1.regularized(1.0)(Vec2{1, 0}) == doctest::Approx(2.0));
    CHECK(AnisotropyNorm::euclidean().regularized(0.5)(Vec2{0, 2}) == doctest::Approx(3.0));
    CHECK(hexagon_gauge().regularized(1e-3).facets().empty());
    CHECK(l1.regularized(0.25).lambda_lower() == doctest::Approx(l1.lambda_lower() + 0.25));
    CHECK(l1.regularized(0.25).gamma_upper() == doctest::Approx(l1.gamma_upper() + 0.25));
    CHECK_THROWS(l1.regularized(0.0));
}

TEST_CASE("sup distance") {
    auto l1 = AnisotropyNorm::pnorm(1);
    auto l2 = AnisotropyNorm::euclidean();
    CHECK(sup_distance(l1, l1).value == doctest::Approx(0.0));
    for (double eps : {1.0, 0.1, 0.01}) {
        SupDistance sd = sup_distance(l1, l1.regularized(eps));
        CHECK(sd.value == doctest::Approx(eps).epsilon(1e-6));
    }
    SupDistance sd = sup_distance(l1, l2);
    CHECK(sd.value + sd.error_bound >= std::sqrt(2.0) - 1.0 - 1e-12);
    CHECK(sd.value == doctest::Approx(std::sqrt(2.0) - 1.0).epsilon(1e-6));
}

TEST_CASE("sup distance is exact for polygonal pairs") {
    std::mt19937_64 rng(29);
    for (int trial = 0; trial < 10; ++trial) {
        auto a = oracles::random_polygon_norm(rng);
        auto b = oracles::random_polygon_norm(rng);
        SupDistance sd = sup_distance(a, b);
        CHECK(sd.error_bound == 0.0);
        // Dense independent estimate can only fall below the exact value.
        double dense = 0.0;
        for (int k = 0; k < 20000; ++k) {
            Vec2 d = unit_dir(2.0 * oracles::kPi * k / 20000);
            dense = std::max(dense, std::fabs(a(d) - b(d)));
        }
        CHECK(sd.value >= dense - 1e-12);
        CHECK(sd.value == doctest::Approx(dense).epsilon(1e-4));
    }
}

TEST_CASE("homogeneity and ellipticity over random inputs") {
    std::mt19937_64 rng(3);
    std::uniform_real_distribution<double> u(-4, 4);
    std::vector<AnisotropyNorm> norms{AnisotropyNorm::pnorm(1), AnisotropyNorm::euclidean(),
                                      AnisotropyNorm::pnorm(4), hexagon_gauge(),
                                      AnisotropyNorm::ellipse(2, 0.3, 1),
                                      hexagon_gauge().regularized(0.05)};
    for (const auto& phi : norms) {
        for (int i = 0; i < 1000; ++i) {
            Vec2 xi{u(rng), u(rng)};
            double t = u(rng);
            double lhs = phi(xi * t);
            double rhs = std::fabs(t) * phi(xi);
            CHECK(std::fabs(lhs - rhs) <= 1e-12 * std::max(1.0, phi(xi)));
            Vec2 unit = xi.norm() > 1e-9 ? xi.normalized() : Vec2{1, 0};
            double v = phi(unit);
            CHECK(v >= phi.lambda_lower() - 1e-12);
            CHECK(v <= phi.gamma_upper() + 1e-12);
        }
        // Triangle inequality spot check.
        for (int i = 0; i < 200; ++i) {
            Vec2 a{u(rng), u(rng)}, b{u(rng), u(rng)};
            CHECK(phi(a + b) <= phi(a) + phi(b) + 1e-12);
        }
    }
    // The diamond's bounds are tight: lambda = 1, gamma = sqrt(2).
    CHECK(AnisotropyNorm::pnorm(1).lambda_lower() == doctest::Approx(1.0));
    CHECK(AnisotropyNorm::pnorm(1).gamma_upper() == doctest::Approx(std::sqrt(2.0)));
}

TEST_CASE("truncated disk: exactly one facet pair per slab") {
    auto td = AnisotropyNorm::truncated_disk(1.0, {{oracles::kPi / 4, oracles::kPi / 8}});
    auto facets = td.facets();
    REQUIRE(facets.size() == 2);
    CHECK(facets[0].arc_width() == doctest::Approx(oracles::kPi / 4));
    // Flat part: boundary points along the chord have gauge 1.
    Vec2 a = unit_dir(oracles::kPi / 4 - oracles::kPi / 8);
    Vec2 b = unit_dir(oracles::kPi / 4 + oracles::kPi / 8);
    for (double t : {0.2, 0.5, 0.8}) {
        Vec2 p = a + t * (b - a);
        CHECK(td(p) == doctest::Approx(1.0));
    }
    CHECK(!td.is_strictly_convex());
}

TEST_CASE("polygon conversion samples the unit sphere") {
    auto e = AnisotropyNorm::ellipse(2, 0.2, 1);
    auto poly = e.to_polygon(256);
    CHECK(poly.size() == 256);
    for (const auto& v : poly) CHECK(e(v) == doctest::Approx(1.0));
}
