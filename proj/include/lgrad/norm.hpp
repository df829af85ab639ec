#pragma once

#include <optional>
#include <string>
#include <vector>

#include "lgrad/vec.hpp"

namespace lgrad {

// A maximal flat segment of the unit sphere of an anisotropic norm, together
// with the closed angular interval of directions whose gauge-normalized
// point lands on it. On the cone over the facet the gauge is linear:
// phi(xi) = <dual, xi>.
struct Facet {
    Vec2 a;             // first endpoint (counterclockwise order)
    Vec2 b;             // second endpoint
    double arc_begin;   // angle of a, in [0, 2*pi)
    double arc_end;     // angle of b; arc_end > arc_begin, may exceed 2*pi
    Vec2 dual;          // <dual, x> = 1 on the facet line

    double arc_width() const { return arc_end - arc_begin; }
    double arc_mid() const { return wrap_angle(0.5 * (arc_begin + arc_end)); }
    // Is direction angle theta inside the normal arc? `margin` shrinks the
    // arc from both ends (pass a negative margin to widen).
    bool contains_angle(double theta, double margin = 0.0) const;
};

// Direction-only anisotropic norm phi: convex, 1-homogeneous, elliptic
// (lambda |xi| <= phi(xi) <= gamma |xi|). Canonical representation is a
// convex centrally symmetric polygon (the unit ball); the parametric
// families evaluate exactly and convert to polygons on demand.
class AnisotropyNorm {
  public:
    enum class Form { Polygonal, Euclidean, PNorm, Ellipse, Sum, TruncatedDisk };

    // Unit ball given by its counterclockwise vertex list. Must be convex,
    // centrally symmetric, with at least 4 vertices.
    static AnisotropyNorm polygonal(std::vector<Vec2> vertices);
    static AnisotropyNorm euclidean();
    // p in [1, inf]; pass std::numeric_limits<double>::infinity() for max-norm.
    static AnisotropyNorm pnorm(double p);
    // phi(xi) = sqrt(xi^T A xi) with A = [[a11, a12], [a12, a22]] positive definite.
    static AnisotropyNorm ellipse(double a11, double a12, double a22);
    // phi = sum w_k phi_k with w_k > 0.
    static AnisotropyNorm weighted_sum(std::vector<std::pair<double, AnisotropyNorm>> terms);
    // Unit ball = disk of given radius truncated by symmetric slabs; one
    // facet pair per slab. Slab = (center angle, angular half width).
    static AnisotropyNorm truncated_disk(double radius,
                                         std::vector<std::pair<double, double>> slabs);

    Form form() const { return form_; }
    std::string form_name() const;

    // Gauge evaluation; 1-homogeneous, zero only at the origin.
    double operator()(const Vec2& xi) const { return evaluate(xi); }
    double evaluate(const Vec2& xi) const;

    double lambda_lower() const { return lambda_; }
    double gamma_upper() const { return gamma_; }

    std::vector<Facet> facets() const;
    bool is_strictly_convex() const;

    // Polar norm phi0(z) = sup{ <z, xi> : phi(xi) <= 1 }. Exact for the
    // closed-form families and for polygons (dual polygon); other forms fall
    // back to the dual of a fine polygonal approximation.
    AnisotropyNorm polar() const;

    // phi + eps * l2; strictly convex unit ball for eps > 0.
    AnisotropyNorm regularized(double eps) const;

    // Inscribed polygon with `vertex_count` (rounded up to even) vertices on
    // the unit sphere, counterclockwise from angle 0.
    std::vector<Vec2> to_polygon(int vertex_count) const;

    // Exact ball polygon when phi is piecewise linear (polygonal, l1, linf,
    // and weighted sums of those); nullopt otherwise.
    std::optional<std::vector<Vec2>> exact_polygon() const;

    // Accessors for serialization.
    const std::vector<Vec2>& vertices() const { return vertices_; }
    double pnorm_exponent() const { return p_; }
    void ellipse_matrix(double& a11, double& a12, double& a22) const;
    const std::vector<std::pair<double, AnisotropyNorm>>& sum_terms() const { return terms_; }
    double disk_radius() const { return radius_; }
    const std::vector<std::pair<double, double>>& disk_slabs() const { return slabs_; }

  private:
    AnisotropyNorm() = default;
    void finish_construction();

    Form form_{Form::Euclidean};
    double lambda_{1.0};
    double gamma_{1.0};

    std::vector<Vec2> vertices_;      // Polygonal: ball vertices, CCW
    std::vector<Vec2> dual_vertices_; // Polygonal: polar ball vertices, CCW
    double p_{2.0};                   // PNorm
    double e11_{1.0}, e12_{0.0}, e22_{1.0};                  // Ellipse
    std::vector<std::pair<double, AnisotropyNorm>> terms_;   // Sum
    double radius_{1.0};                                     // TruncatedDisk
    std::vector<std::pair<double, double>> slabs_;           // TruncatedDisk
};

struct SupDistance {
    double value;        // sup over unit directions of |a - b|
    double error_bound;  // upper bound on the sampling error (0 when exact)
};

// Sup-norm distance between two gauges restricted to the Euclidean unit
// circle. Exact for piecewise-linear pairs, sampled with refinement
// otherwise.
SupDistance sup_distance(const AnisotropyNorm& a, const AnisotropyNorm& b);

// Dual polygon of a convex polygon with the origin strictly inside:
// vertex j solves <u, v_j> = <u, v_{j+1}> = 1.
std::vector<Vec2> dual_polygon(const std::vector<Vec2>& vertices);

// Minkowski sum of two convex CCW polygons.
std::vector<Vec2> minkowski_sum(const std::vector<Vec2>& a, const std::vector<Vec2>& b);

}  // namespace lgrad
