#pragma once

#include <functional>
#include <optional>
#include <vector>

#include "lgrad/vec.hpp"

namespace lgrad {

// Supporting line at a boundary point. At smooth sample points the two
// extreme directions coincide with the tangent estimate; at corners they
// span the normal cone and only the two extremes need testing.
struct SupportingLine {
    Vec2 point;
    Vec2 dir;       // representative direction (central-difference tangent)
    Vec2 dir_low;   // extreme supporting directions at corners
    Vec2 dir_high;
    bool corner{false};
};

struct Line {
    Vec2 point;
    Vec2 dir;  // unit direction
};

// Planar convex body given by a closed counterclockwise boundary polyline
// (>= 64 samples for the shipped generators). Immutable after construction.
class ConvexDomain {
  public:
    explicit ConvexDomain(std::vector<Vec2> boundary, std::optional<double> beta = std::nullopt);

    static ConvexDomain disk(double radius, int samples = 256, Vec2 center = {0, 0});
    static ConvexDomain ellipse(double a, double b, int samples = 512);
    // |x/r|^p + |y/r|^p <= 1; p = 4 gives the quartic-flattened body.
    static ConvexDomain superellipse(double p, double radius = 1.0, int samples = 512);
    // Convex polygon resampled along its edges (flat sides stay flat).
    static ConvexDomain polygon(const std::vector<Vec2>& corners, int samples_per_edge = 32);
    // Rectangle with semicircular caps on the +-x sides.
    static ConvexDomain stadium(double half_length, double radius, int samples = 512);
    // Lens bounded by two circular arcs through tip and -tip, symmetric about
    // the tip axis; `opening` is the full corner angle at each tip.
    static ConvexDomain lens(Vec2 tip, double opening, int samples = 512);

    const std::vector<Vec2>& boundary() const { return boundary_; }
    std::size_t sample_count() const { return boundary_.size(); }
    double perimeter() const { return cumlen_.back(); }
    double diameter() const { return diameter_; }
    Vec2 centroid() const { return centroid_; }
    std::optional<double> beta() const { return beta_; }

    bool is_strictly_convex() const { return strictly_convex_; }

    // Arc-length parametrization of the boundary polyline, wrapping at the
    // perimeter.
    Vec2 point_at(double s) const;
    // Outward unit normal of the edge containing arc length s.
    Vec2 outward_normal_at(double s) const;
    // Arc length of the boundary point nearest to p (also returns the point).
    double project_to_boundary(const Vec2& p, Vec2* nearest = nullptr) const;

    bool contains(const Vec2& p, double tol = 0.0) const;

    // Largest parabola coefficient `a` such that at every sampled boundary
    // point the body fits inside the supporting parabola y >= a x^2 (or
    // y >= a x^(beta+2) when beta is set). Bisection over [1e-8, 1e4].
    // Throws if even the smallest coefficient fails.
    double uniform_convexity_coefficient() const;
    // c(Omega) = diameter + 1/parabola coefficient.
    double regularity_constant() const;
    // Containment predicate used by the bisection, exposed for testing.
    bool supporting_body_contains(double a) const;

    SupportingLine supporting_line(const Vec2& p) const;

    // Intersection of a line with the closed body: 0, 1 (tangency) or 2
    // boundary points ordered along the line.
    std::vector<Vec2> chord_intersections(const Line& line) const;

  private:
    std::vector<Vec2> boundary_;
    std::vector<double> cumlen_;  // cumulative arc length, size n+1
    double diameter_{0.0};
    Vec2 centroid_;
    bool strictly_convex_{false};
    std::optional<double> beta_;
    std::vector<bool> corner_;  // per-vertex corner flag

    void build();
};

// Modulus of continuity model omega with |f(x) - f(y)| <= omega(|x - y|).
struct Modulus {
    enum class Kind { Lipschitz, Hoelder, Tabulated };
    Kind kind{Kind::Lipschitz};
    double L{1.0};       // Lipschitz constant
    double C{1.0};       // Hoelder constant
    double alpha{1.0};   // Hoelder exponent
    std::vector<std::pair<double, double>> table;  // (distance, bound), increasing

    static Modulus lipschitz(double L);
    static Modulus hoelder(double C, double alpha);
    static Modulus tabulated(std::vector<std::pair<double, double>> table);

    double operator()(double d) const;
};

// Continuous Dirichlet data sampled on the boundary, piecewise linear in arc
// length, with a modulus-of-continuity certificate.
class BoundaryFunction {
  public:
    BoundaryFunction(const ConvexDomain& domain,
                     std::vector<std::pair<double, double>> samples, Modulus modulus);

    // Sample a callable at every boundary vertex of the domain.
    static BoundaryFunction from_function(const ConvexDomain& domain,
                                          const std::function<double(Vec2)>& f, Modulus modulus);

    double operator()(double s) const { return value_at(s); }
    double value_at(double s) const;
    double value_at_point(const Vec2& p) const;

    double min_value() const { return min_; }
    double max_value() const { return max_; }
    double range() const { return max_ - min_; }
    const Modulus& modulus() const { return modulus_; }
    const std::vector<std::pair<double, double>>& samples() const { return samples_; }
    const ConvexDomain& domain() const { return *domain_; }

    // Check |f_i - f_j| <= omega(chord distance) over all sample pairs;
    // returns the worst ratio (<= 1 + tol when the modulus is valid).
    double modulus_validation_ratio() const;

  private:
    const ConvexDomain* domain_;
    std::vector<std::pair<double, double>> samples_;  // (arc length, value), increasing, wraps
    Modulus modulus_;
    double min_{0.0}, max_{0.0};
};

}  // namespace lgrad
