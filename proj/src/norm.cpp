#include "lgrad/norm.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace lgrad {

namespace {

constexpr double kPi = 3.14159265358979323846264338327950288;
constexpr double kTau = 2.0 * kPi;
// Angular collinearity tolerance for facet identification on polygons.
constexpr double kCollinearTol = 1e-10;

double polygon_scale(const std::vector<Vec2>& vs) {
    double s = 0.0;
    for (const auto& v : vs) s = std::max(s, std::max(std::fabs(v.x), std::fabs(v.y)));
    return s;
}

void validate_ball_polygon(const std::vector<Vec2>& vs) {
    const std::size_t n = vs.size();
    if (n < 4) throw std::invalid_argument("polygonal norm: need at least 4 vertices");
    const double scale = polygon_scale(vs);
    if (scale <= 0.0) throw std::invalid_argument("polygonal norm: degenerate vertex list");
    for (std::size_t i = 0; i < n; ++i) {
        const Vec2& a = vs[i];
        const Vec2& b = vs[(i + 1) % n];
        const Vec2& c = vs[(i + 2) % n];
        if (dist(a, b) < 1e-14 * scale)
            throw std::invalid_argument("polygonal norm: repeated vertices");
        if (turn(a, b, c) < -1e-12 * scale * scale)
            throw std::invalid_argument("polygonal norm: vertex list is not convex/counterclockwise");
    }
    // Central symmetry: every vertex has its antipode in the list.
    for (const auto& v : vs) {
        bool found = false;
        for (const auto& w : vs) {
            if (dist(w, -v) < 1e-9 * scale) { found = true; break; }
        }
        if (!found) throw std::invalid_argument("polygonal norm: vertex list is not centrally symmetric");
    }
}

}  // namespace

bool Facet::contains_angle(double theta, double margin) const {
    double t = wrap_angle(theta);
    double lo = arc_begin + margin;
    double hi = arc_end - margin;
    if (t < lo) t += kTau;
    return t <= hi;
}

AnisotropyNorm AnisotropyNorm::polygonal(std::vector<Vec2> vertices) {
    validate_ball_polygon(vertices);
    // Rotate the list so it starts at the vertex with smallest angle; keeps
    // facet enumeration and serialization stable.
    std::size_t start = 0;
    double best = wrap_angle(vertices[0].angle());
    for (std::size_t i = 1; i < vertices.size(); ++i) {
        double a = wrap_angle(vertices[i].angle());
        if (a < best) { best = a; start = i; }
    }
    std::rotate(vertices.begin(), vertices.begin() + static_cast<long>(start), vertices.end());

    AnisotropyNorm n;
    n.form_ = Form::Polygonal;
    n.vertices_ = std::move(vertices);
    n.dual_vertices_ = dual_polygon(n.vertices_);
    n.finish_construction();
    return n;
}

AnisotropyNorm AnisotropyNorm::euclidean() {
    AnisotropyNorm n;
    n.form_ = Form::Euclidean;
    n.finish_construction();
    return n;
}

AnisotropyNorm AnisotropyNorm::pnorm(double p) {
    if (!(p >= 1.0)) throw std::invalid_argument("pnorm: exponent must be >= 1");
    AnisotropyNorm n;
    n.form_ = Form::PNorm;
    n.p_ = p;
    n.finish_construction();
    return n;
}

AnisotropyNorm AnisotropyNorm::ellipse(double a11, double a12, double a22) {
    if (!(a11 > 0.0) || !(a11 * a22 - a12 * a12 > 0.0))
        throw std::invalid_argument("ellipse norm: shape matrix must be positive definite");
    AnisotropyNorm n;
    n.form_ = Form::Ellipse;
    n.e11_ = a11; n.e12_ = a12; n.e22_ = a22;
    n.finish_construction();
    return n;
}

AnisotropyNorm AnisotropyNorm::weighted_sum(std::vector<std::pair<double, AnisotropyNorm>> terms) {
    if (terms.empty()) throw std::invalid_argument("weighted_sum: no terms");
    for (auto& [w, t] : terms) {
        if (!(w > 0.0)) throw std::invalid_argument("weighted_sum: weights must be positive");
        (void)t;
    }
    AnisotropyNorm n;
    n.form_ = Form::Sum;
    n.terms_ = std::move(terms);
    n.finish_construction();
    return n;
}

AnisotropyNorm AnisotropyNorm::truncated_disk(double radius,
                                              std::vector<std::pair<double, double>> slabs) {
    if (!(radius > 0.0)) throw std::invalid_argument("truncated_disk: radius must be positive");
    for (auto& [c, hw] : slabs) {
        if (!(hw > 0.0) || !(hw < kPi / 2))
            throw std::invalid_argument("truncated_disk: half width must lie in (0, pi/2)");
        c = wrap_angle(c);
    }
    std::sort(slabs.begin(), slabs.end());
    for (std::size_t i = 0; i + 1 < slabs.size(); ++i) {
        if (slabs[i].first + slabs[i].second > slabs[i + 1].first - slabs[i + 1].second)
            throw std::invalid_argument("truncated_disk: slab cones overlap");
    }
    AnisotropyNorm n;
    n.form_ = Form::TruncatedDisk;
    n.radius_ = radius;
    n.slabs_ = std::move(slabs);
    n.finish_construction();
    return n;
}

void AnisotropyNorm::finish_construction() {
    switch (form_) {
        case Form::Polygonal: {
            double rmax = 0.0;
            for (const auto& v : vertices_) rmax = std::max(rmax, v.norm());
            double hmin = std::numeric_limits<double>::infinity();
            const std::size_t n = vertices_.size();
            for (std::size_t i = 0; i < n; ++i) {
                const Vec2& a = vertices_[i];
                const Vec2& b = vertices_[(i + 1) % n];
                hmin = std::min(hmin, point_segment_dist({0, 0}, a, b));
            }
            lambda_ = 1.0 / rmax;
            gamma_ = 1.0 / hmin;
            break;
        }
        case Form::Euclidean:
            lambda_ = gamma_ = 1.0;
            break;
        case Form::PNorm: {
            double diag = std::isinf(p_) ? 1.0 / std::sqrt(2.0)
                                         : std::pow(2.0, 1.0 / p_ - 0.5);
            lambda_ = std::min(1.0, diag);
            gamma_ = std::max(1.0, diag);
            break;
        }
        case Form::Ellipse: {
            double tr = e11_ + e22_;
            double det = e11_ * e22_ - e12_ * e12_;
            double disc = std::sqrt(std::max(0.0, tr * tr / 4.0 - det));
            lambda_ = std::sqrt(tr / 2.0 - disc);
            gamma_ = std::sqrt(tr / 2.0 + disc);
            break;
        }
        case Form::Sum: {
            lambda_ = gamma_ = 0.0;
            for (const auto& [w, t] : terms_) {
                lambda_ += w * t.lambda_lower();
                gamma_ += w * t.gamma_upper();
            }
            break;
        }
        case Form::TruncatedDisk: {
            double hwmax = 0.0;
            for (const auto& [c, hw] : slabs_) hwmax = std::max(hwmax, hw);
            lambda_ = 1.0 / radius_;
            gamma_ = 1.0 / (radius_ * std::cos(hwmax));
            break;
        }
    }
}

double AnisotropyNorm::evaluate(const Vec2& xi) const {
    switch (form_) {
        case Form::Polygonal: {
            double m = 0.0;
            for (const auto& u : dual_vertices_) m = std::max(m, dot(u, xi));
            return m;
        }
        case Form::Euclidean:
            return xi.norm();
        case Form::PNorm: {
            double ax = std::fabs(xi.x), ay = std::fabs(xi.y);
            if (std::isinf(p_)) return std::max(ax, ay);
            if (p_ == 1.0) return ax + ay;
            if (p_ == 2.0) return xi.norm();
            // Scale out the max to avoid overflow for large p.
            double m = std::max(ax, ay);
            if (m == 0.0) return 0.0;
            return m * std::pow(std::pow(ax / m, p_) + std::pow(ay / m, p_), 1.0 / p_);
        }
        case Form::Ellipse:
            return std::sqrt(std::max(0.0, e11_ * xi.x * xi.x + 2.0 * e12_ * xi.x * xi.y +
                                               e22_ * xi.y * xi.y));
        case Form::Sum: {
            double s = 0.0;
            for (const auto& [w, t] : terms_) s += w * t.evaluate(xi);
            return s;
        }
        case Form::TruncatedDisk: {
            double m = xi.norm() / radius_;
            for (const auto& [c, hw] : slabs_) {
                Vec2 w = unit_dir(c) * (1.0 / (radius_ * std::cos(hw)));
                m = std::max(m, std::fabs(dot(w, xi)));
            }
            return m;
        }
    }
    return 0.0;
}

std::vector<Vec2> dual_polygon(const std::vector<Vec2>& vertices) {
    const std::size_t n = vertices.size();
    std::vector<Vec2> dual(n);
    for (std::size_t i = 0; i < n; ++i) {
        const Vec2& a = vertices[i];
        const Vec2& b = vertices[(i + 1) % n];
        double c = cross(a, b);
        if (!(c > 0.0)) throw std::invalid_argument("dual_polygon: polygon must wind CCW around the origin");
        dual[i] = (b - a).rot270() * (1.0 / c);
    }
    return dual;
}

std::vector<Vec2> minkowski_sum(const std::vector<Vec2>& a, const std::vector<Vec2>& b) {
    // Classic edge-merge: start at the bottom-most vertex of each polygon and
    // interleave edges by angle.
    auto bottom = [](const std::vector<Vec2>& p) {
        std::size_t k = 0;
        for (std::size_t i = 1; i < p.size(); ++i)
            if (p[i].y < p[k].y || (p[i].y == p[k].y && p[i].x < p[k].x)) k = i;
        return k;
    };
    std::size_t ia = bottom(a), ib = bottom(b);
    std::size_t na = a.size(), nb = b.size();
    std::vector<Vec2> out;
    out.reserve(na + nb);
    std::size_t ca = 0, cb = 0;
    Vec2 cur = a[ia] + b[ib];
    while (ca < na || cb < nb) {
        out.push_back(cur);
        Vec2 ea = a[(ia + 1) % na] - a[ia % na];
        Vec2 eb = b[(ib + 1) % nb] - b[ib % nb];
        double cr = cross(ea, eb);
        if (cb >= nb || (ca < na && cr > 0.0)) {
            cur += ea; ++ia; ++ca;
        } else if (ca >= na || cr < 0.0) {
            cur += eb; ++ib; ++cb;
        } else {  // parallel edges advance together
            cur += ea + eb; ++ia; ++ib; ++ca; ++cb;
        }
    }
    return out;
}

std::optional<std::vector<Vec2>> AnisotropyNorm::exact_polygon() const {
    switch (form_) {
        case Form::Polygonal:
            return vertices_;
        case Form::PNorm:
            if (p_ == 1.0)
                return std::vector<Vec2>{{1, 0}, {0, 1}, {-1, 0}, {0, -1}};
            if (std::isinf(p_))
                return std::vector<Vec2>{{1, -1}, {1, 1}, {-1, 1}, {-1, -1}};
            return std::nullopt;
        case Form::Sum: {
            // B_sum^polar = Minkowski sum of the scaled polar balls; the ball
            // itself is the dual of that polygon.
            std::vector<Vec2> acc;
            for (const auto& [w, t] : terms_) {
                auto poly = t.exact_polygon();
                if (!poly) return std::nullopt;
                std::vector<Vec2> polar = dual_polygon(*poly);
                for (auto& v : polar) v *= w;
                acc = acc.empty() ? polar : minkowski_sum(acc, polar);
            }
            // Drop collinear chains introduced by the sum before dualizing.
            std::vector<Vec2> polar_clean;
            const std::size_t n = acc.size();
            for (std::size_t i = 0; i < n; ++i) {
                const Vec2& p = acc[(i + n - 1) % n];
                const Vec2& q = acc[i];
                const Vec2& r = acc[(i + 1) % n];
                if (std::fabs(turn(p, q, r)) > 1e-14 * polygon_scale(acc) * polygon_scale(acc))
                    polar_clean.push_back(q);
            }
            return dual_polygon(polar_clean);
        }
        default:
            return std::nullopt;
    }
}

std::vector<Vec2> AnisotropyNorm::to_polygon(int vertex_count) const {
    int n = std::max(8, vertex_count);
    if (n % 2) ++n;
    std::vector<Vec2> out(static_cast<std::size_t>(n));
    for (int k = 0; k < n; ++k) {
        Vec2 d = unit_dir(kTau * k / n);
        out[static_cast<std::size_t>(k)] = d * (1.0 / evaluate(d));
    }
    return out;
}

std::vector<Facet> AnisotropyNorm::facets() const {
    std::vector<Facet> out;
    auto facet_from = [](const Vec2& a, const Vec2& b) {
        Facet f;
        f.a = a;
        f.b = b;
        f.arc_begin = wrap_angle(a.angle());
        f.arc_end = wrap_angle(b.angle());
        if (f.arc_end <= f.arc_begin) f.arc_end += kTau;
        f.dual = (b - a).rot270() * (1.0 / cross(a, b));
        return f;
    };

    switch (form_) {
        case Form::Euclidean:
        case Form::Ellipse:
            return out;
        case Form::PNorm:
            if (p_ > 1.0 && !std::isinf(p_)) return out;
            [[fallthrough]];
        case Form::Polygonal:
        case Form::Sum: {
            auto poly = exact_polygon();
            if (!poly) {
                // Strictly convex if any summand is; otherwise a mixed form we
                // can only sample.
                if (form_ == Form::Sum) {
                    bool strict = false;
                    for (const auto& [w, t] : terms_) strict = strict || t.is_strictly_convex();
                    if (strict) return out;
                    poly = to_polygon(4096);
                } else {
                    return out;
                }
            }
            const std::vector<Vec2>& vs = *poly;
            const std::size_t n = vs.size();
            // Merge maximal collinear runs of edges into facets.
            std::vector<bool> collinear(n);  // edge i collinear with edge i+1 at vertex i+1
            for (std::size_t i = 0; i < n; ++i) {
                Vec2 e1 = vs[(i + 1) % n] - vs[i];
                Vec2 e2 = vs[(i + 2) % n] - vs[(i + 1) % n];
                collinear[(i + 1) % n] = std::fabs(cross(e1, e2)) <= kCollinearTol * e1.norm() * e2.norm();
            }
            // collinear[j] == true means vertex j is interior to a straight run.
            std::size_t start = 0;
            while (start < n && collinear[start]) ++start;
            if (start == n) throw std::invalid_argument("facets: polygon degenerated to a line");
            std::size_t i = start;
            do {
                std::size_t j = (i + 1) % n;
                while (collinear[j]) j = (j + 1) % n;
                out.push_back(facet_from(vs[i], vs[j]));
                i = j;
            } while (i != start);
            return out;
        }
        case Form::TruncatedDisk: {
            for (const auto& [c, hw] : slabs_) {
                for (double base : {c, c + kPi}) {
                    Vec2 a = unit_dir(base - hw) * radius_;
                    Vec2 b = unit_dir(base + hw) * radius_;
                    out.push_back(facet_from(a, b));
                }
            }
            std::sort(out.begin(), out.end(),
                      [](const Facet& f, const Facet& g) { return f.arc_begin < g.arc_begin; });
            return out;
        }
    }
    return out;
}

bool AnisotropyNorm::is_strictly_convex() const {
    switch (form_) {
        case Form::Euclidean:
        case Form::Ellipse:
            return true;
        case Form::PNorm:
            return p_ > 1.0 && !std::isinf(p_);
        case Form::Polygonal:
        case Form::TruncatedDisk:
            return false;
        case Form::Sum:
            for (const auto& [w, t] : terms_)
                if (t.is_strictly_convex()) return true;
            return facets().empty();
    }
    return false;
}

AnisotropyNorm AnisotropyNorm::polar() const {
    switch (form_) {
        case Form::Polygonal:
            return polygonal(dual_vertices_);
        case Form::Euclidean:
            return euclidean();
        case Form::PNorm: {
            if (p_ == 1.0) return pnorm(std::numeric_limits<double>::infinity());
            if (std::isinf(p_)) return pnorm(1.0);
            return pnorm(p_ / (p_ - 1.0));
        }
        case Form::Ellipse: {
            double det = e11_ * e22_ - e12_ * e12_;
            return ellipse(e22_ / det, -e12_ / det, e11_ / det);
        }
        case Form::Sum:
        case Form::TruncatedDisk: {
            if (auto poly = exact_polygon()) return polygonal(dual_polygon(*poly));
            return polygonal(dual_polygon(to_polygon(2048)));
        }
    }
    return euclidean();
}

AnisotropyNorm AnisotropyNorm::regularized(double eps) const {
    if (!(eps > 0.0)) throw std::invalid_argument("regularized: eps must be positive");
    std::vector<std::pair<double, AnisotropyNorm>> terms;
    if (form_ == Form::Sum) terms = terms_;
    else terms.emplace_back(1.0, *this);
    // Fold into an existing euclidean term if present.
    for (auto& [w, t] : terms) {
        if (t.form() == Form::Euclidean) {
            w += eps;
            return weighted_sum(std::move(terms));
        }
    }
    terms.emplace_back(eps, euclidean());
    return weighted_sum(std::move(terms));
}

void AnisotropyNorm::ellipse_matrix(double& a11, double& a12, double& a22) const {
    a11 = e11_; a12 = e12_; a22 = e22_;
}

std::string AnisotropyNorm::form_name() const {
    switch (form_) {
        case Form::Polygonal: return "polygonal";
        case Form::Euclidean: return "euclidean";
        case Form::PNorm: return "pnorm";
        case Form::Ellipse: return "ellipse";
        case Form::Sum: return "sum";
        case Form::TruncatedDisk: return "truncated_disk";
    }
    return "?";
}

SupDistance sup_distance(const AnisotropyNorm& a, const AnisotropyNorm& b) {
    auto pa = a.exact_polygon();
    auto pb = b.exact_polygon();
    auto diff = [&](double theta) {
        Vec2 d = unit_dir(theta);
        return std::fabs(a.evaluate(d) - b.evaluate(d));
    };

    if (pa && pb) {
        // Piecewise-linear pair: between consecutive vertex angles of either
        // polygon both gauges are of the form <u, d(theta)>, so the
        // difference is R*cos(theta - theta0) and extrema are at breakpoints
        // or at the interior critical angle of u_a - u_b.
        std::vector<double> brk;
        for (const auto& v : *pa) brk.push_back(wrap_angle(v.angle()));
        for (const auto& v : *pb) brk.push_back(wrap_angle(v.angle()));
        std::sort(brk.begin(), brk.end());
        brk.erase(std::unique(brk.begin(), brk.end()), brk.end());
        auto dual_a = dual_polygon(*pa);
        auto dual_b = dual_polygon(*pb);
        auto active = [](const std::vector<Vec2>& dual, const Vec2& d) {
            std::size_t best = 0;
            double bv = dot(dual[0], d);
            for (std::size_t i = 1; i < dual.size(); ++i) {
                double v = dot(dual[i], d);
                if (v > bv) { bv = v; best = i; }
            }
            return dual[best];
        };
        double sup = 0.0;
        const std::size_t m = brk.size();
        for (std::size_t i = 0; i < m; ++i) {
            double t0 = brk[i];
            double t1 = (i + 1 < m) ? brk[i + 1] : brk[0] + kTau;
            double tm = 0.5 * (t0 + t1);
            Vec2 u = active(dual_a, unit_dir(tm)) - active(dual_b, unit_dir(tm));
            sup = std::max({sup, diff(t0), diff(t1)});
            double tc = u.angle();
            for (double cand : {tc, tc + kPi}) {
                double c = wrap_angle(cand);
                if (c < t0) c += kTau;
                if (c <= t1) sup = std::max(sup, diff(c));
            }
        }
        return {sup, 0.0};
    }

    // Dense sampling with golden-section refinement on the leading intervals.
    const int N = 8192;
    double best = 0.0;
    int best_k = 0;
    for (int k = 0; k < N; ++k) {
        double v = diff(kTau * k / N);
        if (v > best) { best = v; best_k = k; }
    }
    const double gr = 0.5 * (std::sqrt(5.0) - 1.0);
    for (int off = -1; off <= 1; off += 2) {
        double lo = kTau * (best_k + (off < 0 ? -1 : 0)) / N;
        double hi = lo + kTau / N;
        double x1 = hi - gr * (hi - lo), x2 = lo + gr * (hi - lo);
        double f1 = diff(x1), f2 = diff(x2);
        for (int it = 0; it < 60; ++it) {
            if (f1 < f2) { lo = x1; x1 = x2; f1 = f2; x2 = lo + gr * (hi - lo); f2 = diff(x2); }
            else { hi = x2; x2 = x1; f2 = f1; x1 = hi - gr * (hi - lo); f1 = diff(x1); }
        }
        best = std::max({best, f1, f2});
    }
    double lip = a.gamma_upper() + b.gamma_upper();
    return {best, lip * kPi / N};
}

}  // namespace lgrad
