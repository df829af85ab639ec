#include "lgrad/domain.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace lgrad {

namespace {
constexpr double kPi = 3.14159265358979323846264338327950288;
constexpr double kTau = 2.0 * kPi;
// Vertices turning by more than this are corners (normal cone handled
// separately); smooth generators at >= 64 samples stay well below it.
constexpr double kCornerTurn = 0.2;
constexpr double kCollinearTol = 1e-10;
}  // namespace

ConvexDomain::ConvexDomain(std::vector<Vec2> boundary, std::optional<double> beta)
    : boundary_(std::move(boundary)), beta_(beta) {
    if (boundary_.size() < 8) throw std::invalid_argument("ConvexDomain: too few boundary samples");
    if (dist(boundary_.front(), boundary_.back()) < 1e-12) boundary_.pop_back();
    build();
}

void ConvexDomain::build() {
    const std::size_t n = boundary_.size();
    double area2 = 0.0;
    Vec2 csum{0, 0};
    for (std::size_t i = 0; i < n; ++i) {
        const Vec2& a = boundary_[i];
        const Vec2& b = boundary_[(i + 1) % n];
        double w = cross(a, b);
        area2 += w;
        csum += (a + b) * w;
    }
    if (area2 <= 0.0) throw std::invalid_argument("ConvexDomain: boundary must be counterclockwise");
    centroid_ = csum * (1.0 / (3.0 * area2));

    cumlen_.assign(n + 1, 0.0);
    for (std::size_t i = 0; i < n; ++i)
        cumlen_[i + 1] = cumlen_[i] + dist(boundary_[i], boundary_[(i + 1) % n]);

    diameter_ = 0.0;
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = i + 1; j < n; ++j)
            diameter_ = std::max(diameter_, dist(boundary_[i], boundary_[j]));

    corner_.assign(n, false);
    strictly_convex_ = true;
    for (std::size_t i = 0; i < n; ++i) {
        Vec2 e0 = boundary_[i] - boundary_[(i + n - 1) % n];
        Vec2 e1 = boundary_[(i + 1) % n] - boundary_[i];
        double c = cross(e0, e1);
        double d = dot(e0, e1);
        if (c < -1e-12 * e0.norm() * e1.norm())
            throw std::invalid_argument("ConvexDomain: boundary is not convex");
        if (c <= kCollinearTol * e0.norm() * e1.norm()) strictly_convex_ = false;
        double ang = std::atan2(c, d);
        corner_[i] = ang > kCornerTurn;
    }
}

Vec2 ConvexDomain::point_at(double s) const {
    const double P = perimeter();
    s = std::fmod(s, P);
    if (s < 0) s += P;
    auto it = std::upper_bound(cumlen_.begin(), cumlen_.end(), s);
    std::size_t i = static_cast<std::size_t>(std::distance(cumlen_.begin(), it)) - 1;
    if (i >= boundary_.size()) i = boundary_.size() - 1;
    double seg = cumlen_[i + 1] - cumlen_[i];
    double t = seg > 0 ? (s - cumlen_[i]) / seg : 0.0;
    const Vec2& a = boundary_[i];
    const Vec2& b = boundary_[(i + 1) % boundary_.size()];
    return a + t * (b - a);
}

Vec2 ConvexDomain::outward_normal_at(double s) const {
    const double P = perimeter();
    s = std::fmod(s, P);
    if (s < 0) s += P;
    auto it = std::upper_bound(cumlen_.begin(), cumlen_.end(), s);
    std::size_t i = static_cast<std::size_t>(std::distance(cumlen_.begin(), it)) - 1;
    if (i >= boundary_.size()) i = boundary_.size() - 1;
    Vec2 d = boundary_[(i + 1) % boundary_.size()] - boundary_[i];
    return d.rot270().normalized();
}

double ConvexDomain::project_to_boundary(const Vec2& p, Vec2* nearest) const {
    const std::size_t n = boundary_.size();
    double best = std::numeric_limits<double>::infinity();
    double best_s = 0.0;
    Vec2 best_p{0, 0};
    for (std::size_t i = 0; i < n; ++i) {
        const Vec2& a = boundary_[i];
        const Vec2& b = boundary_[(i + 1) % n];
        Vec2 q = project_segment(p, a, b);
        double d = dist(p, q);
        if (d < best) {
            best = d;
            best_p = q;
            best_s = cumlen_[i] + dist(a, q);
        }
    }
    if (nearest) *nearest = best_p;
    return best_s;
}

bool ConvexDomain::contains(const Vec2& p, double tol) const {
    const std::size_t n = boundary_.size();
    for (std::size_t i = 0; i < n; ++i) {
        const Vec2& a = boundary_[i];
        const Vec2& b = boundary_[(i + 1) % n];
        if (turn(a, b, p) < -tol * dist(a, b)) return false;
    }
    return true;
}

namespace {

struct BaseFrame {
    Vec2 origin;
    std::vector<Vec2> dirs;  // supporting directions to test (1 smooth, 2 corner)
    std::size_t index;
    bool corner;
};

}  // namespace

bool ConvexDomain::supporting_body_contains(double a) const {
    const std::size_t n = boundary_.size();
    const double expo = beta_.value_or(0.0) + 2.0;
    const double tol = 1e-9 * std::max(1.0, diameter_);
    const std::size_t stride = std::max<std::size_t>(1, n / 256);

    for (std::size_t i = 0; i < n; i += stride) {
        BaseFrame fr;
        fr.origin = boundary_[i];
        fr.index = i;
        fr.corner = corner_[i];
        if (fr.corner) {
            fr.dirs.push_back((boundary_[i] - boundary_[(i + n - 1) % n]).normalized());
            fr.dirs.push_back((boundary_[(i + 1) % n] - boundary_[i]).normalized());
        } else {
            fr.dirs.push_back((boundary_[(i + 1) % n] - boundary_[(i + n - 1) % n]).normalized());
        }
        for (const Vec2& d : fr.dirs) {
            Vec2 inward = d.rot90();
            if (dot(inward, centroid_ - fr.origin) < 0) inward = -inward;
            for (std::size_t j = 0; j < n; ++j) {
                if (fr.corner) {
                    // The extreme supporting lines contain the adjacent edges;
                    // skip the immediate neighbours that sit on them.
                    std::size_t di = (j + n - i) % n;
                    if (di <= 2 || di >= n - 2) continue;
                } else if (j == i) {
                    continue;
                }
                Vec2 rel = boundary_[j] - fr.origin;
                double s = dot(rel, d);
                double t = dot(rel, inward);
                if (t + tol < a * std::pow(std::fabs(s), expo)) return false;
            }
        }
    }
    return true;
}

double ConvexDomain::uniform_convexity_coefficient() const {
    double lo = 1e-8, hi = 1e4;
    if (!supporting_body_contains(lo))
        throw std::runtime_error("uniform_convexity_coefficient: not uniformly convex");
    if (supporting_body_contains(hi)) return hi;
    for (int it = 0; it < 60; ++it) {
        double mid = 0.5 * (lo + hi);
        if (supporting_body_contains(mid)) lo = mid;
        else hi = mid;
    }
    return lo;
}

double ConvexDomain::regularity_constant() const {
    return diameter_ + 1.0 / uniform_convexity_coefficient();
}

SupportingLine ConvexDomain::supporting_line(const Vec2& p) const {
    Vec2 nearest;
    project_to_boundary(p, &nearest);
    if (dist(p, nearest) > 1e-6 * diameter_)
        throw std::invalid_argument("supporting_line: point is not on the boundary");

    const std::size_t n = boundary_.size();
    // Vertex or edge interior?
    std::size_t vi = 0;
    double vd = std::numeric_limits<double>::infinity();
    for (std::size_t i = 0; i < n; ++i) {
        double d = dist(nearest, boundary_[i]);
        if (d < vd) { vd = d; vi = i; }
    }
    SupportingLine out;
    out.point = nearest;
    if (vd < 1e-9 * diameter_) {
        Vec2 prev = boundary_[(vi + n - 1) % n];
        Vec2 next = boundary_[(vi + 1) % n];
        out.dir_low = (boundary_[vi] - prev).normalized();
        out.dir_high = (next - boundary_[vi]).normalized();
        out.dir = (next - prev).normalized();
        out.corner = corner_[vi];
    } else {
        // Edge interior: the edge line itself.
        for (std::size_t i = 0; i < n; ++i) {
            const Vec2& a = boundary_[i];
            const Vec2& b = boundary_[(i + 1) % n];
            if (point_segment_dist(nearest, a, b) < 1e-9 * diameter_) {
                out.dir = out.dir_low = out.dir_high = (b - a).normalized();
                break;
            }
        }
    }
    return out;
}

std::vector<Vec2> ConvexDomain::chord_intersections(const Line& line) const {
    const std::size_t n = boundary_.size();
    double tmin = -std::numeric_limits<double>::infinity();
    double tmax = std::numeric_limits<double>::infinity();
    const double tol = 1e-9 * std::max(1.0, diameter_);
    for (std::size_t i = 0; i < n; ++i) {
        const Vec2& a = boundary_[i];
        Vec2 nrm = (boundary_[(i + 1) % n] - a).rot270();  // outward, unnormalized
        double den = dot(line.dir, nrm);
        double num = dot(a - line.point, nrm);
        if (std::fabs(den) < 1e-15 * nrm.norm()) {
            if (num < -tol * nrm.norm()) return {};  // parallel and outside
            continue;
        }
        double t = num / den;
        if (den > 0) tmax = std::min(tmax, t);
        else tmin = std::max(tmin, t);
    }
    if (tmin > tmax + tol) return {};
    if (tmax - tmin <= tol) return {line.point + 0.5 * (tmin + tmax) * line.dir};
    return {line.point + tmin * line.dir, line.point + tmax * line.dir};
}

ConvexDomain ConvexDomain::disk(double radius, int samples, Vec2 center) {
    if (!(radius > 0)) throw std::invalid_argument("disk: radius must be positive");
    int n = std::max(64, samples);
    if (n % 2) ++n;
    std::vector<Vec2> b(static_cast<std::size_t>(n));
    for (int k = 0; k < n; ++k) b[static_cast<std::size_t>(k)] = center + radius * unit_dir(kTau * k / n);
    return ConvexDomain(std::move(b));
}

ConvexDomain ConvexDomain::ellipse(double a, double b, int samples) {
    if (!(a > 0) || !(b > 0)) throw std::invalid_argument("ellipse: semi-axes must be positive");
    int n = std::max(64, samples);
    if (n % 2) ++n;
    std::vector<Vec2> pts(static_cast<std::size_t>(n));
    for (int k = 0; k < n; ++k) {
        double t = kTau * k / n;
        pts[static_cast<std::size_t>(k)] = {a * std::cos(t), b * std::sin(t)};
    }
    return ConvexDomain(std::move(pts));
}

ConvexDomain ConvexDomain::superellipse(double p, double radius, int samples) {
    if (!(p >= 2)) throw std::invalid_argument("superellipse: exponent must be >= 2");
    int n = std::max(64, samples);
    if (n % 2) ++n;
    std::vector<Vec2> pts(static_cast<std::size_t>(n));
    for (int k = 0; k < n; ++k) {
        double t = kTau * k / n;
        double c = std::cos(t), s = std::sin(t);
        double r = radius / std::pow(std::pow(std::fabs(c), p) + std::pow(std::fabs(s), p), 1.0 / p);
        pts[static_cast<std::size_t>(k)] = {r * c, r * s};
    }
    auto dom = ConvexDomain(std::move(pts));
    dom.beta_ = p - 2.0;
    return dom;
}

ConvexDomain ConvexDomain::polygon(const std::vector<Vec2>& corners, int samples_per_edge) {
    if (corners.size() < 3) throw std::invalid_argument("polygon: need at least 3 corners");
    int m = std::max(2, samples_per_edge);
    std::vector<Vec2> pts;
    const std::size_t n = corners.size();
    for (std::size_t i = 0; i < n; ++i) {
        const Vec2& a = corners[i];
        const Vec2& b = corners[(i + 1) % n];
        for (int k = 0; k < m; ++k) pts.push_back(a + (static_cast<double>(k) / m) * (b - a));
    }
    return ConvexDomain(std::move(pts));
}

ConvexDomain ConvexDomain::stadium(double half_length, double radius, int samples) {
    if (!(half_length > 0) || !(radius > 0)) throw std::invalid_argument("stadium: bad dimensions");
    int n = std::max(64, samples);
    int arc = n / 4, flat = n / 4;
    std::vector<Vec2> pts;
    for (int k = 0; k < arc; ++k) {
        double t = -kPi / 2 + kPi * k / arc;
        pts.push_back(Vec2{half_length, 0} + radius * unit_dir(t));
    }
    for (int k = 0; k < flat; ++k)
        pts.push_back({half_length - 2 * half_length * k / flat, radius});
    for (int k = 0; k < arc; ++k) {
        double t = kPi / 2 + kPi * k / arc;
        pts.push_back(Vec2{-half_length, 0} + radius * unit_dir(t));
    }
    for (int k = 0; k < flat; ++k)
        pts.push_back({-half_length + 2 * half_length * k / flat, -radius});
    return ConvexDomain(std::move(pts));
}

ConvexDomain ConvexDomain::lens(Vec2 tip, double opening, int samples) {
    if (!(opening > 0) || !(opening < kPi)) throw std::invalid_argument("lens: opening must be in (0, pi)");
    double gamma = 0.5 * opening;          // tangent-chord angle = half central angle
    double half_chord = tip.norm();
    double R = half_chord / std::sin(gamma);
    double d = R * std::cos(gamma);        // center offset from the chord
    Vec2 axis = tip.normalized();
    Vec2 off = axis.rot90() * d;
    int n = std::max(64, samples) / 2;
    std::vector<Vec2> pts;
    // Arc on the +rot90 side runs from tip to -tip, its center at -off.
    for (int side = 0; side < 2; ++side) {
        Vec2 c = (side == 0) ? -off : off;
        Vec2 from = (side == 0) ? tip : -tip;
        Vec2 to = (side == 0) ? -tip : tip;
        double a0 = (from - c).angle();
        double a1 = (to - c).angle();
        // Traverse counterclockwise.
        while (a1 <= a0) a1 += kTau;
        if (a1 - a0 > kPi) { a0 += kTau; std::swap(a0, a1); }
        for (int k = 0; k < n; ++k) {
            double t = a0 + (a1 - a0) * k / n;
            pts.push_back(c + R * unit_dir(t));
        }
    }
    return ConvexDomain(std::move(pts));
}

Modulus Modulus::lipschitz(double L) {
    Modulus m;
    m.kind = Kind::Lipschitz;
    m.L = L;
    return m;
}

Modulus Modulus::hoelder(double C, double alpha) {
    Modulus m;
    m.kind = Kind::Hoelder;
    m.C = C;
    m.alpha = alpha;
    return m;
}

Modulus Modulus::tabulated(std::vector<std::pair<double, double>> table) {
    Modulus m;
    m.kind = Kind::Tabulated;
    std::sort(table.begin(), table.end());
    m.table = std::move(table);
    return m;
}

double Modulus::operator()(double d) const {
    if (d <= 0) return 0.0;
    switch (kind) {
        case Kind::Lipschitz: return L * d;
        case Kind::Hoelder: return C * std::pow(d, alpha);
        case Kind::Tabulated: {
            if (table.empty()) return 0.0;
            if (d <= table.front().first)
                return table.front().second * d / std::max(table.front().first, 1e-300);
            if (d >= table.back().first) return table.back().second;
            auto it = std::lower_bound(table.begin(), table.end(), std::make_pair(d, -1e300));
            auto prev = std::prev(it);
            double t = (d - prev->first) / (it->first - prev->first);
            return prev->second + t * (it->second - prev->second);
        }
    }
    return 0.0;
}

BoundaryFunction::BoundaryFunction(const ConvexDomain& domain,
                                   std::vector<std::pair<double, double>> samples, Modulus modulus)
    : domain_(&domain), samples_(std::move(samples)), modulus_(modulus) {
    if (samples_.size() < 3) throw std::invalid_argument("BoundaryFunction: too few samples");
    for (std::size_t i = 1; i < samples_.size(); ++i)
        if (samples_[i].first <= samples_[i - 1].first)
            throw std::invalid_argument("BoundaryFunction: arc lengths must be strictly increasing");
    if (samples_.back().first >= domain.perimeter())
        throw std::invalid_argument("BoundaryFunction: arc lengths exceed the perimeter");
    min_ = max_ = samples_[0].second;
    for (const auto& [s, f] : samples_) {
        min_ = std::min(min_, f);
        max_ = std::max(max_, f);
    }
}

BoundaryFunction BoundaryFunction::from_function(const ConvexDomain& domain,
                                                 const std::function<double(Vec2)>& f,
                                                 Modulus modulus) {
    // Sample at the polyline vertices so values sit exactly on them.
    std::vector<std::pair<double, double>> samples;
    const std::size_t n = domain.sample_count();
    samples.reserve(n);
    double acc = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        samples.emplace_back(acc, f(domain.boundary()[i]));
        acc += dist(domain.boundary()[i], domain.boundary()[(i + 1) % n]);
    }
    return BoundaryFunction(domain, std::move(samples), modulus);
}

double BoundaryFunction::value_at(double s) const {
    const double P = domain_->perimeter();
    s = std::fmod(s, P);
    if (s < 0) s += P;
    auto it = std::upper_bound(samples_.begin(), samples_.end(), std::make_pair(s, 1e300));
    double s0, f0, s1, f1;
    if (it == samples_.begin()) {
        s0 = samples_.back().first - P;
        f0 = samples_.back().second;
        s1 = samples_.front().first;
        f1 = samples_.front().second;
    } else if (it == samples_.end()) {
        s0 = samples_.back().first;
        f0 = samples_.back().second;
        s1 = samples_.front().first + P;
        f1 = samples_.front().second;
    } else {
        auto prev = std::prev(it);
        s0 = prev->first; f0 = prev->second;
        s1 = it->first; f1 = it->second;
    }
    double t = (s1 > s0) ? (s - s0) / (s1 - s0) : 0.0;
    return f0 + t * (f1 - f0);
}

double BoundaryFunction::value_at_point(const Vec2& p) const {
    return value_at(domain_->project_to_boundary(p));
}

double BoundaryFunction::modulus_validation_ratio() const {
    double worst = 0.0;
    const std::size_t n = samples_.size();
    for (std::size_t i = 0; i < n; ++i) {
        Vec2 pi = domain_->point_at(samples_[i].first);
        for (std::size_t j = i + 1; j < n; ++j) {
            Vec2 pj = domain_->point_at(samples_[j].first);
            double df = std::fabs(samples_[i].second - samples_[j].second);
            if (df == 0.0) continue;
            double w = modulus_(dist(pi, pj));
            if (w <= 0.0) return std::numeric_limits<double>::infinity();
            worst = std::max(worst, df / w);
        }
    }
    return worst;
}

}  // namespace lgrad
