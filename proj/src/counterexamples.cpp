#include "lgrad/counterexamples.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace lgrad {

namespace {

constexpr double kPi = 3.14159265358979323846264338327950288;

// Frame aligned with a facet direction: y runs along nu0, xi along the
// chords (nu0 rotated -90 deg), so that superlevel sides are to the left of
// increasing xi.
struct Frame {
    Vec2 nu{0, 1}, xi{1, 0};
    Frame() = default;
    explicit Frame(const Vec2& nu0) : nu(nu0.normalized()), xi(nu0.normalized().rot270()) {}
    double y(const Vec2& p) const { return dot(p, nu); }
    double x(const Vec2& p) const { return dot(p, xi); }
    Vec2 world(double xc, double yc) const { return xi * xc + nu * yc; }
};

const Facet& widest_facet(const std::vector<Facet>& facets) {
    if (facets.empty())
        throw std::runtime_error("no facet: the unit ball is strictly convex");
    std::size_t best = 0;
    for (std::size_t i = 1; i < facets.size(); ++i)
        if (facets[i].arc_width() > facets[best].arc_width()) best = i;
    return facets[best];
}

bool normal_in_facet(const Facet& f, const Vec2& nu, double margin) {
    return f.contains_angle(nu.angle(), margin) || f.contains_angle((-nu).angle(), margin);
}

void require_chain_admissible(const Facet& facet, const ConvexDomain& domain,
                              const std::vector<Vec2>& pts) {
    const double tol = 1e-9 * domain.diameter();
    for (std::size_t i = 0; i + 1 < pts.size(); ++i) {
        Vec2 nrm = (pts[i + 1] - pts[i]).rot90().normalized();
        if (!normal_in_facet(facet, nrm, -1e-12))
            throw std::runtime_error("facet perturbation: a segment normal escapes the facet arc");
        if (!domain.contains(pts[i + 1], tol) || !domain.contains(pts[i], tol))
            throw std::runtime_error("facet perturbation: chain exits the domain");
    }
}

// Chord endpoints of the level line { nu0 . x = t }, ordered along
// nu0.rot270() so the superlevel side lies to the left.
std::vector<Vec2> level_chord(const ConvexDomain& domain, const Frame& fr, double t) {
    Line line{fr.nu * t, fr.xi};
    return domain.chord_intersections(line);
}

LevelChain make_chain(const ConvexDomain& domain, std::vector<Vec2> pts) {
    LevelChain ch;
    ch.s_begin = domain.project_to_boundary(pts.front());
    ch.s_end = domain.project_to_boundary(pts.back());
    ch.pts = std::move(pts);
    return ch;
}

}  // namespace

double cantor_function(double x, int depth) {
    if (x <= 0.0) return 0.0;
    if (x >= 1.0) return 1.0;
    if (depth <= 0) return x;
    if (x < 1.0 / 3.0) return 0.5 * cantor_function(3.0 * x, depth - 1);
    if (x <= 2.0 / 3.0) return 0.5;
    return 0.5 + 0.5 * cantor_function(3.0 * x - 2.0, depth - 1);
}

Polyline facet_perturbation(const AnisotropyNorm& norm, const ConvexDomain& domain,
                            const Facet& facet, const Vec2& p1, const Vec2& p2,
                            const PerturbationShape& shape) {
    if (norm.is_strictly_convex()) throw std::runtime_error("facet perturbation: no facet");
    Vec2 d = (p2 - p1);
    double len = d.norm();
    if (len <= 0) throw std::invalid_argument("facet perturbation: degenerate chord");
    Vec2 dir = d * (1.0 / len);
    Vec2 nu = dir.rot90();
    double theta = normal_in_facet(facet, nu, 0.0) && facet.contains_angle(nu.angle(), 0.0)
                       ? nu.angle()
                       : (-nu).angle();
    if (!facet.contains_angle(theta, 1e-9))
        throw std::runtime_error("facet perturbation: chord normal is not interior to the facet arc");

    std::vector<Vec2> pts;
    if (shape.kind == PerturbationShape::Kind::Triangle) {
        double lifted = wrap_angle(theta);
        if (lifted < facet.arc_begin) lifted += 2 * kPi;
        double margin = std::min(lifted - facet.arc_begin, facet.arc_end - lifted);
        double psi = shape.angle > 0 ? shape.angle : 0.4 * margin;
        if (psi >= margin)
            throw std::runtime_error("facet perturbation: requested flank angle exceeds the arc margin");
        double base = shape.base_fraction * len;
        double lo = shape.position * len - 0.5 * base;
        double hi = shape.position * len + 0.5 * base;
        if (lo <= 0 || hi >= len)
            throw std::invalid_argument("facet perturbation: bump base must sit inside the chord");
        Vec2 q1 = p1 + dir * lo;
        Vec2 q2 = p1 + dir * hi;
        Vec2 apex = p1 + dir * (0.5 * (lo + hi)) - nu * (0.5 * base * std::tan(psi));
        pts = {p1, q1, apex, q2, p2};
    } else {
        // Staircase: decompose the displacement along the two directions
        // orthogonal to the arc's extreme normals.
        Vec2 t1 = unit_dir(facet.arc_begin).rot270();
        Vec2 t2 = unit_dir(facet.arc_end).rot270();
        double det = cross(t1, t2);
        if (std::fabs(det) < 1e-14)
            throw std::runtime_error("facet perturbation: degenerate facet arc");
        double a = cross(d, t2) / det;
        double b = cross(t1, d) / det;
        if (a < -1e-12 && b < -1e-12) {
            // The chord's normal sits in the antipodal facet; flip the cone.
            t1 = -t1; t2 = -t2; a = -a; b = -b;
        }
        if (a < -1e-12 || b < -1e-12)
            throw std::runtime_error("facet perturbation: chord leaves the staircase cone");
        a = std::max(a, 0.0);
        b = std::max(b, 0.0);
        int steps = std::max(1, shape.steps);
        pts.push_back(p1);
        Vec2 cur = p1;
        for (int k = 0; k < steps; ++k) {
            cur += t1 * (a / steps);
            pts.push_back(cur);
            cur += t2 * (b / steps);
            pts.push_back(cur);
        }
        pts.back() = p2;  // absorb rounding in the final corner
    }
    require_chain_admissible(facet, domain, pts);
    Polyline out(pts);
    // The construction is only admissible if it really preserves length.
    double chord_len = jensen_lower_bound(norm, p1, p2);
    double chain_len = anisotropic_length(norm, out);
    if (std::fabs(chord_len - chain_len) > 1e-9 * std::max(1.0, chord_len))
        throw std::runtime_error("facet perturbation: equal-length identity failed");
    return out;
}

LinearSolution linear_solution(const ConvexDomain& domain, const Vec2& nu0_in, int levels) {
    Frame fr(nu0_in);
    BoundaryFunction f = BoundaryFunction::from_function(
        domain, [&](Vec2 p) { return fr.y(p); }, Modulus::lipschitz(1.0));
    const double fmin = f.min_value(), fmax = f.max_value();
    const int m = std::max(2, levels);
    const double dt = (fmax - fmin) / m;
    std::vector<Level> lvls(static_cast<std::size_t>(m));
    for (int j = 0; j < m; ++j) {
        double t = fmin + (j + 0.5) * dt;
        Level lvl;
        lvl.t = t;
        lvl.weight = dt;
        auto pts = level_chord(domain, fr, t);
        if (pts.size() == 2) {
            lvl.chains.push_back(make_chain(domain, {pts[0], pts[1]}));
        } else {
            lvl.degenerate = true;
        }
        LevelArcs arcs = level_arcs(domain, f, t);
        lvl.arcs = arcs.arcs;
        lvls[static_cast<std::size_t>(j)] = std::move(lvl);
    }
    LevelSetFamily fam(domain, std::move(lvls), fmin, fmax, f);
    return {std::move(fam), std::move(f), fr.nu};
}

NonuniquePair nonunique_pair(const AnisotropyNorm& norm, const ConvexDomain& domain, int levels) {
    const Facet facet = widest_facet(norm.facets());
    Frame fr(unit_dir(facet.arc_mid()));
    LinearSolution base = linear_solution(domain, fr.nu, levels);
    const double fmin = base.data.min_value(), fmax = base.data.max_value();
    const double range = fmax - fmin;
    const double t_mid = 0.5 * (fmin + fmax);
    const double half_band = 0.2 * range;
    const double margin = 0.5 * facet.arc_width();
    const double amp_max = 0.9 * half_band;
    const double base_w = 2.1 * amp_max / std::tan(0.8 * margin);
    const double xc = fr.x(domain.centroid());

    std::vector<Level> lvls = base.family.levels();
    for (Level& lvl : lvls) {
        double amp = 0.9 * std::max(0.0, half_band - std::fabs(lvl.t - t_mid));
        if (amp <= 0 || lvl.chains.empty()) continue;
        const LevelChain& chord = lvl.chains.front();
        double x_lo = fr.x(chord.pts.front()), x_hi = fr.x(chord.pts.back());
        if (x_lo > x_hi) std::swap(x_lo, x_hi);
        if (xc - 0.5 * base_w <= x_lo || xc + 0.5 * base_w >= x_hi)
            throw std::runtime_error("nonunique_pair: bump base does not fit inside the chord");
        Vec2 b1 = fr.world(xc - 0.5 * base_w, lvl.t);
        Vec2 apex = fr.world(xc, lvl.t - amp);
        Vec2 b2 = fr.world(xc + 0.5 * base_w, lvl.t);
        std::vector<Vec2> pts = {chord.pts.front(), b1, apex, b2, chord.pts.back()};
        if (fr.x(pts.front()) > fr.x(pts.back())) std::reverse(pts.begin(), pts.end());
        require_chain_admissible(facet, domain, pts);
        lvl.chains.front() = make_chain(domain, std::move(pts));
    }
    LevelSetFamily tilde(domain, std::move(lvls), fmin, fmax, base.data);

    NonuniquePair out{std::move(base.family), std::move(tilde), std::move(base.data), fr.nu, {}, {}, 0.0};
    out.energy_u = relaxed_energy(norm, domain, out.u, out.data);
    out.energy_tilde = relaxed_energy(norm, domain, out.u_tilde, out.data);
    for (const Vec2& p : probe_grid(domain, 32))
        out.max_pointwise_diff =
            std::max(out.max_pointwise_diff, std::fabs(out.u.value(p) - out.u_tilde.value(p)));
    return out;
}

// ---------------------------------------------------------------------------

namespace {

// Minimizer whose band of level chains funnels through one shared segment.
class NonW11Field : public SolutionField {
  public:
    Frame fr;
    double ylo{0}, yhi{0}, y0{0};
    double m1{0}, q1{0}, q2{0}, m4{0};  // xi stations: fan | segment | fan

    double value(const Vec2& p) const override {
        double x = fr.x(p), y = fr.y(p);
        if (y <= ylo || y >= yhi || x <= m1 || x >= m4) return y;
        if (x >= q1 && x <= q2) {
            if (y > y0) return yhi;
            if (y < y0) return ylo;
            return y0;
        }
        double lam = x < q1 ? (x - m1) / (q1 - m1) : (m4 - x) / (m4 - q2);
        double t = (y - lam * y0) / (1.0 - lam);
        return std::clamp(t, ylo, yhi);
    }

    // Level chain waypoints (frame coordinates) for band levels.
    std::vector<Vec2> waypoints(double t) const {
        return {fr.world(m1, t), fr.world(q1, y0), fr.world(q2, y0), fr.world(m4, t)};
    }
};

}  // namespace

NonW11Result non_w11_minimizer(const AnisotropyNorm& norm, const ConvexDomain& domain,
                               double band_fraction, double segment_fraction, int levels) {
    const Facet facet = widest_facet(norm.facets());
    Frame fr(unit_dir(facet.arc_mid()));
    LinearSolution base = linear_solution(domain, fr.nu, levels);
    const double fmin = base.data.min_value(), fmax = base.data.max_value();
    const double range = fmax - fmin;

    auto field = std::make_shared<NonW11Field>();
    field->fr = fr;
    field->y0 = 0.5 * (fmin + fmax);
    field->ylo = field->y0 - 0.5 * band_fraction * range;
    field->yhi = field->y0 + 0.5 * band_fraction * range;
    const double xc = fr.x(domain.centroid());
    const double seg = segment_fraction * domain.diameter();
    field->q1 = xc - 0.5 * seg;
    field->q2 = xc + 0.5 * seg;
    const double margin = 0.5 * facet.arc_width();
    const double run = 1.05 * (0.5 * band_fraction * range) / std::tan(0.8 * margin);
    field->m1 = field->q1 - run;
    field->m4 = field->q2 + run;

    // Assemble the family view: band levels detour through the segment.
    std::vector<Level> lvls = base.family.levels();
    for (Level& lvl : lvls) {
        if (lvl.t <= field->ylo || lvl.t >= field->yhi || lvl.chains.empty()) continue;
        const LevelChain& chord = lvl.chains.front();
        Vec2 a = chord.pts.front(), b = chord.pts.back();
        if (fr.x(a) > fr.x(b)) std::swap(a, b);
        auto wp = field->waypoints(lvl.t);
        if (fr.x(a) >= field->m1 || fr.x(b) <= field->m4)
            throw std::runtime_error("non_w11_minimizer: detour region does not fit inside the chord");
        std::vector<Vec2> pts = {a, wp[0], wp[1], wp[2], wp[3], b};
        require_chain_admissible(facet, domain, pts);
        lvl.chains.front() = make_chain(domain, std::move(pts));
    }
    LevelSetFamily view(domain, std::move(lvls), fmin, fmax, base.data);

    NonW11Result out{field,
                     std::move(view),
                     std::move(base.family),
                     std::move(base.data),
                     field->yhi - field->ylo,
                     0.0,
                     fr.world(field->q1, field->y0),
                     fr.world(field->q2, field->y0),
                     {},
                     {}};
    const double eps = 1e-9 * domain.diameter();
    Vec2 mid = fr.world(xc, field->y0);
    out.jump_measured = field->value(mid + fr.nu * eps) - field->value(mid - fr.nu * eps);
    out.energy_base = relaxed_energy(norm, domain, out.baseline, out.data);
    out.energy_pert = relaxed_energy(norm, domain, out.family_view, out.data);
    return out;
}

// ---------------------------------------------------------------------------

namespace {

class NonSBVField : public SolutionField {
  public:
    Frame fr;
    double blo{0}, bhi{0};              // band in y
    double m1{0}, m2{0}, m3{0}, m4{0};  // xi stations: fan | middle strip | fan
    int depth{12};

    double band() const { return bhi - blo; }

    // Mid-strip height of the level-t chain: blo + band*(that + g(that))/2.
    double mid_height(double t) const {
        double that = (t - blo) / band();
        return blo + band() * 0.5 * (that + cantor_function(that, depth));
    }

    double chain_height(double t, double x) const {
        if (x <= m1 || x >= m4) return t;
        if (x >= m2 && x <= m3) return mid_height(t);
        double lam = x < m2 ? (x - m1) / (m2 - m1) : (m4 - x) / (m4 - m3);
        return (1.0 - lam) * t + lam * mid_height(t);
    }

    double value(const Vec2& p) const override {
        double x = fr.x(p), y = fr.y(p);
        if (y <= blo || y >= bhi || x <= m1 || x >= m4) return y;
        // chain_height is strictly increasing in t; invert by bisection.
        double lo = blo, hi = bhi;
        for (int it = 0; it < 80; ++it) {
            double mid = 0.5 * (lo + hi);
            if (chain_height(mid, x) < y) lo = mid;
            else hi = mid;
        }
        return 0.5 * (lo + hi);
    }

    std::vector<Vec2> waypoints(double t) const {
        double c = mid_height(t);
        return {fr.world(m1, t), fr.world(m2, c), fr.world(m3, c), fr.world(m4, t)};
    }
};

}  // namespace

Vec2 NonSBVResult::world_from_frame(double xi, double y) const {
    Frame fr(frame_nu0);
    return fr.world(xi, y);
}

NonSBVResult non_sbv_minimizer(const AnisotropyNorm& norm, const ConvexDomain& domain, int depth,
                               double band_fraction, int levels) {
    if (depth < 1) throw std::invalid_argument("non_sbv_minimizer: depth must be >= 1");
    const Facet facet = widest_facet(norm.facets());
    Frame fr(unit_dir(facet.arc_mid()));
    LinearSolution base = linear_solution(domain, fr.nu, levels);
    const double fmin = base.data.min_value(), fmax = base.data.max_value();
    const double range = fmax - fmin;
    const double t_mid = 0.5 * (fmin + fmax);

    auto field = std::make_shared<NonSBVField>();
    field->fr = fr;
    field->depth = depth;
    field->blo = t_mid - 0.5 * band_fraction * range;
    field->bhi = t_mid + 0.5 * band_fraction * range;
    const double xc = fr.x(domain.centroid());
    const double strip = 0.25 * domain.diameter();
    field->m2 = xc - 0.5 * strip;
    field->m3 = xc + 0.5 * strip;
    // Largest mid-strip offset is band * max|g - id| / 2 = band/12.
    const double margin = 0.5 * facet.arc_width();
    const double run = 1.05 * (band_fraction * range / 12.0) / std::tan(0.8 * margin);
    field->m1 = field->m2 - run;
    field->m4 = field->m3 + run;

    std::vector<Level> lvls = base.family.levels();
    for (Level& lvl : lvls) {
        if (lvl.t <= field->blo || lvl.t >= field->bhi || lvl.chains.empty()) continue;
        const LevelChain& chord = lvl.chains.front();
        Vec2 a = chord.pts.front(), b = chord.pts.back();
        if (fr.x(a) > fr.x(b)) std::swap(a, b);
        if (fr.x(a) >= field->m1 || fr.x(b) <= field->m4)
            throw std::runtime_error("non_sbv_minimizer: detour region does not fit inside the chord");
        auto wp = field->waypoints(lvl.t);
        std::vector<Vec2> pts = {a, wp[0], wp[1], wp[2], wp[3], b};
        require_chain_admissible(facet, domain, pts);
        lvl.chains.front() = make_chain(domain, std::move(pts));
    }
    LevelSetFamily view(domain, std::move(lvls), fmin, fmax, base.data);

    NonSBVResult out{field,
                     std::move(view),
                     std::move(base.family),
                     std::move(base.data),
                     depth,
                     field->blo,
                     field->bhi,
                     xc,
                     fr.nu,
                     {},
                     {},
                     0.0};
    out.energy_base = relaxed_energy(norm, domain, out.baseline, out.data);
    out.energy_pert = relaxed_energy(norm, domain, out.family_view, out.data);
    for (int k = 0; k < 1000; ++k) {
        double t = field->blo + (k + 0.5) * (field->bhi - field->blo) / 1000.0;
        Vec2 p = fr.world(xc, field->mid_height(t));
        out.transversal_max_error =
            std::max(out.transversal_max_error, std::fabs(field->value(p) - t));
    }
    return out;
}

// ---------------------------------------------------------------------------

namespace {

// Collar bump near a boundary point whose outward normal is interior to a
// facet arc: u = f(y) above the inward-translated cap, 0 elsewhere.
class VanishingBumpField : public SolutionField {
  public:
    Frame fr;
    const ConvexDomain* domain{nullptr};
    double y_eps{0}, y_top{0};
    double d{0};  // collar thickness

    double smooth01(double s) const {
        s = std::clamp(s, 0.0, 1.0);
        return s * s * (3.0 - 2.0 * s);
    }
    double profile(double y) const { return smooth01((y - y_eps) / (y_top - y_eps)); }

    double top_height(double x) const {
        Line vertical{fr.world(x, 0.0), fr.nu};
        auto pts = domain->chord_intersections(vertical);
        double top = -1e300;
        for (const auto& p : pts) top = std::max(top, fr.y(p));
        return top;
    }

    double value(const Vec2& p) const override {
        double y = fr.y(p);
        if (y <= y_eps) return 0.0;
        return y >= top_height(fr.x(p)) - d ? profile(y) : 0.0;
    }
};

}  // namespace

VanishingL1Result vanishing_l1_family(const AnisotropyNorm& norm, const ConvexDomain& domain,
                                      int n, int levels) {
    if (n < 1) throw std::invalid_argument("vanishing_l1_family: n must be >= 1");
    const Facet facet = widest_facet(norm.facets());
    Frame fr(unit_dir(facet.arc_mid()));
    const double margin = 0.5 * facet.arc_width();

    // x0: the supporting point in direction nu0.
    const auto& bd = domain.boundary();
    const std::size_t nb = bd.size();
    std::size_t i0 = 0;
    for (std::size_t i = 1; i < nb; ++i)
        if (fr.y(bd[i]) > fr.y(bd[i0])) i0 = i;
    Vec2 x0 = bd[i0];
    const double y_top = fr.y(x0);

    // Walk both ways while edge normals stay well inside the facet arc; the
    // cap the construction may use ends where they escape.
    auto edge_normal = [&](std::size_t i) {
        return (bd[(i + 1) % nb] - bd[i]).rot270().normalized();
    };
    auto deviation = [&](std::size_t i) {
        double a = wrap_angle(edge_normal(i).angle() - fr.nu.angle());
        return std::min(a, 2 * kPi - a);
    };
    double y_stop = -1e300;
    {
        std::size_t i = i0;
        while (deviation(i) < 0.8 * margin && dist(bd[(i + 1) % nb], x0) < 0.49 * domain.diameter())
            i = (i + 1) % nb;
        y_stop = std::max(y_stop, fr.y(bd[i]));
        i = (i0 + nb - 1) % nb;
        while (deviation(i) < 0.8 * margin && dist(bd[i], x0) < 0.49 * domain.diameter())
            i = (i + nb - 1) % nb;
        y_stop = std::max(y_stop, fr.y(bd[(i + 1) % nb]));
    }
    if (!(y_stop < y_top - 1e-9 * domain.diameter()))
        throw std::runtime_error("vanishing_l1_family: corner interference at the witness normal");
    const double cap = y_top - y_stop;
    const double y_eps = y_top - 0.9 * cap;

    auto proto = std::make_shared<VanishingBumpField>();
    proto->fr = fr;
    proto->domain = &domain;
    proto->y_eps = y_eps;
    proto->y_top = y_top;

    BoundaryFunction f = BoundaryFunction::from_function(
        domain, [&](Vec2 p) { return proto->profile(fr.y(p)); },
        Modulus::lipschitz(1.5 / (y_top - y_eps)));

    VanishingL1Result out{{}, {}, {}, {}, std::move(f), x0};

    // Horizontal half-widths at a given height.
    auto xi_extent = [&](double y) -> std::pair<double, double> {
        Line horiz{fr.world(0.0, y), fr.xi};
        auto pts = domain.chord_intersections(horiz);
        if (pts.size() < 2) return {0.0, 0.0};
        double a = fr.x(pts[0]), b = fr.x(pts[1]);
        return {std::min(a, b), std::max(a, b)};
    };

    const int m = std::max(2, levels);
    for (int k = 1; k <= n; ++k) {
        auto field = std::make_shared<VanishingBumpField>(*proto);
        field->d = 0.45 * cap * std::pow(2.0, -(k - 1));
        out.members.push_back(field);

        // Level chains: graph height = max(y_t, top(xi) - d).
        std::vector<Level> lvls;
        const double dt = 1.0 / m;
        for (int j = 0; j < m; ++j) {
            double t = (j + 0.5) * dt;
            // y with profile(y) = t
            double lo = y_eps, hi = y_top;
            for (int it = 0; it < 60; ++it) {
                double mid = 0.5 * (lo + hi);
                if (field->profile(mid) < t) lo = mid;
                else hi = mid;
            }
            double y_t = 0.5 * (lo + hi);
            auto [xl, xr] = xi_extent(y_t);
            std::vector<Vec2> pts;
            pts.push_back(fr.world(xl, y_t));
            if (y_t + field->d < y_top) {
                auto [xl2, xr2] = xi_extent(y_t + field->d);
                pts.push_back(fr.world(xl2, y_t));
                // Translated cap: boundary vertices above y_t + d, shifted
                // inward by d, ordered by xi.
                std::vector<Vec2> arc;
                for (std::size_t i = 0; i < nb; ++i)
                    if (fr.y(bd[i]) > y_t + field->d) arc.push_back(bd[i] - fr.nu * field->d);
                std::sort(arc.begin(), arc.end(),
                          [&](const Vec2& a, const Vec2& b) { return fr.x(a) < fr.x(b); });
                for (const auto& p : arc) pts.push_back(p);
                pts.push_back(fr.world(xr2, y_t));
            }
            pts.push_back(fr.world(xr, y_t));
            Level lvl;
            lvl.t = t;
            lvl.weight = dt;
            LevelArcs arcs = level_arcs(domain, out.data, t);
            lvl.arcs = arcs.arcs;
            lvl.chains.push_back(make_chain(domain, std::move(pts)));
            lvls.push_back(std::move(lvl));
        }
        LevelSetFamily view(domain, std::move(lvls), 0.0, 1.0, out.data);
        out.energies.push_back(relaxed_energy(norm, domain, view, out.data));
        out.family_views.push_back(std::move(view));

        // L1 norm: 1-D quadrature of profile(y) * collar width(y).
        double l1 = 0.0;
        const int q = 4000;
        for (int s = 0; s < q; ++s) {
            double y = y_eps + (s + 0.5) * (y_top - y_eps) / q;
            auto [xl, xr] = xi_extent(y);
            double w = xr - xl;
            if (y + field->d < y_top) {
                auto [xl2, xr2] = xi_extent(y + field->d);
                w -= std::max(0.0, xr2 - xl2);
            }
            l1 += field->profile(y) * std::max(0.0, w) * (y_top - y_eps) / q;
        }
        out.l1_norms.push_back(l1);
    }
    return out;
}

// ---------------------------------------------------------------------------

BarrierResult barrier_check(const AnisotropyNorm& norm, const ConvexDomain& domain) {
    BarrierResult res;
    const auto& bd = domain.boundary();
    const std::size_t nb = bd.size();

    if (!domain.is_strictly_convex()) {
        res.verdict = BarrierResult::Verdict::Violated;
        res.reason = "domain boundary contains a flat segment; line segments are minimal surfaces";
        for (std::size_t i = 0; i < nb; ++i) {
            Vec2 e0 = bd[i] - bd[(i + nb - 1) % nb];
            Vec2 e1 = bd[(i + 1) % nb] - bd[i];
            if (std::fabs(cross(e0, e1)) <= 1e-10 * e0.norm() * e1.norm()) {
                res.witness = bd[i];
                res.witness_wedge = {bd[(i + nb - 1) % nb], bd[i], bd[(i + 1) % nb]};
                break;
            }
        }
        return res;
    }

    const auto facets = norm.facets();
    if (facets.empty()) {
        res.verdict = BarrierResult::Verdict::Satisfied;
        res.reason = "strictly convex unit ball on a strictly convex domain";
        return res;
    }

    // Corner flags via the turn angle (matching the domain's classification).
    std::vector<bool> corner(nb, false);
    for (std::size_t i = 0; i < nb; ++i) {
        Vec2 e0 = bd[i] - bd[(i + nb - 1) % nb];
        Vec2 e1 = bd[(i + 1) % nb] - bd[i];
        corner[i] = std::atan2(cross(e0, e1), dot(e0, e1)) > 0.2;
    }
    auto edge_normal_angle = [&](std::size_t i) {
        return wrap_angle((bd[(i + 1) % nb] - bd[i]).rot270().angle());
    };

    // Smooth boundary points with normals interior to a facet arc: the wedge
    // competitor detaches nothing, so the barrier fails there.
    double best_dist = 1e300;
    std::size_t best_edge = 0;
    const Facet* best_facet = nullptr;
    for (std::size_t i = 0; i < nb; ++i) {
        if (corner[i] || corner[(i + 1) % nb]) continue;
        double ang = edge_normal_angle(i);
        for (const Facet& fa : facets) {
            if (!fa.contains_angle(ang, 1e-6)) continue;
            double mid = fa.arc_mid();
            double dd = std::fabs(wrap_angle(ang - mid + kPi) - kPi);
            if (dd < best_dist) {
                best_dist = dd;
                best_edge = i;
                best_facet = &fa;
            }
        }
    }
    if (best_facet) {
        res.verdict = BarrierResult::Verdict::Violated;
        res.reason = "a smooth boundary point has outward normal interior to a facet arc";
        Vec2 x0 = 0.5 * (bd[best_edge] + bd[(best_edge + 1) % nb]);
        res.witness = x0;
        res.witness_facet = *best_facet;
        // Wedge competitor: walk while normals remain in the arc.
        std::size_t a = best_edge, b = best_edge;
        while (best_facet->contains_angle(edge_normal_angle((a + nb - 1) % nb), 1e-9))
            a = (a + nb - 1) % nb;
        while (best_facet->contains_angle(edge_normal_angle((b + 1) % nb), 1e-9))
            b = (b + 1) % nb;
        res.witness_wedge = {bd[a], x0, bd[(b + 1) % nb]};
        return res;
    }

    // Facet arcs met only at corners: compare the corner opening with the
    // arc width.
    bool all_narrow = true;
    for (std::size_t i = 0; i < nb; ++i) {
        if (!corner[i]) continue;
        double n_in = edge_normal_angle((i + nb - 1) % nb);
        double n_out = edge_normal_angle(i);
        double cone = wrap_angle(n_out - n_in);
        double opening = kPi - cone;
        for (const Facet& fa : facets) {
            // Does the corner cone meet the arc interior?
            double rel_begin = wrap_angle(fa.arc_begin - n_in);
            double rel_mid = wrap_angle(fa.arc_mid() - n_in);
            bool meets = rel_mid < cone || rel_begin < cone ||
                         fa.contains_angle(n_in, 1e-9) || fa.contains_angle(n_out, 1e-9);
            if (meets && !(opening < fa.arc_width())) all_narrow = false;
        }
    }
    if (all_narrow) {
        res.verdict = BarrierResult::Verdict::Satisfied;
        res.reason =
            "facet arcs are reached only at corners whose opening is narrower than the arc";
    } else {
        res.verdict = BarrierResult::Verdict::Indeterminate;
        res.reason = "corner openings are not narrower than the facet arcs they meet";
    }
    return res;
}

}  // namespace lgrad
