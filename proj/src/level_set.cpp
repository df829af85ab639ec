#include "lgrad/level_set.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace lgrad {

LevelSetFamily::LevelSetFamily(const ConvexDomain& domain, std::vector<Level> levels,
                               double min_value, double max_value,
                               std::optional<BoundaryFunction> trace_data)
    : domain_(&domain),
      levels_(std::move(levels)),
      min_value_(min_value),
      max_value_(max_value),
      trace_data_(std::move(trace_data)) {
    for (std::size_t i = 1; i < levels_.size(); ++i)
        if (levels_[i].t <= levels_[i - 1].t)
            throw std::invalid_argument("LevelSetFamily: levels must increase");
    build_anchors();
}

LevelSetFamily LevelSetFamily::constant(const ConvexDomain& domain, double value) {
    return LevelSetFamily(domain, {}, value, value);
}

void LevelSetFamily::build_anchors() {
    // Anchors live just inside the boundary where the trace is smallest, so
    // they sit outside every superlevel set. Several candidates at slightly
    // different spots let the parity test dodge degenerate crossings.
    double s_min = 0.0;
    if (trace_data_) {
        double best = 1e300;
        for (const auto& [s, f] : trace_data_->samples())
            if (f < best) { best = f; s_min = s; }
    } else if (!levels_.empty()) {
        // No trace recorded: anchor at the boundary sample farthest from the
        // lowest level's chains, skipping its superlevel arcs.
        double best = -1.0;
        const Level& lv = levels_.front();
        const double P = domain_->perimeter();
        for (std::size_t i = 0; i < domain_->sample_count(); ++i) {
            double s = domain_->project_to_boundary(domain_->boundary()[i]);
            bool on_arc = false;
            for (const auto& [a0, a1] : lv.arcs) {
                double rel = std::fmod(s - a0 + P, P);
                if (rel <= std::fmod(a1 - a0 + P, P)) { on_arc = true; break; }
            }
            if (on_arc) continue;
            Vec2 b = domain_->boundary()[i];
            double d = 1e300;
            for (const auto& ch : lv.chains)
                for (std::size_t k = 0; k + 1 < ch.pts.size(); ++k)
                    d = std::min(d, point_segment_dist(b, ch.pts[k], ch.pts[k + 1]));
            if (d > best) { best = d; s_min = s; }
        }
    }
    const double diam = domain_->diameter();
    const double P = domain_->perimeter();
    for (int k = 0; k < 8; ++k) {
        double s = s_min + (k - 3.5) * 1e-5 * P;
        Vec2 b = domain_->point_at(s);
        Vec2 inward = domain_->centroid() - b;
        double eps = (1e-7 + k * 3e-8) * diam / std::max(inward.norm(), 1e-12);
        anchors_.push_back(b + inward * eps);
    }
}

int LevelSetFamily::crossing_parity(const Vec2& p, const Level& lvl) const {
    for (const Vec2& anchor : anchors_) {
        int crossings = 0;
        bool degenerate = false;
        for (const auto& chain : lvl.chains) {
            for (std::size_t k = 0; k + 1 < chain.pts.size() && !degenerate; ++k) {
                int c = segment_crossing(p, anchor, chain.pts[k], chain.pts[k + 1], 1e-12);
                if (c < 0) degenerate = true;
                else crossings += c;
            }
            if (degenerate) break;
        }
        if (!degenerate) return crossings & 1;
    }
    // Every anchor hit a degeneracy; fall back to distance: points this close
    // to a chain belong to the closed superlevel set.
    return 1;
}

bool LevelSetFamily::contains(std::size_t level_index, const Vec2& p) const {
    const Level& lvl = levels_[level_index];
    if (lvl.full_domain) return true;
    if (lvl.empty_set) return false;
    if (lvl.chains.empty()) return false;
    if (distance_to_level_boundary(level_index, p) < 1e-12 * domain_->diameter()) return true;
    return crossing_parity(p, lvl) == 1;
}

long LevelSetFamily::highest_level_containing(const Vec2& p) const {
    // Nesting makes membership monotone in the level index.
    long lo = -1;
    long hi = static_cast<long>(levels_.size()) - 1;
    if (hi < 0) return -1;
    if (!contains(0, p)) return -1;
    lo = 0;
    while (lo < hi) {
        long mid = (lo + hi + 1) / 2;
        if (contains(static_cast<std::size_t>(mid), p)) lo = mid;
        else hi = mid - 1;
    }
    return lo;
}

double LevelSetFamily::distance_to_level_boundary(std::size_t level_index, const Vec2& p) const {
    const Level& lvl = levels_[level_index];
    double d = 1e300;
    for (const auto& chain : lvl.chains)
        for (std::size_t k = 0; k + 1 < chain.pts.size(); ++k)
            d = std::min(d, point_segment_dist(p, chain.pts[k], chain.pts[k + 1]));
    return d;
}

double LevelSetFamily::value(const Vec2& p) const {
    if (!domain_->contains(p, 1e-9 * domain_->diameter()))
        throw std::domain_error("LevelSetFamily::value: point outside the domain closure");
    if (levels_.empty()) return min_value_;
    long j = highest_level_containing(p);
    Vec2 nearest;
    domain_->project_to_boundary(p, &nearest);
    double d_bd = dist(p, nearest);
    if (j < 0) {
        // Below the lowest tracked level: interpolate toward the boundary
        // trace floor.
        double d0 = distance_to_level_boundary(0, p);
        double den = d0 + d_bd;
        if (den <= 0) return levels_.front().t;
        return min_value_ + (levels_.front().t - min_value_) * d_bd / den;
    }
    double d_here = distance_to_level_boundary(static_cast<std::size_t>(j), p);
    if (j + 1 >= static_cast<long>(levels_.size())) {
        double den = d_here + d_bd;
        if (den <= 0) return levels_.back().t;
        return levels_.back().t + (max_value_ - levels_.back().t) * d_here / den;
    }
    double d_up = distance_to_level_boundary(static_cast<std::size_t>(j + 1), p);
    double den = d_here + d_up;
    if (den <= 0) return levels_[static_cast<std::size_t>(j)].t;
    const double t0 = levels_[static_cast<std::size_t>(j)].t;
    const double t1 = levels_[static_cast<std::size_t>(j + 1)].t;
    return t0 + (t1 - t0) * d_here / den;
}

int LevelSetFamily::count_nesting_violations(const std::vector<Vec2>& probes) const {
    int bad = 0;
    for (const Vec2& p : probes) {
        if (!domain_->contains(p)) continue;
        bool prev = true;
        for (std::size_t j = 0; j < levels_.size(); ++j) {
            bool in = contains(j, p);
            if (in && !prev) ++bad;
            prev = in;
        }
    }
    return bad;
}

}  // namespace lgrad
