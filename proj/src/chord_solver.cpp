#include "lgrad/chord_solver.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <random>
#include <stdexcept>

namespace lgrad {

namespace {

double value_tolerance(const BoundaryFunction& f, double scale) {
    return scale * std::max(1.0, f.range());
}

}  // namespace

LevelArcs level_arcs(const ConvexDomain& domain, const BoundaryFunction& f, double t) {
    LevelArcs out;
    const auto& samples = f.samples();
    const double P = domain.perimeter();
    const double vtol = value_tolerance(f, 1e-9);

    if (t > f.max_value()) { out.kind = LevelArcs::Kind::Empty; return out; }
    if (t <= f.min_value()) { out.kind = LevelArcs::Kind::Full; return out; }

    const std::size_t n = samples.size();
    struct Crossing { double s; bool up; };
    std::vector<Crossing> crossings;
    for (std::size_t i = 0; i < n; ++i) {
        double s0 = samples[i].first;
        double f0 = samples[i].second;
        double s1 = (i + 1 < n) ? samples[i + 1].first : samples[0].first + P;
        double f1 = (i + 1 < n) ? samples[i + 1].second : samples[0].second;
        if (std::fabs(f0 - t) < vtol || std::fabs(f1 - t) < vtol) out.degenerate = true;
        if ((f0 - t) * (f1 - t) < 0.0) {
            double alpha = (t - f0) / (f1 - f0);  // inverse linear interpolation
            crossings.push_back({s0 + alpha * (s1 - s0), f1 > f0});
        }
    }
    if (crossings.empty()) {
        // t strictly between min and max must cross somewhere unless the
        // data degenerated onto the level.
        out.degenerate = true;
        out.kind = LevelArcs::Kind::Empty;
        return out;
    }
    // Pair up-crossings with the following down-crossings in boundary order.
    std::size_t first_up = 0;
    while (first_up < crossings.size() && !crossings[first_up].up) ++first_up;
    if (first_up == crossings.size() || crossings.size() % 2 != 0) {
        out.degenerate = true;
        out.kind = LevelArcs::Kind::Empty;
        return out;
    }
    for (std::size_t k = 0; k < crossings.size(); k += 2) {
        const Crossing& a = crossings[(first_up + k) % crossings.size()];
        const Crossing& b = crossings[(first_up + k + 1) % crossings.size()];
        if (!a.up || b.up) { out.degenerate = true; }
        out.arcs.emplace_back(a.s, b.s);
    }
    return out;
}

std::vector<std::pair<int, int>> optimal_matching(const AnisotropyNorm& norm,
                                                  const std::vector<MatchEndpoint>& endpoints,
                                                  const std::vector<LevelChain>* avoid) {
    const int m = static_cast<int>(endpoints.size());
    if (m == 0) return {};
    if (m % 2 != 0) throw std::invalid_argument("optimal_matching: odd endpoint count");
    for (int i = 0; i < m; ++i)
        if (endpoints[i].enter == endpoints[(i + 1) % m].enter)
            throw std::invalid_argument("optimal_matching: labels must alternate around the boundary");

    // Chord costs; crossings against the previous level's chains get a tiny
    // penalty so equal-cost ties resolve to the nested matching.
    std::vector<std::vector<double>> cost(m, std::vector<double>(m, 0.0));
    double scale = 0.0;
    for (int i = 0; i < m; ++i) {
        for (int j = i + 1; j < m; ++j) {
            if (endpoints[i].enter == endpoints[j].enter) continue;
            double c = jensen_lower_bound(norm, endpoints[i].p, endpoints[j].p);
            cost[i][j] = cost[j][i] = c;
            scale = std::max(scale, c);
        }
    }
    // Hierarchy of preferences: genuine cost first, then (through a penalty
    // well above the lexicographic window) nesting against the previous
    // level, then smallest endpoint indices.
    const double lex_eps = 1e-12 * std::max(1.0, scale);
    if (avoid) {
        const double penalty = 2.5e-10 * std::max(1.0, scale);
        for (int i = 0; i < m; ++i) {
            for (int j = i + 1; j < m; ++j) {
                if (endpoints[i].enter == endpoints[j].enter) continue;
                int crossings = 0;
                for (const auto& ch : *avoid)
                    for (std::size_t k = 0; k + 1 < ch.pts.size(); ++k)
                        if (segment_crossing(endpoints[i].p, endpoints[j].p, ch.pts[k],
                                             ch.pts[k + 1], 1e-12) == 1)
                            ++crossings;
                cost[i][j] += crossings * penalty;
                cost[j][i] = cost[i][j];
            }
        }
    }

    // Interval DP in the cyclic order anchored at endpoint 0: the partner of
    // the interval's first element splits the rest into two independent
    // intervals, so plain linear intervals cover the cyclic problem.
    const double INF = std::numeric_limits<double>::infinity();
    std::vector<std::vector<double>> best(m + 1, std::vector<double>(m + 1, 0.0));
    std::vector<std::vector<int>> choice(m + 1, std::vector<int>(m + 1, -1));
    // best[i][j]: optimal cost of matching endpoints i..j-1 (half-open).
    for (int len = 2; len <= m; len += 2) {
        for (int i = 0; i + len <= m; ++i) {
            int j = i + len;
            double b = INF;
            int pick = -1;
            for (int k = i + 1; k < j; k += 2) {
                if (endpoints[i].enter == endpoints[k].enter) continue;
                double c = cost[i][k] + best[i + 1][k] + best[k + 1][j];
                if (c < b - lex_eps) { b = c; pick = k; }
                // ties keep the smallest k, i.e. the lexicographically
                // smallest pairing
            }
            if (pick < 0) throw std::runtime_error("optimal_matching: no admissible matching");
            best[i][j] = b;
            choice[i][j] = pick;
        }
    }
    std::vector<std::pair<int, int>> pairs;
    // Iterative reconstruction over half-open intervals.
    std::vector<std::pair<int, int>> stack{{0, m}};
    while (!stack.empty()) {
        auto [i, j] = stack.back();
        stack.pop_back();
        if (j - i < 2) continue;
        int k = choice[i][j];
        pairs.emplace_back(i, k);
        stack.emplace_back(i + 1, k);
        stack.emplace_back(k + 1, j);
    }
    std::sort(pairs.begin(), pairs.end());
    return pairs;
}

namespace {

std::vector<MatchEndpoint> arcs_to_endpoints(const ConvexDomain& domain, const LevelArcs& arcs,
                                             int cyclic_shift) {
    std::vector<MatchEndpoint> eps;
    for (const auto& [s0, s1] : arcs.arcs) {
        eps.push_back({s0, domain.point_at(s0), true});
        eps.push_back({s1, domain.point_at(s1), false});
    }
    const double P = domain.perimeter();
    std::sort(eps.begin(), eps.end(), [&](const MatchEndpoint& a, const MatchEndpoint& b) {
        return std::fmod(a.s + P, P) < std::fmod(b.s + P, P);
    });
    if (!eps.empty() && cyclic_shift) {
        int sh = ((cyclic_shift % static_cast<int>(eps.size())) + static_cast<int>(eps.size())) %
                 static_cast<int>(eps.size());
        std::rotate(eps.begin(), eps.begin() + sh, eps.end());
    }
    return eps;
}

std::vector<LevelChain> chains_from_matching(const std::vector<MatchEndpoint>& eps,
                                             const std::vector<std::pair<int, int>>& pairs) {
    std::vector<LevelChain> chains;
    for (auto [i, j] : pairs) {
        // Orient from exit to enter so the superlevel side is on the left.
        const MatchEndpoint& a = eps[static_cast<std::size_t>(i)];
        const MatchEndpoint& b = eps[static_cast<std::size_t>(j)];
        const MatchEndpoint& ex = a.enter ? b : a;
        const MatchEndpoint& en = a.enter ? a : b;
        LevelChain ch;
        ch.pts = {ex.p, en.p};
        ch.s_begin = ex.s;
        ch.s_end = en.s;
        chains.push_back(std::move(ch));
    }
    return chains;
}

int count_chain_crossings(const std::vector<LevelChain>& a, const std::vector<LevelChain>& b) {
    int n = 0;
    for (const auto& ca : a)
        for (std::size_t i = 0; i + 1 < ca.pts.size(); ++i)
            for (const auto& cb : b)
                for (std::size_t j = 0; j + 1 < cb.pts.size(); ++j)
                    if (segment_crossing(ca.pts[i], ca.pts[i + 1], cb.pts[j], cb.pts[j + 1],
                                         1e-12) == 1)
                        ++n;
    return n;
}

}  // namespace

LevelSetFamily solve_strict(const AnisotropyNorm& norm, const ConvexDomain& domain,
                            const BoundaryFunction& f, const SolveOptions& opts) {
    if (!norm.is_strictly_convex())
        throw std::runtime_error(
            "solve_strict: unit ball has facets; use solve_regularized for faceted norms");
    if (!domain.is_strictly_convex())
        throw std::runtime_error(
            "solve_strict: domain is not strictly convex; use solve_regularized on a strictly "
            "convex domain");

    const double fmin = f.min_value(), fmax = f.max_value();
    if (fmax - fmin < value_tolerance(f, 1e-12)) return LevelSetFamily::constant(domain, fmin);

    const int m = std::max(2, opts.level_count);
    const double dt = (fmax - fmin) / m;
    const double vtol = value_tolerance(f, opts.value_tol_scale);

    std::vector<int> order(static_cast<std::size_t>(m));
    for (int j = 0; j < m; ++j) order[static_cast<std::size_t>(j)] = opts.descending ? m - 1 - j : j;

    std::vector<Level> levels(static_cast<std::size_t>(m));
    const std::vector<LevelChain>* prev = nullptr;
    for (int oj : order) {
        double t = fmin + (oj + 0.5) * dt;
        LevelArcs arcs = level_arcs(domain, f, t);
        // Degenerate levels shift by half a value tolerance until clean.
        int guard = 0;
        while (arcs.degenerate && guard++ < 8) {
            t += 0.5 * vtol;
            arcs = level_arcs(domain, f, t);
        }
        Level lvl;
        lvl.t = t;
        lvl.weight = dt;
        lvl.degenerate = arcs.degenerate;
        lvl.arcs = arcs.arcs;
        lvl.full_domain = arcs.kind == LevelArcs::Kind::Full;
        lvl.empty_set = arcs.kind == LevelArcs::Kind::Empty;
        if (arcs.kind == LevelArcs::Kind::Arcs) {
            auto eps = arcs_to_endpoints(domain, arcs, opts.cyclic_shift);
            auto pairs = optimal_matching(norm, eps, prev);
            lvl.chains = chains_from_matching(eps, pairs);
            if (prev && count_chain_crossings(lvl.chains, *prev) > 0) {
                throw std::runtime_error(
                    "solve_strict: nesting violation between adjacent levels (crossing chords at t=" +
                    std::to_string(t) + ")");
            }
        }
        levels[static_cast<std::size_t>(oj)] = std::move(lvl);
        prev = &levels[static_cast<std::size_t>(oj)].chains;
    }
    return LevelSetFamily(domain, std::move(levels), fmin, fmax, f);
}

std::vector<Vec2> probe_grid(const ConvexDomain& domain, int res, double margin_factor) {
    std::vector<Vec2> pts;
    double xmin = 1e300, xmax = -1e300, ymin = 1e300, ymax = -1e300;
    for (const auto& v : domain.boundary()) {
        xmin = std::min(xmin, v.x); xmax = std::max(xmax, v.x);
        ymin = std::min(ymin, v.y); ymax = std::max(ymax, v.y);
    }
    const double margin = margin_factor * domain.diameter();
    for (int j = 0; j < res; ++j) {
        for (int i = 0; i < res; ++i) {
            Vec2 p{xmin + (i + 0.5) * (xmax - xmin) / res, ymin + (j + 0.5) * (ymax - ymin) / res};
            if (!domain.contains(p)) continue;
            Vec2 nearest;
            domain.project_to_boundary(p, &nearest);
            if (dist(p, nearest) > margin) pts.push_back(p);
        }
    }
    return pts;
}

RegularizedSolution solve_regularized(const AnisotropyNorm& norm, const ConvexDomain& domain,
                                      const BoundaryFunction& f,
                                      const std::vector<double>& eps_schedule,
                                      const SolveOptions& opts, double cauchy_tol, int probe_res) {
    if (!domain.is_strictly_convex())
        throw std::runtime_error("solve_regularized: domain must be strictly convex");

    RegularizationReport rep;
    if (norm.is_strictly_convex()) {
        rep.collapsed = true;
        rep.cauchy = true;
        return {solve_strict(norm, domain, f, opts), std::move(rep)};
    }
    if (eps_schedule.empty()) throw std::invalid_argument("solve_regularized: empty schedule");
    for (std::size_t i = 1; i < eps_schedule.size(); ++i)
        if (!(eps_schedule[i] < eps_schedule[i - 1]))
            throw std::invalid_argument("solve_regularized: schedule must decrease");

    auto probes = probe_grid(domain, probe_res);
    std::optional<LevelSetFamily> current;
    std::vector<double> prev_vals;
    for (double eps : eps_schedule) {
        LevelSetFamily next = solve_strict(norm.regularized(eps), domain, f, opts);
        std::vector<double> vals(probes.size());
        for (std::size_t i = 0; i < probes.size(); ++i) vals[i] = next.value(probes[i]);
        if (current) {
            double d = 0.0;
            for (std::size_t i = 0; i < probes.size(); ++i)
                d = std::max(d, std::fabs(vals[i] - prev_vals[i]));
            rep.sup_distances.push_back(d);
        }
        rep.eps.push_back(eps);
        current = std::move(next);
        prev_vals = std::move(vals);
    }
    if (!rep.sup_distances.empty()) {
        double tol = cauchy_tol * std::max(1.0, f.range());
        rep.cauchy = rep.sup_distances.back() <= tol;
        rep.warning_not_converged = !rep.cauchy;
    } else {
        rep.cauchy = true;
    }
    return {std::move(*current), std::move(rep)};
}

ModulusReport modulus_check(const SolutionField& u, const ConvexDomain& domain,
                            const Modulus& omega, bool beta_mode, std::size_t n_pairs,
                            unsigned seed) {
    ModulusReport rep;
    rep.c_omega = domain.regularity_constant();
    double expo = 0.5;
    if (beta_mode) {
        if (!domain.beta()) throw std::invalid_argument("modulus_check: domain carries no beta certificate");
        expo = 1.0 / (*domain.beta() + 2.0);
    }
    rep.exponent = expo;

    double xmin = 1e300, xmax = -1e300, ymin = 1e300, ymax = -1e300;
    for (const auto& v : domain.boundary()) {
        xmin = std::min(xmin, v.x); xmax = std::max(xmax, v.x);
        ymin = std::min(ymin, v.y); ymax = std::max(ymax, v.y);
    }
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> ux(xmin, xmax), uy(ymin, ymax);
    auto draw = [&]() {
        for (;;) {
            Vec2 p{ux(rng), uy(rng)};
            if (domain.contains(p)) return p;
        }
    };
    for (std::size_t k = 0; k < n_pairs; ++k) {
        Vec2 p = draw(), q = draw();
        double d = dist(p, q);
        if (d < 1e-12) continue;
        double bound = omega(rep.c_omega * std::pow(d, expo));
        if (bound <= 0) continue;
        double ratio = std::fabs(u.value(p) - u.value(q)) / bound;
        if (ratio > rep.max_ratio) {
            rep.max_ratio = ratio;
            rep.worst_p = p;
            rep.worst_q = q;
        }
        ++rep.pairs;
    }
    return rep;
}

TraceReport trace_check(const SolutionField& u, const ConvexDomain& domain,
                        const BoundaryFunction& f, std::size_t n_samples, double delta_factor) {
    TraceReport rep;
    rep.samples = n_samples;
    const double P = domain.perimeter();
    const double delta = delta_factor * domain.diameter();
    for (std::size_t k = 0; k < n_samples; ++k) {
        double s = P * (static_cast<double>(k) + 0.5) / static_cast<double>(n_samples);
        Vec2 b = domain.point_at(s);
        Vec2 inward = (domain.centroid() - b).normalized();
        double dev = std::fabs(u.value(b + inward * delta) - f.value_at(s));
        if (dev > rep.max_deviation) {
            rep.max_deviation = dev;
            rep.argmax_s = s;
        }
    }
    return rep;
}

}  // namespace lgrad
