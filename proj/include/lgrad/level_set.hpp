#pragma once

#include <optional>
#include <vector>

#include "lgrad/domain.hpp"
#include "lgrad/solution.hpp"
#include "lgrad/vec.hpp"

namespace lgrad {

// One boundary-to-boundary curve bounding a superlevel set: a straight chord
// from the strict solver, or a polygonal chain from the facet constructions.
struct LevelChain {
    std::vector<Vec2> pts;   // >= 2 points; endpoints on the domain boundary
    double s_begin{0.0};     // boundary arc length of pts.front()
    double s_end{0.0};       // boundary arc length of pts.back()
};

struct Level {
    double t{0.0};
    double weight{0.0};      // coarea cell width in t
    std::vector<LevelChain> chains;
    std::vector<std::pair<double, double>> arcs;  // boundary arcs with f >= t
    bool full_domain{false};  // E_t is the whole closure
    bool empty_set{false};    // E_t is empty
    bool degenerate{false};   // f^{-1}(t) degenerated at construction
};

// Nested family of superlevel sets E_{t_0} >= ... >= E_{t_m}; the evaluator
// u(x) = sup{ t_j : x in E_{t_j} } with linear interpolation between the
// bracketing level boundaries. Membership is decided by crossing parity of a
// segment from the query point to an anchor in the global sublevel region.
class LevelSetFamily : public SolutionField {
  public:
    LevelSetFamily(const ConvexDomain& domain, std::vector<Level> levels,
                   double min_value, double max_value,
                   std::optional<BoundaryFunction> trace_data = std::nullopt);

    // Constant solution (empty chord family).
    static LevelSetFamily constant(const ConvexDomain& domain, double value);

    const ConvexDomain& domain() const { return *domain_; }
    const std::vector<Level>& levels() const { return levels_; }
    double min_value() const { return min_value_; }
    double max_value() const { return max_value_; }
    const std::optional<BoundaryFunction>& trace_data() const { return trace_data_; }

    bool contains(std::size_t level_index, const Vec2& p) const;
    double value(const Vec2& p) const override;

    // Largest level index whose superlevel set contains p, or -1.
    long highest_level_containing(const Vec2& p) const;

    // Max over probe points of nesting violations (positive distance by
    // which some E_{t_{j+1}} point escapes E_{t_j}); 0 when nested.
    int count_nesting_violations(const std::vector<Vec2>& probes) const;

    double distance_to_level_boundary(std::size_t level_index, const Vec2& p) const;

  private:
    const ConvexDomain* domain_;
    std::vector<Level> levels_;
    double min_value_{0.0};
    double max_value_{0.0};
    std::optional<BoundaryFunction> trace_data_;
    std::vector<Vec2> anchors_;  // interior points in the global sublevel region

    void build_anchors();
    int crossing_parity(const Vec2& p, const Level& lvl) const;
};

}  // namespace lgrad
