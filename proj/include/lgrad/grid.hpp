#pragma once

#include <vector>

#include "lgrad/domain.hpp"
#include "lgrad/solution.hpp"
#include "lgrad/vec.hpp"

namespace lgrad {

// Raster of values over the bounding box of a convex domain. Cells are
// classified once at construction: exterior cells are never touched, fixed
// cells carry Dirichlet data, free cells are the unknowns.
class GridFunction : public SolutionField {
  public:
    enum class Cell : unsigned char { Exterior, Fixed, Free };

    GridFunction(const ConvexDomain& domain, int resolution);

    const ConvexDomain& domain() const { return *domain_; }
    int nx() const { return nx_; }
    int ny() const { return ny_; }
    double spacing() const { return h_; }
    Vec2 origin() const { return origin_; }

    Cell cell(int i, int j) const { return cells_[idx(i, j)]; }
    bool inside(int i, int j) const { return cell(i, j) != Cell::Exterior; }
    double& at(int i, int j) { return values_[idx(i, j)]; }
    double at(int i, int j) const { return values_[idx(i, j)]; }
    Vec2 center(int i, int j) const {
        return {origin_.x + (i + 0.5) * h_, origin_.y + (j + 0.5) * h_};
    }
    std::size_t idx(int i, int j) const {
        return static_cast<std::size_t>(j) * static_cast<std::size_t>(nx_) + static_cast<std::size_t>(i);
    }

    std::vector<double>& values() { return values_; }
    const std::vector<double>& values() const { return values_; }

    // Pin fixed cells to f at the nearest boundary point.
    void apply_dirichlet(const BoundaryFunction& f);
    const std::vector<double>& dirichlet() const { return dirichlet_; }
    void repin();

    // Forward-difference gradient at a cell (components drop where the
    // neighbour is exterior).
    Vec2 gradient(int i, int j) const;

    // Nearest-cell evaluation with bilinear interpolation on interior cells.
    double value(const Vec2& p) const override;

    // Fill free cells by iterated 4-neighbour averaging of the boundary
    // values (`sweeps` Jacobi passes).
    void harmonic_fill(int sweeps = 100);

    double interior_area() const;  // h^2 * (#non-exterior cells)

    // L1 norm of the difference over non-exterior cells, times h^2.
    static double l1_distance(const GridFunction& a, const GridFunction& b);
    static double sup_distance(const GridFunction& a, const GridFunction& b);

  private:
    const ConvexDomain* domain_;
    int nx_{0}, ny_{0};
    double h_{0.0};
    Vec2 origin_;
    std::vector<Cell> cells_;
    std::vector<double> values_;
    std::vector<double> dirichlet_;
};

}  // namespace lgrad
