#include "lgrad/grid.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace lgrad {

GridFunction::GridFunction(const ConvexDomain& domain, int resolution) : domain_(&domain) {
    if (resolution < 32) throw std::invalid_argument("GridFunction: resolution must be >= 32");
    double xmin = 1e300, xmax = -1e300, ymin = 1e300, ymax = -1e300;
    for (const auto& v : domain.boundary()) {
        xmin = std::min(xmin, v.x); xmax = std::max(xmax, v.x);
        ymin = std::min(ymin, v.y); ymax = std::max(ymax, v.y);
    }
    double w = xmax - xmin, hgt = ymax - ymin;
    h_ = std::max(w, hgt) / resolution;
    nx_ = static_cast<int>(std::ceil(w / h_)) + 2;
    ny_ = static_cast<int>(std::ceil(hgt / h_)) + 2;
    origin_ = {xmin - h_, ymin - h_};

    cells_.assign(static_cast<std::size_t>(nx_) * static_cast<std::size_t>(ny_), Cell::Exterior);
    values_.assign(cells_.size(), 0.0);
    dirichlet_.assign(cells_.size(), 0.0);

    for (int j = 0; j < ny_; ++j)
        for (int i = 0; i < nx_; ++i)
            if (domain.contains(center(i, j))) cells_[idx(i, j)] = Cell::Free;

    // Inside cells that touch the exterior through the 4-stencil become the
    // Dirichlet band.
    for (int j = 0; j < ny_; ++j) {
        for (int i = 0; i < nx_; ++i) {
            if (cells_[idx(i, j)] == Cell::Exterior) continue;
            bool edge = i == 0 || j == 0 || i == nx_ - 1 || j == ny_ - 1;
            if (!edge) {
                edge = cells_[idx(i - 1, j)] == Cell::Exterior ||
                       cells_[idx(i + 1, j)] == Cell::Exterior ||
                       cells_[idx(i, j - 1)] == Cell::Exterior ||
                       cells_[idx(i, j + 1)] == Cell::Exterior;
            }
            if (edge) cells_[idx(i, j)] = Cell::Fixed;
        }
    }
}

void GridFunction::apply_dirichlet(const BoundaryFunction& f) {
    for (int j = 0; j < ny_; ++j) {
        for (int i = 0; i < nx_; ++i) {
            if (cells_[idx(i, j)] != Cell::Fixed) continue;
            double s = domain_->project_to_boundary(center(i, j));
            dirichlet_[idx(i, j)] = f.value_at(s);
            values_[idx(i, j)] = dirichlet_[idx(i, j)];
        }
    }
}

void GridFunction::repin() {
    for (std::size_t k = 0; k < cells_.size(); ++k)
        if (cells_[k] == Cell::Fixed) values_[k] = dirichlet_[k];
}

Vec2 GridFunction::gradient(int i, int j) const {
    double gx = 0.0, gy = 0.0;
    if (i + 1 < nx_ && inside(i + 1, j) && inside(i, j)) gx = (at(i + 1, j) - at(i, j)) / h_;
    if (j + 1 < ny_ && inside(i, j + 1) && inside(i, j)) gy = (at(i, j + 1) - at(i, j)) / h_;
    return {gx, gy};
}

double GridFunction::value(const Vec2& p) const {
    // Bilinear interpolation on the cell-center lattice; falls back to the
    // nearest non-exterior cell near the boundary.
    double fx = (p.x - origin_.x) / h_ - 0.5;
    double fy = (p.y - origin_.y) / h_ - 0.5;
    int i0 = static_cast<int>(std::floor(fx));
    int j0 = static_cast<int>(std::floor(fy));
    double tx = fx - i0, ty = fy - j0;
    auto ok = [&](int i, int j) {
        return i >= 0 && j >= 0 && i < nx_ && j < ny_ && inside(i, j);
    };
    if (ok(i0, j0) && ok(i0 + 1, j0) && ok(i0, j0 + 1) && ok(i0 + 1, j0 + 1)) {
        double v00 = at(i0, j0), v10 = at(i0 + 1, j0);
        double v01 = at(i0, j0 + 1), v11 = at(i0 + 1, j0 + 1);
        return (1 - tx) * ((1 - ty) * v00 + ty * v01) + tx * ((1 - ty) * v10 + ty * v11);
    }
    double best = 1e300, val = 0.0;
    for (int dj = 0; dj <= 1; ++dj) {
        for (int di = 0; di <= 1; ++di) {
            int i = i0 + di, j = j0 + dj;
            if (!ok(i, j)) continue;
            double d = dist(p, center(i, j));
            if (d < best) { best = d; val = at(i, j); }
        }
    }
    if (best < 1e300) return val;
    // Far outside the lattice: clamp to the nearest boundary value.
    int ic = std::clamp(i0, 0, nx_ - 1), jc = std::clamp(j0, 0, ny_ - 1);
    for (int r = 1; r < std::max(nx_, ny_); ++r) {
        for (int j = std::max(0, jc - r); j <= std::min(ny_ - 1, jc + r); ++j) {
            for (int i = std::max(0, ic - r); i <= std::min(nx_ - 1, ic + r); ++i) {
                if (inside(i, j)) return at(i, j);
            }
        }
    }
    return 0.0;
}

void GridFunction::harmonic_fill(int sweeps) {
    std::vector<double> next = values_;
    for (int s = 0; s < sweeps; ++s) {
        for (int j = 0; j < ny_; ++j) {
            for (int i = 0; i < nx_; ++i) {
                if (cells_[idx(i, j)] != Cell::Free) continue;
                double acc = 0.0;
                int cnt = 0;
                auto add = [&](int ii, int jj) {
                    if (ii >= 0 && jj >= 0 && ii < nx_ && jj < ny_ && inside(ii, jj)) {
                        acc += values_[idx(ii, jj)];
                        ++cnt;
                    }
                };
                add(i - 1, j); add(i + 1, j); add(i, j - 1); add(i, j + 1);
                next[idx(i, j)] = cnt ? acc / cnt : values_[idx(i, j)];
            }
        }
        std::swap(values_, next);
    }
}

double GridFunction::interior_area() const {
    std::size_t n = 0;
    for (auto c : cells_)
        if (c != Cell::Exterior) ++n;
    return static_cast<double>(n) * h_ * h_;
}

double GridFunction::l1_distance(const GridFunction& a, const GridFunction& b) {
    double s = 0.0;
    for (std::size_t k = 0; k < a.cells_.size(); ++k)
        if (a.cells_[k] != Cell::Exterior && b.cells_[k] != Cell::Exterior)
            s += std::fabs(a.values_[k] - b.values_[k]);
    return s * a.h_ * a.h_;
}

double GridFunction::sup_distance(const GridFunction& a, const GridFunction& b) {
    double s = 0.0;
    for (std::size_t k = 0; k < a.cells_.size(); ++k)
        if (a.cells_[k] != Cell::Exterior && b.cells_[k] != Cell::Exterior)
            s = std::max(s, std::fabs(a.values_[k] - b.values_[k]));
    return s;
}

}  // namespace lgrad
