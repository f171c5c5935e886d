#pragma once

#include <cstddef>
#include <stdexcept>
#include <vector>

namespace qinv {

/// Uniform 1D sampling of [a, b] with n >= 3 points.
/// Quadrature weights are trapezoid: h at interior nodes, h/2 at the ends.
struct Grid1D {
    double a = 0.0;
    double b = 1.0;
    int n = 3;

    static Grid1D linear(double a, double b, int n) {
        if (!(b > a)) throw std::invalid_argument("Grid1D: require b > a");
        if (n < 3) throw std::invalid_argument("Grid1D: require n >= 3");
        return Grid1D{a, b, n};
    }

    double h() const { return (b - a) / static_cast<double>(n - 1); }
    double x(int i) const { return a + static_cast<double>(i) * h(); }
    double weight(int i) const { return (i == 0 || i == n - 1) ? 0.5 * h() : h(); }

    std::vector<double> points() const {
        std::vector<double> xs(static_cast<size_t>(n));
        for (int i = 0; i < n; ++i) xs[static_cast<size_t>(i)] = x(i);
        return xs;
    }

    /// Same interval sampled at half the spacing (n -> 2n-1); existing nodes are preserved.
    Grid1D refined() const { return Grid1D{a, b, 2 * n - 1}; }

    /// Sub-grid spanning node indices [i0, i1] of this grid (spacing unchanged).
    Grid1D subgrid(int i0, int i1) const {
        if (i0 < 0 || i1 >= n || i1 - i0 + 1 < 3)
            throw std::invalid_argument("Grid1D::subgrid: bad index window");
        return Grid1D{x(i0), x(i1), i1 - i0 + 1};
    }

    bool operator==(const Grid1D&) const = default;
};

/// Tensor-product 2D grid; values are stored row-major with x fastest.
struct Grid2D {
    Grid1D gx;
    Grid1D gy;

    static Grid2D tensor(const Grid1D& gx, const Grid1D& gy) { return Grid2D{gx, gy}; }

    int nx() const { return gx.n; }
    int ny() const { return gy.n; }
    size_t size() const { return static_cast<size_t>(gx.n) * static_cast<size_t>(gy.n); }
    size_t idx(int i, int j) const { return static_cast<size_t>(j) * static_cast<size_t>(gx.n) + static_cast<size_t>(i); }
    double weight(int i, int j) const { return gx.weight(i) * gy.weight(j); }

    bool operator==(const Grid2D&) const = default;
};

/// Trapezoid quadrature of sampled values over the grid.
double quadrature(const Grid1D& g, const std::vector<double>& values);
double quadrature(const Grid2D& g, const std::vector<double>& values);

}  // namespace qinv
