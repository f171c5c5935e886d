#include "qinv/grid.hpp"

#include <stdexcept>

namespace qinv {

double quadrature(const Grid1D& g, const std::vector<double>& values) {
    if (values.size() != static_cast<size_t>(g.n))
        throw std::invalid_argument("quadrature: size mismatch");
    const double h = g.h();
    double s = 0.5 * (values.front() + values.back());
    for (int i = 1; i < g.n - 1; ++i) s += values[static_cast<size_t>(i)];
    return s * h;
}

double quadrature(const Grid2D& g, const std::vector<double>& values) {
    if (values.size() != g.size()) throw std::invalid_argument("quadrature: size mismatch");
    double s = 0.0;
    for (int j = 0; j < g.ny(); ++j) {
        double row = 0.0;
        for (int i = 0; i < g.nx(); ++i) row += g.gx.weight(i) * values[g.idx(i, j)];
        s += g.gy.weight(j) * row;
    }
    return s;
}

}  // namespace qinv
