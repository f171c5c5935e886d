#pragma once

#include "qinv/distributions.hpp"
#include "qinv/grid.hpp"

namespace qinv {

/// Documented per-family verification windows.  They keep the pdf above
/// 1e-16 of its maximum across the whole window (so Dirichlet truncation
/// error sits far below every tolerance) while staying wide enough that the
/// tail mass outside is negligible.
inline Grid1D default_grid(const DistributionSpec& spec, int n) {
    switch (spec.family()) {
        case Family::Gaussian: {
            const double s = spec.param("sigma"), x0 = spec.param("x0");
            return Grid1D::linear(x0 - 8.0 * s, x0 + 8.0 * s, n);
        }
        case Family::Lorentzian: {
            const double g = spec.param("gamma"), x0 = spec.param("x0");
            return Grid1D::linear(x0 - 60.0 * g, x0 + 60.0 * g, n);
        }
        case Family::Gumbel: {
            const double b = spec.param("beta"), x0 = spec.param("x0");
            return Grid1D::linear(x0 - 3.5 * b, x0 + 20.0 * b, n);
        }
        case Family::Logistic: {
            const double s = spec.param("s"), x0 = spec.param("x0");
            return Grid1D::linear(x0 - 25.0 * s, x0 + 25.0 * s, n);
        }
        case Family::Rayleigh:
        case Family::Chi: {
            const double s = spec.param("sigma");
            const double b = 12.0 * s;
            return Grid1D::linear(b / n, b, n);  // wall just outside the first node
        }
        case Family::Beta:
            return Grid1D::linear(0.005, 0.995, n);
        case Family::Tabulated:
            return spec.table().grid();
    }
    return Grid1D::linear(-1.0, 1.0, n);
}

}  // namespace qinv
