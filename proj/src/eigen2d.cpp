#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

#include "qinv/eigen.hpp"
#include "qinv/kernels.hpp"

namespace qinv {

void Hamiltonian2D::apply(const double* x, double* y) const {
    kern::stencil5_apply(diag.data(), cx, cy, x, y, static_cast<size_t>(grid.nx()),
                         static_cast<size_t>(grid.ny()));
}

Hamiltonian2D build_hamiltonian_2d(const PotentialField& field, const UnitSystem& units) {
    if (!field.fully_valid())
        throw std::invalid_argument(
            "build_hamiltonian_2d: field has masked cells; restrict the grid first");
    const double k = units.kinetic_prefactor();
    const double hx = field.grid.gx.h(), hy = field.grid.gy.h();
    Hamiltonian2D op;
    op.grid = field.grid;
    op.cx = k / (hx * hx);
    op.cy = k / (hy * hy);
    op.diag.resize(field.grid.size());
    const double d0 = 2.0 * op.cx + 2.0 * op.cy;
    for (size_t i = 0; i < op.diag.size(); ++i) op.diag[i] = d0 + field.values[i];
    return op;
}

namespace {

/// Plain conjugate gradient for H z = b (H is SPD here: MinZero potential plus
/// the positive-definite Dirichlet Laplacian).  z holds the warm start.
int conjugate_gradient(const Hamiltonian2D& op, const std::vector<double>& b,
                       std::vector<double>& z, double rel_tol, int max_iter) {
    const size_t n = op.dim();
    std::vector<double> r(n), p(n), hp(n);
    op.apply(z.data(), r.data());
    for (size_t i = 0; i < n; ++i) r[i] = b[i] - r[i];
    p = r;
    double rr = kern::dot(r.data(), r.data(), n);
    const double stop2 = rel_tol * rel_tol * kern::dot(b.data(), b.data(), n);
    int it = 0;
    while (rr > stop2 && it < max_iter) {
        op.apply(p.data(), hp.data());
        const double alpha = rr / kern::dot(p.data(), hp.data(), n);
        kern::axpy(alpha, p.data(), z.data(), n);
        kern::axpy(-alpha, hp.data(), r.data(), n);
        const double rr_new = kern::dot(r.data(), r.data(), n);
        const double beta = rr_new / rr;
        for (size_t i = 0; i < n; ++i) p[i] = r[i] + beta * p[i];
        rr = rr_new;
        ++it;
    }
    return it;
}

}  // namespace

EigenSolution lowest_eigenpair_2d(const Hamiltonian2D& op, const IterOpts& opts) {
    const size_t n = op.dim();
    std::vector<double> v(n, 1.0 / std::sqrt(static_cast<double>(n)));  // documented start
    std::vector<double> z(v), hv(n);

    op.apply(v.data(), hv.data());
    double lambda = kern::dot(v.data(), hv.data(), n);

    EigenSolution sol;
    double rel_change = 1.0;
    for (int outer = 1; outer <= opts.max_outer; ++outer) {
        const double cg_tol = std::clamp(0.05 * rel_change, 1e-12, 1e-2);
        conjugate_gradient(op, v, z, cg_tol, opts.max_cg);

        const double nrm = std::sqrt(kern::dot(z.data(), z.data(), n));
        if (!(nrm > 0.0) || !std::isfinite(nrm))
            throw std::runtime_error("lowest_eigenpair_2d: iteration broke down");
        for (size_t i = 0; i < n; ++i) v[i] = z[i] / nrm;

        op.apply(v.data(), hv.data());
        const double lambda_new = kern::dot(v.data(), hv.data(), n);
        rel_change = std::abs(lambda_new - lambda) / std::max(std::abs(lambda_new), 1e-300);
        lambda = lambda_new;
        sol.iterations = outer;
        if (rel_change <= opts.tol_rel) break;
    }
    if (rel_change > opts.tol_rel)
        throw std::runtime_error("lowest_eigenpair_2d: no convergence after " +
                                 std::to_string(opts.max_outer) +
                                 " iterations (relative change " + std::to_string(rel_change) +
                                 ")");

    double res = 0.0;
    for (size_t i = 0; i < n; ++i) {
        const double r = hv[i] - lambda * v[i];
        res += r * r;
    }
    sol.residual = std::sqrt(res);
    sol.energy = lambda;

    // quadrature normalization, deterministic sign
    double qn = 0.0;
    for (int j = 0; j < op.grid.ny(); ++j)
        for (int i = 0; i < op.grid.nx(); ++i) {
            const double w = op.grid.weight(i, j);
            const double vi = v[op.grid.idx(i, j)];
            qn += w * vi * vi;
        }
    kern::scal(1.0 / std::sqrt(qn), v.data(), n);
    size_t imax = 0;
    for (size_t i = 1; i < n; ++i)
        if (std::abs(v[i]) > std::abs(v[imax])) imax = i;
    if (v[imax] < 0.0) kern::scal(-1.0, v.data(), n);
    sol.vector = std::move(v);
    return sol;
}

}  // namespace qinv
