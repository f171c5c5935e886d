#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>
#include <string>

#include "qinv/eigen.hpp"
#include "qinv/inverse.hpp"
#include "qinv/kernels.hpp"

namespace qinv {

namespace {

constexpr double kTinyPivot = 1e-300;

/// Number of eigenvalues of the tridiagonal strictly below lambda
/// (LDL^T sign count with the usual pivot safeguard).
int sturm_count(const std::vector<double>& d, const std::vector<double>& e, double lambda) {
    const size_t n = d.size();
    int cnt = 0;
    double q = 1.0;
    for (size_t i = 0; i < n; ++i) {
        const double e2 = (i > 0) ? e[i - 1] * e[i - 1] : 0.0;
        q = d[i] - lambda - e2 / q;
        if (q == 0.0) q = -kTinyPivot;
        if (q < 0.0) ++cnt;
    }
    return cnt;
}

/// Solve (T - sigma I) x = b with partial pivoting (gtsv-style).
void shifted_tridiag_solve(const std::vector<double>& diag, const std::vector<double>& off,
                           double sigma, std::vector<double>& b) {
    const size_t n = diag.size();
    std::vector<double> d(n), du(n > 1 ? n - 1 : 0), du2(n > 2 ? n - 2 : 0, 0.0);
    std::vector<double> dl(off);
    for (size_t i = 0; i < n; ++i) d[i] = diag[i] - sigma;
    for (size_t i = 0; i + 1 < n; ++i) du[i] = off[i];

    for (size_t i = 0; i + 1 < n; ++i) {
        if (std::abs(d[i]) >= std::abs(dl[i])) {
            if (d[i] == 0.0) d[i] = kTinyPivot;
            const double fact = dl[i] / d[i];
            d[i + 1] -= fact * du[i];
            b[i + 1] -= fact * b[i];
            if (i + 2 < n) du2[i] = 0.0;
        } else {
            const double fact = d[i] / dl[i];
            const double D1 = d[i + 1];
            const double DU1 = (i + 2 < n) ? du[i + 1] : 0.0;
            d[i] = dl[i];
            d[i + 1] = du[i] - fact * D1;
            du[i] = D1;
            if (i + 2 < n) {
                du2[i] = DU1;
                du[i + 1] = -fact * DU1;
            }
            std::swap(b[i], b[i + 1]);
            b[i + 1] -= fact * b[i];
        }
    }
    if (d[n - 1] == 0.0) d[n - 1] = kTinyPivot;

    b[n - 1] /= d[n - 1];
    if (n >= 2) b[n - 2] = (b[n - 2] - du[n - 2] * b[n - 1]) / d[n - 2];
    for (size_t ii = n; ii >= 3; --ii) {
        const size_t i = ii - 3;
        b[i] = (b[i] - du[i] * b[i + 1] - du2[i] * b[i + 2]) / d[i];
    }
}

double euclid_norm(const std::vector<double>& v) {
    return std::sqrt(kern::dot(v.data(), v.data(), v.size()));
}

void fix_sign(std::vector<double>& v) {
    size_t imax = 0;
    for (size_t i = 1; i < v.size(); ++i)
        if (std::abs(v[i]) > std::abs(v[imax])) imax = i;
    if (v[imax] < 0.0)
        for (double& x : v) x = -x;
}

}  // namespace

void Hamiltonian1D::apply(const double* x, double* y) const {
    kern::tridiag_apply(diag.data(), off.data(), x, y, diag.size());
}

Hamiltonian1D build_hamiltonian_1d(const PotentialCurve& pot, const UnitSystem& units) {
    if (!pot.fully_valid())
        throw std::invalid_argument(
            "build_hamiltonian_1d: potential has masked cells; restrict the grid first");
    const int n = pot.grid.n;
    const double h = pot.grid.h();
    const double k = units.kinetic_prefactor();  // hbar^2/2m
    Hamiltonian1D op;
    op.grid = pot.grid;
    op.diag.resize(static_cast<size_t>(n));
    op.off.assign(static_cast<size_t>(n - 1), -k / (h * h));
    for (int i = 0; i < n; ++i)
        op.diag[static_cast<size_t>(i)] = 2.0 * k / (h * h) + pot.values[static_cast<size_t>(i)];
    return op;
}

int eigenvalues_below(const Hamiltonian1D& op, double threshold) {
    return sturm_count(op.diag, op.off, threshold);
}

std::vector<EigenSolution> lowest_eigenpairs(const Hamiltonian1D& op, int count) {
    const size_t n = op.dim();
    if (count < 1 || static_cast<size_t>(count) > n - 2)
        throw std::invalid_argument("lowest_eigenpairs: bad count");

    // Gershgorin bounds
    double lo = std::numeric_limits<double>::infinity(), hi = -lo;
    for (size_t i = 0; i < n; ++i) {
        const double r = (i > 0 ? std::abs(op.off[i - 1]) : 0.0) +
                         (i + 1 < n ? std::abs(op.off[i]) : 0.0);
        lo = std::min(lo, op.diag[i] - r);
        hi = std::max(hi, op.diag[i] + r);
    }
    const double scale = std::max({std::abs(lo), std::abs(hi), 1.0});

    std::vector<EigenSolution> out;
    out.reserve(static_cast<size_t>(count));

    for (int k = 1; k <= count; ++k) {
        double a = lo, b = hi;
        while (b - a > 1e-13 * scale) {
            const double mid = 0.5 * (a + b);
            if (sturm_count(op.diag, op.off, mid) >= k)
                b = mid;
            else
                a = mid;
        }
        const double lambda = 0.5 * (a + b);

        // Inverse iteration at the isolated eigenvalue.
        EigenSolution sol;
        std::vector<double> v(n, 1.0 / std::sqrt(static_cast<double>(n)));
        std::vector<double> hv(n);
        const int max_sweeps = 16;
        bool converged = false;
        for (int sweep = 1; sweep <= max_sweeps; ++sweep) {
            shifted_tridiag_solve(op.diag, op.off, lambda, v);
            // deflate against earlier vectors when eigenvalues are clustered
            for (const EigenSolution& prev : out) {
                if (std::abs(prev.energy - lambda) < 1e-6 * scale) {
                    const double c = kern::dot(prev.vector.data(), v.data(), n) /
                                     kern::dot(prev.vector.data(), prev.vector.data(), n);
                    kern::axpy(-c, prev.vector.data(), v.data(), n);
                }
            }
            const double nrm = euclid_norm(v);
            if (!(nrm > 0.0) || !std::isfinite(nrm))
                throw std::runtime_error("lowest_eigenpairs: inverse iteration broke down");
            kern::scal(1.0 / nrm, v.data(), n);

            op.apply(v.data(), hv.data());
            const double rq = kern::dot(v.data(), hv.data(), n);
            double res = 0.0;
            for (size_t i = 0; i < n; ++i) {
                const double r = hv[i] - rq * v[i];
                res += r * r;
            }
            res = std::sqrt(res);
            sol.energy = rq;
            sol.iterations = sweep;
            sol.residual = res;
            if (res <= std::max(1e-10, 1e-10 * std::abs(rq))) {
                converged = true;
                break;
            }
        }
        if (!converged)
            throw std::runtime_error(
                "lowest_eigenpairs: no convergence for eigenvalue " + std::to_string(k) +
                " after " + std::to_string(max_sweeps) +
                " sweeps (last residual " + std::to_string(sol.residual) + ")");

        // quadrature normalization and deterministic sign
        double qn = 0.0;
        for (size_t i = 0; i < n; ++i) qn += op.grid.weight(static_cast<int>(i)) * v[i] * v[i];
        kern::scal(1.0 / std::sqrt(qn), v.data(), n);
        fix_sign(v);
        sol.vector = std::move(v);
        out.push_back(std::move(sol));
    }
    return out;
}

}  // namespace qinv
