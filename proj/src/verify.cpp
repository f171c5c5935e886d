#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "qinv/eigen.hpp"
#include "qinv/inverse.hpp"

namespace qinv {

namespace {

constexpr double kSupportFloor = 1e-16;  // relative to max(P)

/// Largest contiguous node window around the pdf maximum where
/// P >= kSupportFloor * max(P); Dirichlet walls there are below every
/// tolerance the round-trip asserts.
Grid1D support_window(const DistributionSpec& spec, const Grid1D& grid) {
    const int n = grid.n;
    std::vector<double> p(static_cast<size_t>(n));
    int imax = 0;
    for (int i = 0; i < n; ++i) {
        p[static_cast<size_t>(i)] = spec.pdf(grid.x(i));
        if (p[static_cast<size_t>(i)] > p[static_cast<size_t>(imax)]) imax = i;
    }
    const double cut = kSupportFloor * p[static_cast<size_t>(imax)];
    int i0 = imax, i1 = imax;
    while (i0 > 0 && p[static_cast<size_t>(i0 - 1)] >= cut) --i0;
    while (i1 < n - 1 && p[static_cast<size_t>(i1 + 1)] >= cut) ++i1;
    if (i1 - i0 + 1 < 3) throw std::runtime_error("verify: pdf support narrower than the grid");
    return grid.subgrid(i0, i1);
}

double solve_ground(const DistributionSpec& spec, const Grid1D& g, const UnitSystem& units,
                    std::vector<double>* vec_out) {
    const PotentialCurve pot = potential_from_exponent(spec, g, units);
    if (pot.offset != OffsetConvention::MinZero)
        throw std::runtime_error("verify: potential unbounded below, round-trip not defined");
    const Hamiltonian1D op = build_hamiltonian_1d(pot, units);
    std::vector<EigenSolution> sols = lowest_eigenpairs(op, 1);
    if (vec_out) *vec_out = std::move(sols[0].vector);
    return sols[0].energy;
}

}  // namespace

RoundTripReport verify_roundtrip(const DistributionSpec& spec, const Grid1D& grid,
                                 const UnitSystem& units) {
    const Grid1D win = support_window(spec, grid);

    RoundTripReport rep;
    rep.solve_grid = win;
    rep.e_exact = potential_from_exponent(spec, win, units).energy;

    std::vector<double> v;
    rep.e_fd = solve_ground(spec, win, units, &v);

    double sup = 0.0;
    for (int i = 0; i < win.n; ++i)
        sup = std::max(sup, std::abs(v[static_cast<size_t>(i)] * v[static_cast<size_t>(i)] -
                                     spec.pdf(win.x(i))));
    rep.pdf_sup_error = sup;

    const double e_half = solve_ground(spec, win.refined(), units, nullptr);
    const double err_h = std::abs(rep.e_fd - rep.e_exact);
    const double err_h2 = std::abs(e_half - rep.e_exact);
    rep.order_estimate = (err_h2 > 0.0) ? std::log2(err_h / err_h2) : 2.0;
    return rep;
}

int count_bound_states(const PotentialCurve& pot, double threshold, const UnitSystem& units) {
    const Hamiltonian1D op = build_hamiltonian_1d(pot, units);
    return eigenvalues_below(op, threshold);
}

int count_bound_states(const DistributionSpec& spec, const Grid1D& grid, double threshold,
                       const UnitSystem& units) {
    const int c1 =
        count_bound_states(potential_from_exponent(spec, grid, units), threshold, units);
    const int c2 = count_bound_states(potential_from_exponent(spec, grid.refined(), units),
                                      threshold, units);
    if (c1 != c2)
        throw std::runtime_error("count_bound_states: count not stable under grid refinement (" +
                                 std::to_string(c1) + " vs " + std::to_string(c2) + ")");
    return c1;
}

}  // namespace qinv
