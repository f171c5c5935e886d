#pragma once

#include <vector>

#include "qinv/distributions.hpp"
#include "qinv/potential.hpp"
#include "qinv/units.hpp"

namespace qinv {

/// Symmetric tridiagonal discretization of -(hbar^2/2m) d^2/dx^2 + V with
/// Dirichlet conditions just outside the grid.
struct Hamiltonian1D {
    Grid1D grid;
    std::vector<double> diag;  // n entries
    std::vector<double> off;   // n-1 entries, both triangles

    size_t dim() const { return diag.size(); }
    void apply(const double* x, double* y) const;
};

Hamiltonian1D build_hamiltonian_1d(const PotentialCurve& pot, const UnitSystem& units);

struct EigenSolution {
    double energy = 0.0;
    std::vector<double> vector;  // L2-normalized under trapezoid quadrature
    int iterations = 0;
    double residual = 0.0;  // ||Hv - Ev||_2 over the coefficient vector
};

/// The `count` algebraically smallest eigenpairs via Sturm-sequence bisection
/// plus inverse iteration.  Throws on non-convergence.
std::vector<EigenSolution> lowest_eigenpairs(const Hamiltonian1D& op, int count);

/// Number of eigenvalues strictly below `threshold` (Sturm count).
int eigenvalues_below(const Hamiltonian1D& op, double threshold);

/// Bound states below the potential's asymptotic value; the count must agree
/// between the given grid and its h/2 refinement or the result is rejected.
int count_bound_states(const DistributionSpec& spec, const Grid1D& grid, double threshold,
                       const UnitSystem& units);
int count_bound_states(const PotentialCurve& pot, double threshold, const UnitSystem& units);

struct RoundTripReport {
    double e_fd = 0.0;
    double e_exact = 0.0;
    double pdf_sup_error = 0.0;
    double order_estimate = 0.0;
    Grid1D solve_grid;  // window actually solved on (after support truncation)
};

/// Forward check of the inverse construction: derive the potential, truncate
/// to the window where P >= 1e-16 * max(P), eigensolve at h and h/2, and
/// compare the ground pair against the pdf and its energy.
RoundTripReport verify_roundtrip(const DistributionSpec& spec, const Grid1D& grid,
                                 const UnitSystem& units);

/// Implicit 5-point discretization on a rectangle, Dirichlet outside.
struct Hamiltonian2D {
    Grid2D grid;
    std::vector<double> diag;
    double cx = 0.0;  // hopping -cx between x-neighbours
    double cy = 0.0;

    size_t dim() const { return diag.size(); }
    void apply(const double* x, double* y) const;
};

Hamiltonian2D build_hamiltonian_2d(const PotentialField& field, const UnitSystem& units);

struct IterOpts {
    double tol_rel = 1e-8;
    int max_outer = 400;
    int max_cg = 20000;
};

/// Smallest eigenpair by shifted inverse power iteration (shift 0, conjugate
/// gradient inner solves, deterministic all-ones start).
EigenSolution lowest_eigenpair_2d(const Hamiltonian2D& op, const IterOpts& opts = {});

}  // namespace qinv
