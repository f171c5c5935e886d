#pragma once

#include "qinv/grid.hpp"
#include "qinv/potential.hpp"
#include "qinv/units.hpp"

namespace qinv::hydrogen {

struct QuantumNumbers {
    int n = 1;
    int l = 0;
    int m = 0;

    static QuantumNumbers make(int n, int l, int m);  // validates, n <= 4
};

/// Momentum unit used throughout this module: p0 = 2*pi*hbar/a0.
constexpr double kP0InAtomicUnits = 6.283185307179586476925286766559;

/// Signed radial momentum amplitude F_nl(p) in atomic units (p in hbar/a0),
/// normalized so that the integral of F^2 p^2 dp over [0, inf) is 1.
double radial_amplitude_au(int n, int l, double p_au);

/// |F| with the momentum argument and the normalization both in p0 units.
double radial_momentum_amplitude(int n, int l, double p_r);

/// phi_p-integrated momentum-space density:
/// P(p_r, theta_p) = 2*pi * p_r^2 * sin(theta_p) * F^2 * |Y_lm|^2,
/// normalized over p_r in [0, inf), theta_p in [0, pi].
double pdf_2d(const QuantumNumbers& q, double p_r, double theta_p);

/// Same without the sin(theta_p) Jacobian (alternative plotting convention;
/// not normalized over dp_r dtheta_p).
double pdf_2d_no_jacobian(const QuantumNumbers& q, double p_r, double theta_p);

/// Exponent f = -ln P with analytic partials, for the flat-Cartesian
/// treatment of (p_r, theta_p).  valid=false where P is below floor.
struct Exponent2D {
    double f = 0.0;
    double fx = 0.0, fy = 0.0;    // d/dp_r, d/dtheta_p
    double fxx = 0.0, fyy = 0.0;  // second partials
    bool valid = false;
};
Exponent2D exponent_2d(const QuantumNumbers& q, double p_r, double theta_p, double floor_abs);

/// Inverse construction on the (p_r, theta_p) rectangle treated as flat
/// Cartesian coordinates; cells with P < floor_rel * max(P) are masked,
/// MinZero over the valid cells.
PotentialField potential_2d(const QuantumNumbers& q, const Grid2D& grid, const UnitSystem& units,
                            double floor_rel = 1e-12);

}  // namespace qinv::hydrogen
