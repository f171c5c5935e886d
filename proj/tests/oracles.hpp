#pragma once

// Test-only numerical oracles, independent of the library code paths they
// check: Richardson-extrapolated central differences, adaptive Simpson
// quadrature, and the position-space Bessel transform for the hydrogen
// momentum amplitudes.

#include <cmath>
#include <functional>
#include <stdexcept>

namespace oracles {

/// d/dx f by central differences with Richardson extrapolation.
inline double derivative(const std::function<double(double)>& f, double x, double h = 1e-4) {
    auto d = [&](double hh) { return (f(x + hh) - f(x - hh)) / (2.0 * hh); };
    const double d1 = d(h), d2 = d(0.5 * h);
    return (4.0 * d2 - d1) / 3.0;
}

/// Adaptive Simpson quadrature to absolute tolerance tol.
inline double simpson_rec(const std::function<double(double)>& f, double a, double b, double fa,
                          double fm, double fb, double whole, double tol, int depth) {
    const double m = 0.5 * (a + b);
    const double lm = 0.5 * (a + m), rm = 0.5 * (m + b);
    const double flm = f(lm), frm = f(rm);
    const double left = (m - a) / 6.0 * (fa + 4.0 * flm + fm);
    const double right = (b - m) / 6.0 * (fm + 4.0 * frm + fb);
    if (depth <= 0 || std::abs(left + right - whole) <= 15.0 * tol)
        return left + right + (left + right - whole) / 15.0;
    return simpson_rec(f, a, m, fa, flm, fm, left, 0.5 * tol, depth - 1) +
           simpson_rec(f, m, b, fm, frm, fb, right, 0.5 * tol, depth - 1);
}

inline double integrate(const std::function<double(double)>& f, double a, double b,
                        double tol = 1e-12, int depth = 40) {
    const double m = 0.5 * (a + b);
    const double fa = f(a), fm = f(m), fb = f(b);
    const double whole = (b - a) / 6.0 * (fa + 4.0 * fm + fb);
    return simpson_rec(f, a, b, fa, fm, fb, whole, tol, depth);
}

/// Oscillatory-safe variant: split [a, b] into `pieces` panels first.
inline double integrate_panels(const std::function<double(double)>& f, double a, double b,
                               int pieces, double tol = 1e-12) {
    double s = 0.0;
    const double w = (b - a) / pieces;
    for (int i = 0; i < pieces; ++i)
        s += integrate(f, a + i * w, a + (i + 1) * w, tol / pieces);
    return s;
}

/// Generalized Laguerre polynomial L_k^alpha(x) by recurrence.
inline double laguerre(int k, double alpha, double x) {
    if (k == 0) return 1.0;
    double l0 = 1.0, l1 = 1.0 + alpha - x;
    for (int i = 2; i <= k; ++i) {
        const double l2 =
            ((2.0 * i - 1.0 + alpha - x) * l1 - (i - 1.0 + alpha) * l0) / static_cast<double>(i);
        l0 = l1;
        l1 = l2;
    }
    return l1;
}

inline double factorial(int k) {
    double r = 1.0;
    for (int i = 2; i <= k; ++i) r *= i;
    return r;
}

/// Textbook position-space radial function R_nl(r), atomic units.
inline double hydrogen_radial_position(int n, int l, double r) {
    const double nn = n;
    const double rho = 2.0 * r / nn;
    const double norm = std::sqrt(std::pow(2.0 / nn, 3) * factorial(n - l - 1) /
                                  (2.0 * nn * factorial(n + l)));
    return norm * std::exp(-r / nn) * std::pow(rho, l) * laguerre(n - l - 1, 2.0 * l + 1.0, rho);
}

/// F_nl(p) = sqrt(2/pi) * int_0^inf r^2 j_l(p r) R_nl(r) dr  (atomic units).
/// The integrand oscillates with period 2*pi/p, so panel the range.
inline double hydrogen_momentum_bessel_transform(int n, int l, double p_au) {
    const double rmax = 25.0 * n + 40.0;
    const int panels = std::max(32, static_cast<int>(rmax * std::max(p_au, 0.5)));
    auto integrand = [&](double r) {
        return r * r * std::sph_bessel(static_cast<unsigned>(l), p_au * r) *
               hydrogen_radial_position(n, l, r);
    };
    return std::sqrt(2.0 / M_PI) * integrate_panels(integrand, 0.0, rmax, panels, 1e-13);
}

}  // namespace oracles
