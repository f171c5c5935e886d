#include "qinv/hydrogen.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <numbers>
#include <stdexcept>

namespace qinv::hydrogen {

namespace {

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

double factorial(int k) {
    double r = 1.0;
    for (int i = 2; i <= k; ++i) r *= static_cast<double>(i);
    return r;
}

/// Gegenbauer polynomial C_j^a(x) by the standard three-term recurrence.
double gegenbauer(int j, double a, double x) {
    if (j == 0) return 1.0;
    double c0 = 1.0, c1 = 2.0 * a * x;
    for (int i = 2; i <= j; ++i) {
        const double c2 =
            (2.0 * x * (static_cast<double>(i) + a - 1.0) * c1 -
             (static_cast<double>(i) + 2.0 * a - 2.0) * c0) /
            static_cast<double>(i);
        c0 = c1;
        c1 = c2;
    }
    return c1;
}

// d/dx C_j^a = 2a C_{j-1}^{a+1};  d^2/dx^2 C_j^a = 4a(a+1) C_{j-2}^{a+2}
double gegenbauer_d1(int j, double a, double x) {
    return (j >= 1) ? 2.0 * a * gegenbauer(j - 1, a + 1.0, x) : 0.0;
}
double gegenbauer_d2(int j, double a, double x) {
    return (j >= 2) ? 4.0 * a * (a + 1.0) * gegenbauer(j - 2, a + 2.0, x) : 0.0;
}

double amplitude_prefactor(int n, int l) {
    const double nn = static_cast<double>(n);
    return std::sqrt(2.0 / std::numbers::pi * factorial(n - l - 1) / factorial(n + l)) * nn * nn *
           std::pow(2.0, 2 * l + 2) * factorial(l);
}

/// d/dp ln|F_nl(p)| and its derivative, atomic units.  Returns false at the
/// zeros of F where the log-derivative blows up.
bool log_amplitude_derivs(int n, int l, double p, double& d1, double& d2) {
    const double nn = static_cast<double>(n);
    const int j = n - l - 1;
    const double a = static_cast<double>(l) + 1.0;
    const double s = nn * nn * p * p + 1.0;
    const double z = (nn * nn * p * p - 1.0) / s;
    const double cg = gegenbauer(j, a, z);
    if (cg == 0.0 || p == 0.0) return false;
    const double cg1 = gegenbauer_d1(j, a, z) / cg;
    const double cg2 = gegenbauer_d2(j, a, z) / cg;
    const double zp = 4.0 * nn * nn * p / (s * s);
    const double zpp = 4.0 * nn * nn * (1.0 - 3.0 * nn * nn * p * p) / (s * s * s);
    const double ll = static_cast<double>(l);
    d1 = ll / p - (ll + 2.0) * 2.0 * nn * nn * p / s + cg1 * zp;
    d2 = -ll / (p * p) - (ll + 2.0) * 2.0 * nn * nn * (1.0 - nn * nn * p * p) / (s * s) +
         (cg2 - cg1 * cg1) * zp * zp + cg1 * zpp;
    return true;
}

/// Coefficients of the Legendre polynomial P_l differentiated m times,
/// i.e. the polynomial G with P_l^m(x) = (1-x^2)^(m/2) G(x).
struct Poly {
    std::array<double, 5> c{};  // c[k] x^k, degree <= 4
    int deg = 0;

    double eval(double x) const {
        double r = 0.0;
        for (int k = deg; k >= 0; --k) r = r * x + c[static_cast<size_t>(k)];
        return r;
    }
    Poly derivative() const {
        Poly d;
        d.deg = std::max(0, deg - 1);
        for (int k = 1; k <= deg; ++k)
            d.c[static_cast<size_t>(k - 1)] = static_cast<double>(k) * c[static_cast<size_t>(k)];
        return d;
    }
};

Poly legendre_poly(int l) {
    // (l+1) P_{l+1} = (2l+1) x P_l - l P_{l-1}
    Poly p0;  // P_0 = 1
    p0.c[0] = 1.0;
    p0.deg = 0;
    if (l == 0) return p0;
    Poly p1;  // P_1 = x
    p1.c[1] = 1.0;
    p1.deg = 1;
    for (int k = 1; k < l; ++k) {
        Poly p2;
        p2.deg = p1.deg + 1;
        for (int i = 0; i <= p1.deg; ++i)
            p2.c[static_cast<size_t>(i + 1)] +=
                (2.0 * k + 1.0) / (k + 1.0) * p1.c[static_cast<size_t>(i)];
        for (int i = 0; i <= p0.deg; ++i)
            p2.c[static_cast<size_t>(i)] -= static_cast<double>(k) / (k + 1.0) *
                                            p0.c[static_cast<size_t>(i)];
        p0 = p1;
        p1 = p2;
    }
    return p1;
}

Poly assoc_legendre_part(int l, int m) {
    Poly g = legendre_poly(l);
    for (int i = 0; i < m; ++i) g = g.derivative();
    return g;
}

/// W(theta) = 2*pi*|Y_lm|^2*sin(theta), so that the theta-marginal of the
/// pdf integrates W over [0, pi] to exactly 1.
double theta_weight_constant(int l, int m) {
    const int am = std::abs(m);
    return std::numbers::pi * (2.0 * l + 1.0) * factorial(l - am) /
           (2.0 * std::numbers::pi * factorial(l + am));
    // = (2l+1)/2 * (l-|m|)!/(l+|m|)!
}

double theta_weight(int l, int m, double theta) {
    const int am = std::abs(m);
    const double st = std::sin(theta);
    const double g = assoc_legendre_part(l, am).eval(std::cos(theta));
    // |P_l^m|^2 = (1-x^2)^|m| G^2 = sin^(2|m|) G^2
    return theta_weight_constant(l, m) * std::pow(st, 2 * am + 1) * g * g;
}

}  // namespace

QuantumNumbers QuantumNumbers::make(int n, int l, int m) {
    if (n < 1 || n > 4) throw std::invalid_argument("hydrogen: require 1 <= n <= 4");
    if (l < 0 || l > n - 1) throw std::invalid_argument("hydrogen: require 0 <= l <= n-1");
    if (std::abs(m) > l) throw std::invalid_argument("hydrogen: require |m| <= l");
    return QuantumNumbers{n, l, m};
}

double radial_amplitude_au(int n, int l, double p_au) {
    if (n < 1 || l < 0 || l > n - 1) throw std::invalid_argument("hydrogen: bad quantum numbers");
    if (p_au < 0.0) throw std::domain_error("hydrogen: p must be non-negative");
    const double nn = static_cast<double>(n);
    const double s = nn * nn * p_au * p_au + 1.0;
    const double z = (nn * nn * p_au * p_au - 1.0) / s;
    return amplitude_prefactor(n, l) * std::pow(nn * p_au, l) / std::pow(s, l + 2) *
           gegenbauer(n - l - 1, static_cast<double>(l) + 1.0, z);
}

double radial_momentum_amplitude(int n, int l, double p_r) {
    const double c = std::pow(kP0InAtomicUnits, 1.5);
    return std::abs(c * radial_amplitude_au(n, l, p_r * kP0InAtomicUnits));
}

double pdf_2d(const QuantumNumbers& q, double p_r, double theta_p) {
    if (p_r < 0.0 || theta_p < 0.0 || theta_p > std::numbers::pi)
        throw std::domain_error("hydrogen pdf: arguments out of range");
    const double F = radial_momentum_amplitude(q.n, q.l, p_r);
    return p_r * p_r * F * F * theta_weight(q.l, q.m, theta_p);
}

double pdf_2d_no_jacobian(const QuantumNumbers& q, double p_r, double theta_p) {
    const double st = std::sin(theta_p);
    if (st <= 0.0) {
        // |Y_lm|^2 alone is finite at the poles; recover it from the G part
        const int am = std::abs(q.m);
        const double g = assoc_legendre_part(q.l, am).eval(std::cos(theta_p));
        const double ylm2 = theta_weight_constant(q.l, q.m) / (2.0 * std::numbers::pi) *
                            std::pow(st * st, am) * g * g;
        const double F = radial_momentum_amplitude(q.n, q.l, p_r);
        return 2.0 * std::numbers::pi * p_r * p_r * F * F * ylm2;
    }
    return pdf_2d(q, p_r, theta_p) / st;
}

Exponent2D exponent_2d(const QuantumNumbers& q, double p_r, double theta_p, double floor_abs) {
    Exponent2D e;
    const double P = pdf_2d(q, p_r, theta_p);
    if (!(P >= floor_abs) || !std::isfinite(P)) {
        e.f = e.fx = e.fy = e.fxx = e.fyy = kNaN;
        return e;
    }

    // radial part: f_q = -2 ln p_r - 2 ln|F0(p_r)| + const
    double d1, d2;
    if (!log_amplitude_derivs(q.n, q.l, p_r * kP0InAtomicUnits, d1, d2)) {
        e.f = e.fx = e.fy = e.fxx = e.fyy = kNaN;
        return e;
    }
    d1 *= kP0InAtomicUnits;  // chain rule into p0 units
    d2 *= kP0InAtomicUnits * kP0InAtomicUnits;
    e.fx = -2.0 / p_r - 2.0 * d1;
    e.fxx = 2.0 / (p_r * p_r) - 2.0 * d2;

    // angular part: f_t = -(2|m|+1) ln sin(theta) - 2 ln|G(cos theta)| + const
    const int am = std::abs(q.m);
    const Poly g = assoc_legendre_part(q.l, am);
    const Poly g1 = g.derivative();
    const Poly g2 = g1.derivative();
    const double ct = std::cos(theta_p), st = std::sin(theta_p);
    const double gv = g.eval(ct);
    if (gv == 0.0 || st == 0.0) {
        e.f = e.fx = e.fy = e.fxx = e.fyy = kNaN;
        return e;
    }
    const double r1 = g1.eval(ct) / gv;
    const double r2 = g2.eval(ct) / gv;
    const double mm = 2.0 * am + 1.0;
    e.fy = -(mm * ct / st - 2.0 * r1 * st);
    e.fyy = -(-mm / (st * st) + 2.0 * (r2 - r1 * r1) * st * st - 2.0 * r1 * ct);

    e.f = -std::log(P);
    e.valid = std::isfinite(e.f) && std::isfinite(e.fx) && std::isfinite(e.fy) &&
              std::isfinite(e.fxx) && std::isfinite(e.fyy);
    if (!e.valid) e.f = e.fx = e.fy = e.fxx = e.fyy = kNaN;
    return e;
}

PotentialField potential_2d(const QuantumNumbers& q, const Grid2D& grid, const UnitSystem& units,
                            double floor_rel) {
    const size_t sz = grid.size();
    std::vector<double> pdf(sz);
    double pmax = 0.0;
    for (int j = 0; j < grid.ny(); ++j)
        for (int i = 0; i < grid.nx(); ++i) {
            const double p = pdf_2d(q, grid.gx.x(i), grid.gy.x(j));
            pdf[grid.idx(i, j)] = p;
            pmax = std::max(pmax, p);
        }
    if (!(pmax > 0.0)) throw std::runtime_error("hydrogen potential: pdf vanishes on the grid");
    const double floor_abs = floor_rel * pmax;

    PotentialField out;
    out.grid = grid;
    out.values.assign(sz, 0.0);
    out.mask.assign(sz, 0);

    std::vector<double> raw(sz, kNaN);
    double vmin = std::numeric_limits<double>::infinity();
    size_t nvalid = 0;
    for (int j = 0; j < grid.ny(); ++j)
        for (int i = 0; i < grid.nx(); ++i) {
            const size_t k = grid.idx(i, j);
            if (pdf[k] < floor_abs) continue;
            const Exponent2D e = exponent_2d(q, grid.gx.x(i), grid.gy.x(j), floor_abs);
            if (!e.valid) continue;
            raw[k] = units.hbar2_over_4m *
                     (-(e.fxx + e.fyy) + 0.5 * (e.fx * e.fx + e.fy * e.fy));
            out.mask[k] = 1;
            vmin = std::min(vmin, raw[k]);
            ++nvalid;
        }
    if (nvalid == 0) throw std::runtime_error("hydrogen potential: no valid cells");

    out.energy = -vmin;
    out.offset = OffsetConvention::MinZero;
    for (size_t k = 0; k < sz; ++k)
        if (out.mask[k]) out.values[k] = raw[k] - vmin;
    return out;
}

}  // namespace qinv::hydrogen
