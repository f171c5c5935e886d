#include "qinv/inverse.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace qinv {

namespace {

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

bool has_table_energy(Family f) {
    switch (f) {
        case Family::Gaussian:
        case Family::Lorentzian:
        case Family::Gumbel:
        case Family::Logistic:
        case Family::Rayleigh:
        case Family::Chi:
            return true;
        default:
            return false;
    }
}

/// Families whose tabulated potential is bounded below everywhere.
bool bounded_below(const DistributionSpec& spec) {
    switch (spec.family()) {
        case Family::Gaussian:
        case Family::Lorentzian:
        case Family::Gumbel:
        case Family::Logistic:
        case Family::Chi:
            return true;
        case Family::Rayleigh:
            return false;  // -1/(2x^2) at the origin
        case Family::Beta:
            return beta_regime(spec.param("alpha"), spec.param("beta")).has_finite_minimum;
        case Family::Tabulated:
            return true;  // finite sample; MinZero over the sampled interior
    }
    return false;
}

void check_tabulated_alignment(const DistributionSpec& spec, const Grid1D& grid) {
    const Grid1D& tg = spec.table().grid();
    const double h = tg.h();
    if (std::abs(grid.h() - h) > 1e-12 * h)
        throw std::invalid_argument("tabulated pdf: grid spacing must match the sample spacing");
    const double off = (grid.a - tg.a) / h;
    if (std::abs(off - std::round(off)) > 1e-6)
        throw std::invalid_argument("tabulated pdf: grid nodes must align with the sample nodes");
    if (grid.a < tg.a - 1e-9 * h || grid.b > tg.b + 1e-9 * h)
        throw std::invalid_argument("tabulated pdf: grid extends outside the sample");
}

}  // namespace

double raw_potential(const DistributionSpec& spec, double x, const UnitSystem& units) {
    const ExponentEval e = spec.exponent(x);
    if (!e.valid) return kNaN;
    return units.hbar2_over_4m * (-e.fpp + 0.5 * e.fp * e.fp);
}

MinimumInfo refine_minimum(const std::function<double(double)>& fn, const Grid1D& grid,
                           double xtol) {
    int best = -1;
    double best_v = std::numeric_limits<double>::infinity();
    for (int i = 0; i < grid.n; ++i) {
        const double v = fn(grid.x(i));
        if (std::isfinite(v) && v < best_v) {
            best_v = v;
            best = i;
        }
    }
    if (best < 0) throw std::runtime_error("refine_minimum: no finite values on the grid");

    double lo = grid.x(std::max(0, best - 1));
    double hi = grid.x(std::min(grid.n - 1, best + 1));
    // Value comparisons cannot resolve a smooth minimum below ~sqrt(eps), so
    // stop the golden section there and finish with parabolic-vertex steps.
    const double golden_tol = std::max(xtol, 1e-6 * std::max(1.0, std::abs(grid.x(best))));
    constexpr double invphi = 0.6180339887498949;
    double x1 = hi - invphi * (hi - lo);
    double x2 = lo + invphi * (hi - lo);
    double f1 = fn(x1), f2 = fn(x2);
    while (hi - lo > golden_tol) {
        if (f1 < f2) {
            hi = x2;
            x2 = x1;
            f2 = f1;
            x1 = hi - invphi * (hi - lo);
            f1 = fn(x1);
        } else {
            lo = x1;
            x1 = x2;
            f1 = f2;
            x2 = lo + invphi * (hi - lo);
            f2 = fn(x2);
        }
    }
    double xm = 0.5 * (lo + hi);
    const double delta = 1e-5 * std::max(1.0, std::abs(xm));
    if (xm - delta >= grid.a && xm + delta <= grid.b) {
        for (int it = 0; it < 3; ++it) {
            const double fa = fn(xm - delta), fb = fn(xm), fc = fn(xm + delta);
            const double denom = fa - 2.0 * fb + fc;
            if (!(denom > 0.0)) break;
            double step = 0.5 * delta * (fa - fc) / denom;
            step = std::clamp(step, -delta, delta);
            if (xm + step - delta < grid.a || xm + step + delta > grid.b) break;
            xm += step;
            if (std::abs(step) < 0.1 * xtol) break;
        }
    }
    const double vm = fn(xm);
    // keep the best point ever seen in case the bracket was one-sided
    if (best_v < vm) return MinimumInfo{grid.x(best), best_v};
    return MinimumInfo{xm, vm};
}

PotentialCurve potential_from_exponent(const DistributionSpec& spec, const Grid1D& grid,
                                       const UnitSystem& units) {
    if (!spec.domain().contains(grid.a) || !spec.domain().contains(grid.b))
        throw std::domain_error("potential_from_exponent: grid outside the pdf domain");
    if (spec.family() == Family::Tabulated) check_tabulated_alignment(spec, grid);

    PotentialCurve out;
    out.grid = grid;
    out.values.assign(static_cast<size_t>(grid.n), 0.0);
    out.mask.assign(static_cast<size_t>(grid.n), 0);

    std::vector<double> raw(static_cast<size_t>(grid.n), kNaN);
    int nvalid = 0;
    for (int i = 0; i < grid.n; ++i) {
        const double r = raw_potential(spec, grid.x(i), units);
        if (std::isfinite(r)) {
            raw[static_cast<size_t>(i)] = r;
            out.mask[static_cast<size_t>(i)] = 1;
            ++nvalid;
        }
    }
    if (nvalid == 0)
        throw std::runtime_error("potential_from_exponent: no valid cells on the grid");

    double shift = 0.0;
    if (spec.closed_form() && has_table_energy(spec.family()) && bounded_below(spec)) {
        // the tabulated E0 makes min V exactly zero
        out.energy = ground_energy(spec, units);
        out.offset = OffsetConvention::MinZero;
        shift = out.energy;
    } else if (!bounded_below(spec)) {
        out.energy = 0.0;
        out.offset = OffsetConvention::RawTableConstant;
    } else if (spec.family() == Family::Tabulated) {
        double m = std::numeric_limits<double>::infinity();
        for (int i = 0; i < grid.n; ++i)
            if (out.mask[static_cast<size_t>(i)]) m = std::min(m, raw[static_cast<size_t>(i)]);
        out.energy = -m;
        out.offset = OffsetConvention::MinZero;
        shift = -m;
    } else {
        // bounded beta: locate the true minimum of the analytic expression
        const MinimumInfo m = refine_minimum(
            [&](double x) { return raw_potential(spec, x, units); }, grid);
        out.energy = -m.value;
        out.offset = OffsetConvention::MinZero;
        shift = -m.value;
    }

    for (int i = 0; i < grid.n; ++i) {
        const size_t k = static_cast<size_t>(i);
        out.values[k] = out.mask[k] ? raw[k] + shift : 0.0;
    }
    return out;
}

double closed_form_potential(const DistributionSpec& spec, double x, const UnitSystem& units) {
    const double u = units.hbar2_over_4m;
    switch (spec.family()) {
        case Family::Gaussian: {
            const double s = spec.param("sigma"), d = x - spec.param("x0");
            return u * d * d / (2.0 * s * s * s * s);
        }
        case Family::Lorentzian: {
            const double g = spec.param("gamma"), d = x - spec.param("x0");
            const double q = d * d + g * g;
            return u * (6.0 * d * d / (q * q) - 2.0 / q + 2.0 / (g * g));
        }
        case Family::Gumbel: {
            const double b = spec.param("beta"), z = (x - spec.param("x0")) / b;
            const double y = std::exp(-z), w = 1.0 - y;
            return u * (0.5 * w * w - y + 1.5) / (b * b);
        }
        case Family::Logistic: {
            const double s = spec.param("s");
            const double T = std::tanh((x - spec.param("x0")) / (2.0 * s));
            return u * T * T / (s * s);
        }
        case Family::Rayleigh: {
            const double s = spec.param("sigma");
            if (x == 0.0) throw std::domain_error("rayleigh potential is singular at x = 0");
            return u * 0.5 * (x * x / (s * s * s * s) - 1.0 / (x * x));
        }
        case Family::Chi: {
            const double k = spec.param("k"), s = spec.param("sigma");
            const double c = (k - 1.0) * (k - 3.0);
            // at k = 3 the centrifugal term vanishes identically
            if (c == 0.0) return u * x * x / (2.0 * s * s * s * s);
            if (x == 0.0) throw std::domain_error("chi potential is singular at x = 0");
            return u * (x * x / (2.0 * s * s * s * s) + c / (2.0 * x * x) -
                        std::sqrt(c) / (s * s));
        }
        case Family::Beta: {
            const double a = spec.param("alpha"), b = spec.param("beta");
            if (x == 0.0 || x == 1.0)
                throw std::domain_error("beta potential is singular at the interval ends");
            const double num = (a + b - 2.0) * (a + b - 4.0) * x * x -
                               2.0 * x * (a - 1.0) * (a + b - 4.0) +
                               (a * a - 4.0 * a + 3.0);
            const double om = 1.0 - x;
            return u * num / (2.0 * x * x * om * om);
        }
        case Family::Tabulated:
            throw std::domain_error("tabulated pdfs have no closed-form potential");
    }
    return kNaN;
}

double ground_energy(const DistributionSpec& spec, const UnitSystem& units) {
    const double u = units.hbar2_over_4m;
    switch (spec.family()) {
        case Family::Gaussian: {
            const double s = spec.param("sigma");
            return u / (s * s);
        }
        case Family::Lorentzian: {
            const double g = spec.param("gamma");
            return 2.0 * u / (g * g);
        }
        case Family::Gumbel: {
            const double b = spec.param("beta");
            return 1.5 * u / (b * b);
        }
        case Family::Logistic: {
            const double s = spec.param("s");
            return 0.5 * u / (s * s);
        }
        case Family::Rayleigh: {
            const double s = spec.param("sigma");
            return 2.0 * u / (s * s);
        }
        case Family::Chi: {
            const double k = spec.param("k"), s = spec.param("sigma");
            return u * (k - std::sqrt((k - 1.0) * (k - 3.0))) / (s * s);
        }
        default:
            throw std::domain_error(
                "ground energy has no closed form for this family (see beta_regime)");
    }
}

double consistency_check(const DistributionSpec& spec, const Grid1D& grid,
                         const UnitSystem& units) {
    if (!spec.closed_form())
        throw std::domain_error("consistency_check applies to the closed-form families");
    const bool fitted =
        (spec.family() == Family::Rayleigh || spec.family() == Family::Beta);
    const double e0 = fitted ? 0.0 : ground_energy(spec, units);

    std::vector<double> diff;
    diff.reserve(static_cast<size_t>(grid.n));
    for (int i = 0; i < grid.n; ++i) {
        const double x = grid.x(i);
        const double r = raw_potential(spec, x, units);
        if (!std::isfinite(r)) continue;
        diff.push_back(closed_form_potential(spec, x, units) - e0 - r);
    }
    if (diff.empty()) throw std::runtime_error("consistency_check: no valid cells");

    double c = 0.0;
    if (fitted) {
        const auto [lo, hi] = std::minmax_element(diff.begin(), diff.end());
        c = 0.5 * (*lo + *hi);
    }
    double dev = 0.0;
    for (double d : diff) dev = std::max(dev, std::abs(d - c));
    return dev;
}

GpeDerivation gpe_derive(const DistributionSpec& spec, const Grid1D& grid, double gN,
                         const UnitSystem& units) {
    PotentialCurve v_tise = potential_from_exponent(spec, grid, units);
    if (v_tise.offset != OffsetConvention::MinZero)
        throw std::runtime_error(
            "gpe_derive: potential is unbounded below, no minimum to anchor mu");

    const double e0 = v_tise.energy;
    const int n = grid.n;

    std::vector<double> density(static_cast<size_t>(n), 0.0);
    for (int i = 0; i < n; ++i) density[static_cast<size_t>(i)] = spec.pdf(grid.x(i));

    auto shifted = [&](std::vector<double> vals, double energy) {
        PotentialCurve c;
        c.grid = grid;
        c.values = std::move(vals);
        c.mask = v_tise.mask;
        c.energy = energy;
        c.offset = v_tise.offset;
        return c;
    };

    std::vector<double> vtp(static_cast<size_t>(n));
    for (int i = 0; i < n; ++i) {
        const size_t k = static_cast<size_t>(i);
        vtp[k] = v_tise.mask[k] ? v_tise.values[k] + gN * density[k] : 0.0;
    }

    double mu, min_loc;
    if (gN == 0.0) {
        // v_tilde_paper == v_tise whose minimum is zero by construction
        mu = e0;
        min_loc = refine_minimum([&](double x) { return raw_potential(spec, x, units); }, grid).x;
    } else if (spec.closed_form()) {
        const MinimumInfo m = refine_minimum(
            [&](double x) { return raw_potential(spec, x, units) + e0 + gN * spec.pdf(x); },
            grid);
        mu = e0 - m.value;
        min_loc = m.x;
    } else {
        int best = -1;
        double best_v = std::numeric_limits<double>::infinity();
        for (int i = 0; i < n; ++i) {
            const size_t k = static_cast<size_t>(i);
            if (v_tise.mask[k] && vtp[k] < best_v) {
                best_v = vtp[k];
                best = i;
            }
        }
        mu = e0 - best_v;
        min_loc = grid.x(best);
    }

    GpeDerivation d{spec, gN, mu, min_loc, PotentialCurve{}, PotentialCurve{},
                    PotentialCurve{}, PotentialCurve{}};

    std::vector<double> veff(static_cast<size_t>(n)), vext(static_cast<size_t>(n));
    for (int i = 0; i < n; ++i) {
        const size_t k = static_cast<size_t>(i);
        if (!v_tise.mask[k]) {
            veff[k] = vext[k] = 0.0;
            continue;
        }
        veff[k] = v_tise.values[k] + (mu - e0);
        vext[k] = veff[k] - gN * density[k];
    }

    d.v_tilde_paper = shifted(std::move(vtp), mu);
    d.v_tilde_eff = shifted(std::move(veff), mu);
    d.v_ext_selfconsistent = shifted(std::move(vext), mu);
    d.v_tise = std::move(v_tise);
    return d;
}

double gpe_residual_report(const GpeDerivation& deriv, ResidualKind which,
                           const UnitSystem& units) {
    const DistributionSpec& spec = deriv.spec;
    const Grid1D& grid = deriv.v_tise.grid;
    const double u = units.hbar2_over_4m;

    // quadrature normalization of psi = sqrt(P)
    double norm2 = 0.0;
    for (int i = 0; i < grid.n; ++i) norm2 += grid.weight(i) * spec.pdf(grid.x(i));
    const double inv_norm = 1.0 / std::sqrt(norm2);

    const PotentialCurve& vt =
        (which == ResidualKind::PaperTilde) ? deriv.v_tilde_paper : deriv.v_tilde_eff;

    double sup = 0.0;
    for (int i = 0; i < grid.n; ++i) {
        const size_t k = static_cast<size_t>(i);
        if (!deriv.v_tise.mask[k]) continue;
        const double x = grid.x(i);
        const ExponentEval e = spec.exponent(x);
        if (!e.valid) continue;
        const double psi = std::sqrt(spec.pdf(x)) * inv_norm;
        // -2u psi'' = (u f'' - u f'^2 / 2) psi
        const double r =
            psi * std::abs(u * e.fpp - 0.5 * u * e.fp * e.fp + vt.values[k] - deriv.mu);
        sup = std::max(sup, r);
    }
    return sup;
}

BetaRegime beta_regime(double alpha, double beta) {
    if (!(alpha > 0.0) || !(beta > 0.0))
        throw std::invalid_argument("beta_regime: parameters must be strictly positive");

    auto classify = [](double p) {
        if ((p > 0.0 && p < 1.0) || p > 3.0) return BetaRegime::Endpoint::WallPlusInfinity;
        if (p > 1.0 && p < 3.0) return BetaRegime::Endpoint::DivergesMinusInfinity;
        return BetaRegime::Endpoint::Finite;  // p == 1 or p == 3
    };

    BetaRegime r;
    r.at_zero = classify(alpha);
    r.at_one = classify(beta);
    const bool both_low = alpha < 1.0 && beta < 1.0;
    const bool both_high = alpha > 3.0 && beta > 3.0;
    r.has_finite_minimum = both_low || both_high;
    return r;
}

PotentialField compose_separable_2d(const DistributionSpec& specx, const DistributionSpec& specy,
                                    const Grid2D& grid, const UnitSystem& units) {
    const PotentialCurve vx = potential_from_exponent(specx, grid.gx, units);
    const PotentialCurve vy = potential_from_exponent(specy, grid.gy, units);

    PotentialField f;
    f.grid = grid;
    f.values.assign(grid.size(), 0.0);
    f.mask.assign(grid.size(), 0);
    if (vx.offset == OffsetConvention::MinZero && vy.offset == OffsetConvention::MinZero) {
        f.offset = OffsetConvention::MinZero;
        f.energy = vx.energy + vy.energy;
    } else {
        f.offset = OffsetConvention::RawTableConstant;
        f.energy = 0.0;
    }

    for (int j = 0; j < grid.ny(); ++j) {
        for (int i = 0; i < grid.nx(); ++i) {
            const size_t k = grid.idx(i, j);
            const size_t ki = static_cast<size_t>(i), kj = static_cast<size_t>(j);
            if (vx.mask[ki] && vy.mask[kj]) {
                f.mask[k] = 1;
                f.values[k] = vx.values[ki] + vy.values[kj];
            }
        }
    }
    return f;
}

}  // namespace qinv
