#include "qinv/distributions.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <stdexcept>

namespace qinv {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();
constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

ExponentEval invalid_eval() { return ExponentEval{kNaN, kNaN, kNaN, false}; }

ExponentEval make_eval(double f, double fp, double fpp) {
    if (!std::isfinite(f) || !std::isfinite(fp) || !std::isfinite(fpp)) return invalid_eval();
    return ExponentEval{f, fp, fpp, true};
}

void require_positive(double v, const char* name) {
    if (!(v > 0.0)) throw std::invalid_argument(std::string(name) + " must be strictly positive");
}

}  // namespace

std::string family_name(Family f) {
    switch (f) {
        case Family::Gaussian: return "gaussian";
        case Family::Lorentzian: return "lorentzian";
        case Family::Gumbel: return "gumbel";
        case Family::Logistic: return "logistic";
        case Family::Rayleigh: return "rayleigh";
        case Family::Chi: return "chi";
        case Family::Beta: return "beta";
        case Family::Tabulated: return "tabulated";
    }
    return "?";
}

// ---------------------------------------------------------------------------
// TabulatedPdf

TabulatedPdf::TabulatedPdf(Grid1D grid, std::vector<double> values, double floor_rel)
    : grid_(grid), values_(std::move(values)), floor_rel_(floor_rel) {
    if (values_.size() != static_cast<size_t>(grid_.n))
        throw std::invalid_argument("TabulatedPdf: value count does not match grid");
    if (!(floor_rel_ > 0.0)) throw std::invalid_argument("TabulatedPdf: floor must be positive");
    double vmax = 0.0;
    for (double v : values_) {
        if (!std::isfinite(v) || v < 0.0)
            throw std::invalid_argument("TabulatedPdf: values must be finite and non-negative");
        vmax = std::max(vmax, v);
    }
    if (vmax == 0.0) throw std::invalid_argument("TabulatedPdf: all values are zero");
    floor_abs_ = floor_rel_ * vmax;
}

bool TabulatedPdf::cell_valid(int i) const {
    return values_[static_cast<size_t>(i)] >= floor_abs_;
}

double TabulatedPdf::raw_mass() const {
    double s = 0.0;
    for (int i = 0; i < grid_.n; ++i) s += grid_.weight(i) * values_[static_cast<size_t>(i)];
    return s;
}

TabulatedPdf TabulatedPdf::normalized() const {
    const double mass = raw_mass();
    if (!(mass > 0.0) || !std::isfinite(mass))
        throw std::runtime_error("TabulatedPdf: non-integrable sample, cannot normalize");
    std::vector<double> scaled(values_);
    for (double& v : scaled) v /= mass;
    return TabulatedPdf(grid_, std::move(scaled), floor_rel_);
}

int TabulatedPdf::nearest_node(double x) const {
    const double t = (x - grid_.a) / grid_.h();
    int i = static_cast<int>(std::lround(t));
    return std::clamp(i, 0, grid_.n - 1);
}

double TabulatedPdf::value_at(double x) const {
    if (x < grid_.a || x > grid_.b) throw std::domain_error("TabulatedPdf: x outside grid");
    const double t = (x - grid_.a) / grid_.h();
    const int i = std::clamp(static_cast<int>(std::floor(t)), 0, grid_.n - 2);
    const double frac = t - static_cast<double>(i);
    const double v0 = values_[static_cast<size_t>(i)];
    const double v1 = values_[static_cast<size_t>(i) + 1];
    return v0 + frac * (v1 - v0);
}

ExponentEval TabulatedPdf::exponent_at_node(int i) const {
    const int n = grid_.n;
    if (i < 0 || i >= n) throw std::domain_error("TabulatedPdf: node index out of range");
    const double h = grid_.h();

    auto lp = [&](int j) -> double {
        const double v = values_[static_cast<size_t>(j)];
        return (v >= floor_abs_) ? std::log(v) : kNaN;
    };

    const double f0 = lp(i);
    if (!std::isfinite(f0)) return invalid_eval();
    const double f = -f0;

    // Interior with the full 5-point window: central differences at h and 2h,
    // combined by one Richardson step.
    if (i >= 2 && i <= n - 3) {
        const double fm2 = lp(i - 2), fm1 = lp(i - 1), fp1 = lp(i + 1), fp2 = lp(i + 2);
        if (std::isfinite(fm2) && std::isfinite(fm1) && std::isfinite(fp1) && std::isfinite(fp2)) {
            const double d_h = (fp1 - fm1) / (2.0 * h);
            const double d_2h = (fp2 - fm2) / (4.0 * h);
            const double s_h = (fp1 - 2.0 * f0 + fm1) / (h * h);
            const double s_2h = (fp2 - 2.0 * f0 + fm2) / (4.0 * h * h);
            return make_eval(f, -(4.0 * d_h - d_2h) / 3.0, -(4.0 * s_h - s_2h) / 3.0);
        }
    }
    // One node from the edge: plain central differences.
    if (i >= 1 && i <= n - 2) {
        const double fm1 = lp(i - 1), fp1 = lp(i + 1);
        if (std::isfinite(fm1) && std::isfinite(fp1)) {
            const double d = (fp1 - fm1) / (2.0 * h);
            const double s = (fp1 - 2.0 * f0 + fm1) / (h * h);
            return make_eval(f, -d, -s);
        }
    }
    // Edges (and interior nodes next to masked cells): second-order one-sided
    // stencils, preferring the direction away from the nearer boundary.
    const int first_dir = (i <= n / 2) ? +1 : -1;
    for (int dir : {first_dir, -first_dir}) {
        if ((dir > 0 && i + 3 >= n) || (dir < 0 && i - 3 < 0)) continue;
        const double f1 = lp(i + dir), f2 = lp(i + 2 * dir), f3 = lp(i + 3 * dir);
        if (std::isfinite(f1) && std::isfinite(f2) && std::isfinite(f3)) {
            const double d = static_cast<double>(dir) * (-3.0 * f0 + 4.0 * f1 - f2) / (2.0 * h);
            const double s = (2.0 * f0 - 5.0 * f1 + 4.0 * f2 - f3) / (h * h);
            return make_eval(f, -d, -s);
        }
    }
    return invalid_eval();
}

// ---------------------------------------------------------------------------
// DistributionSpec

DistributionSpec::DistributionSpec(Family fam, std::map<std::string, double> params, Domain dom)
    : family_(fam), params_(std::move(params)), domain_(dom) {}

DistributionSpec::DistributionSpec(TabulatedPdf pdf)
    : family_(Family::Tabulated),
      domain_(Domain{pdf.grid().a, pdf.grid().b}),
      table_(std::make_shared<TabulatedPdf>(std::move(pdf))) {
    norm_ = 1.0 / table_->raw_mass();
    if (!std::isfinite(norm_) || !(norm_ > 0.0))
        throw std::runtime_error("tabulated pdf: non-integrable input");
}

DistributionSpec DistributionSpec::gaussian(double sigma, double x0) {
    require_positive(sigma, "sigma");
    return DistributionSpec(Family::Gaussian, {{"sigma", sigma}, {"x0", x0}},
                            Domain{-kInf, kInf});
}

DistributionSpec DistributionSpec::lorentzian(double gamma, double x0) {
    require_positive(gamma, "gamma");
    return DistributionSpec(Family::Lorentzian, {{"gamma", gamma}, {"x0", x0}},
                            Domain{-kInf, kInf});
}

DistributionSpec DistributionSpec::gumbel(double beta_scale, double x0) {
    require_positive(beta_scale, "beta");
    return DistributionSpec(Family::Gumbel, {{"beta", beta_scale}, {"x0", x0}},
                            Domain{-kInf, kInf});
}

DistributionSpec DistributionSpec::logistic(double s, double x0) {
    require_positive(s, "s");
    return DistributionSpec(Family::Logistic, {{"s", s}, {"x0", x0}}, Domain{-kInf, kInf});
}

DistributionSpec DistributionSpec::rayleigh(double sigma) {
    require_positive(sigma, "sigma");
    return DistributionSpec(Family::Rayleigh, {{"sigma", sigma}}, Domain{0.0, kInf});
}

DistributionSpec DistributionSpec::chi(double k, double sigma) {
    require_positive(sigma, "sigma");
    if (!(k >= 3.0)) throw std::invalid_argument("chi: k must be >= 3");
    return DistributionSpec(Family::Chi, {{"k", k}, {"sigma", sigma}}, Domain{0.0, kInf});
}

DistributionSpec DistributionSpec::beta(double alpha, double beta) {
    require_positive(alpha, "alpha");
    require_positive(beta, "beta");
    return DistributionSpec(Family::Beta, {{"alpha", alpha}, {"beta", beta}}, Domain{0.0, 1.0});
}

DistributionSpec DistributionSpec::tabulated(TabulatedPdf pdf) {
    return DistributionSpec(std::move(pdf));
}

double DistributionSpec::param(const std::string& name) const {
    auto it = params_.find(name);
    if (it == params_.end())
        throw std::out_of_range("DistributionSpec: no parameter '" + name + "'");
    return it->second;
}

const TabulatedPdf& DistributionSpec::table() const {
    if (!table_) throw std::logic_error("DistributionSpec: not a tabulated pdf");
    return *table_;
}

void DistributionSpec::require_in_domain(double x) const {
    if (!domain_.contains(x))
        throw std::domain_error("x = " + std::to_string(x) + " outside the domain of " +
                                family_name(family_));
}

double DistributionSpec::pdf(double x) const {
    require_in_domain(x);
    switch (family_) {
        case Family::Gaussian: {
            const double s = param("sigma"), t = (x - param("x0")) / s;
            return std::exp(-0.5 * t * t) / (s * std::sqrt(2.0 * std::numbers::pi));
        }
        case Family::Lorentzian: {
            const double g = param("gamma"), d = x - param("x0");
            return g / (std::numbers::pi * (d * d + g * g));
        }
        case Family::Gumbel: {
            const double b = param("beta"), z = (x - param("x0")) / b;
            return std::exp(-(z + std::exp(-z))) / b;
        }
        case Family::Logistic: {
            const double s = param("s"), t = (x - param("x0")) / (2.0 * s);
            const double sech = 1.0 / std::cosh(t);
            return sech * sech / (4.0 * s);
        }
        case Family::Rayleigh: {
            const double s = param("sigma");
            return (x / (s * s)) * std::exp(-x * x / (2.0 * s * s));
        }
        case Family::Chi: {
            const double k = param("k"), s = param("sigma");
            if (x == 0.0) return 0.0;  // k >= 3 so x^(k-1) vanishes
            const double lognorm =
                std::log(s) + 0.5 * (k - 2.0) * std::numbers::ln2 + std::lgamma(0.5 * k);
            return std::exp((k - 1.0) * std::log(x / s) - x * x / (2.0 * s * s) - lognorm);
        }
        case Family::Beta: {
            const double a = param("alpha"), b = param("beta");
            const double logB = std::lgamma(a) + std::lgamma(b) - std::lgamma(a + b);
            if (x == 0.0 || x == 1.0) {
                // limit value at the closed endpoints: 0, finite, or +inf
                const double e = (x == 0.0) ? a - 1.0 : b - 1.0;
                if (e > 0.0) return 0.0;
                if (e == 0.0) return std::exp(-logB);
                return kInf;
            }
            return std::exp((a - 1.0) * std::log(x) + (b - 1.0) * std::log1p(-x) - logB);
        }
        case Family::Tabulated:
            return norm_ * table_->value_at(x);
    }
    return kNaN;
}

ExponentEval DistributionSpec::exponent(double x) const {
    require_in_domain(x);
    switch (family_) {
        case Family::Gaussian: {
            const double s = param("sigma"), d = x - param("x0");
            const double f = 0.5 * d * d / (s * s) +
                             std::log(s * std::sqrt(2.0 * std::numbers::pi));
            return make_eval(f, d / (s * s), 1.0 / (s * s));
        }
        case Family::Lorentzian: {
            const double g = param("gamma"), d = x - param("x0");
            const double q = d * d + g * g;
            const double f = std::log(std::numbers::pi * q / g);
            return make_eval(f, 2.0 * d / q, 2.0 * (g * g - d * d) / (q * q));
        }
        case Family::Gumbel: {
            const double b = param("beta"), z = (x - param("x0")) / b;
            const double y = std::exp(-z);
            const double f = z + y + std::log(b);
            return make_eval(f, (1.0 - y) / b, y / (b * b));
        }
        case Family::Logistic: {
            const double s = param("s"), t = (x - param("x0")) / (2.0 * s);
            const double T = std::tanh(t);
            double f;
            // 2 ln cosh(t) without overflow for large |t|
            const double at = std::abs(t);
            if (at > 20.0)
                f = 2.0 * (at + std::log1p(std::exp(-2.0 * at)) - std::numbers::ln2) +
                    std::log(4.0 * s);
            else
                f = 2.0 * std::log(std::cosh(t)) + std::log(4.0 * s);
            return make_eval(f, T / s, (1.0 - T * T) / (2.0 * s * s));
        }
        case Family::Rayleigh: {
            const double s = param("sigma");
            if (x == 0.0) return invalid_eval();  // P = 0 at the wall
            const double f = -std::log(x) + 0.5 * x * x / (s * s) + 2.0 * std::log(s);
            return make_eval(f, -1.0 / x + x / (s * s), 1.0 / (x * x) + 1.0 / (s * s));
        }
        case Family::Chi: {
            const double k = param("k"), s = param("sigma");
            if (x == 0.0) return invalid_eval();
            const double lognorm =
                std::log(s) + 0.5 * (k - 2.0) * std::numbers::ln2 + std::lgamma(0.5 * k);
            const double f = -(k - 1.0) * std::log(x / s) + 0.5 * x * x / (s * s) + lognorm;
            return make_eval(f, -(k - 1.0) / x + x / (s * s),
                             (k - 1.0) / (x * x) + 1.0 / (s * s));
        }
        case Family::Beta: {
            const double a = param("alpha"), b = param("beta");
            if (x == 0.0 || x == 1.0) return invalid_eval();
            const double logB = std::lgamma(a) + std::lgamma(b) - std::lgamma(a + b);
            const double f = -(a - 1.0) * std::log(x) - (b - 1.0) * std::log1p(-x) + logB;
            const double u = 1.0 - x;
            return make_eval(f, -(a - 1.0) / x + (b - 1.0) / u,
                             (a - 1.0) / (x * x) + (b - 1.0) / (u * u));
        }
        case Family::Tabulated:
            return table_->exponent_at_node(table_->nearest_node(x));
    }
    return invalid_eval();
}

double DistributionSpec::normalization() const { return norm_; }

TabulatedPdf DistributionSpec::sample_on_grid(const Grid1D& grid) const {
    if (!domain_.contains(grid.a) || !domain_.contains(grid.b))
        throw std::domain_error("sample_on_grid: grid extends outside the domain of " +
                                family_name(family_));
    std::vector<double> vals(static_cast<size_t>(grid.n));
    for (int i = 0; i < grid.n; ++i) {
        const double p = pdf(grid.x(i));
        if (!std::isfinite(p))
            throw std::domain_error("sample_on_grid: pdf not finite at x = " +
                                    std::to_string(grid.x(i)));
        vals[static_cast<size_t>(i)] = p;
    }
    return TabulatedPdf(grid, std::move(vals));
}

}  // namespace qinv
