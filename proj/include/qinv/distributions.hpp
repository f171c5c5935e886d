#pragma once

#include <map>
#include <memory>
#include <string>
#include <vector>

#include "qinv/grid.hpp"

namespace qinv {

enum class Family { Gaussian, Lorentzian, Gumbel, Logistic, Rayleigh, Chi, Beta, Tabulated };

std::string family_name(Family f);

/// One endpoint may be infinite; open endpoints exclude the boundary value.
struct Domain {
    double lo, hi;
    bool lo_open = false;
    bool hi_open = false;

    bool contains(double x) const {
        if (lo_open ? !(x > lo) : !(x >= lo)) return false;
        if (hi_open ? !(x < hi) : !(x <= hi)) return false;
        return true;
    }
};

/// f = -ln(P/A) and its first two derivatives at one point.
/// valid is false where P is below the floor or ln P is not finite; in that
/// case the three values are NaN, never +-inf.
struct ExponentEval {
    double f = 0.0;
    double fp = 0.0;
    double fpp = 0.0;
    bool valid = false;
};

/// Sampled pdf on a uniform grid.  Values are raw (not necessarily
/// normalized); cells with value < floor_rel * max(value) are invalid.
class TabulatedPdf {
  public:
    static constexpr double kDefaultFloorRel = 1e-300;

    TabulatedPdf(Grid1D grid, std::vector<double> values, double floor_rel = kDefaultFloorRel);

    const Grid1D& grid() const { return grid_; }
    const std::vector<double>& values() const { return values_; }
    double floor_rel() const { return floor_rel_; }
    double floor_abs() const { return floor_abs_; }
    bool cell_valid(int i) const;

    /// Integral of the raw values (trapezoid).
    double raw_mass() const;

    /// Copy with values scaled so the trapezoid integral is 1.
    TabulatedPdf normalized() const;

    /// Raw value, linearly interpolated between nodes.
    double value_at(double x) const;

    /// ln(raw value) differentiated on the grid: second-order central
    /// differences with one Richardson step in the interior, second-order
    /// one-sided stencils at the edges.
    ExponentEval exponent_at_node(int i) const;

    int nearest_node(double x) const;

  private:
    Grid1D grid_;
    std::vector<double> values_;
    double floor_rel_;
    double floor_abs_;
};

/// A 1D pdf family with parameters, domain, and analytic f, f', f''.
/// Immutable after construction; parameters are validated up front.
class DistributionSpec {
  public:
    static DistributionSpec gaussian(double sigma, double x0);
    static DistributionSpec lorentzian(double gamma, double x0);
    static DistributionSpec gumbel(double beta_scale, double x0);
    static DistributionSpec logistic(double s, double x0);
    static DistributionSpec rayleigh(double sigma);
    static DistributionSpec chi(double k, double sigma);
    static DistributionSpec beta(double alpha, double beta);
    static DistributionSpec tabulated(TabulatedPdf pdf);

    Family family() const { return family_; }
    const Domain& domain() const { return domain_; }
    double param(const std::string& name) const;
    const std::map<std::string, double>& params() const { return params_; }
    const TabulatedPdf& table() const;

    /// P(x) per the family formula (raw values scaled by A for Tabulated).
    double pdf(double x) const;

    /// f = -ln(P/A) with analytic derivatives (numeric for Tabulated).
    ExponentEval exponent(double x) const;

    /// A such that the density A*exp(-f) integrates to 1.
    /// Exactly 1 for the closed-form families.
    double normalization() const;

    /// Pointwise pdf() on the grid; grid must lie inside the domain.
    TabulatedPdf sample_on_grid(const Grid1D& grid) const;

    /// True for the closed-form families (everything except Tabulated).
    bool closed_form() const { return family_ != Family::Tabulated; }

  private:
    DistributionSpec(Family fam, std::map<std::string, double> params, Domain dom);
    explicit DistributionSpec(TabulatedPdf pdf);

    void require_in_domain(double x) const;

    Family family_;
    std::map<std::string, double> params_;
    Domain domain_;
    std::shared_ptr<const TabulatedPdf> table_;
    double norm_ = 1.0;  // cached A
};

}  // namespace qinv
