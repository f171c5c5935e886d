#pragma once

#include <functional>
#include <optional>

#include "qinv/distributions.hpp"
#include "qinv/potential.hpp"
#include "qinv/units.hpp"

namespace qinv {

/// V(x) - E at one point: units * (-f'' + f'^2 / 2).
/// NaN where the exponent is invalid.
double raw_potential(const DistributionSpec& spec, double x, const UnitSystem& units);

/// Assemble the potential whose ground state density is the given pdf.
/// Families with a closed-form ground energy carry it exactly; bounded
/// tabulated/beta potentials get the MinZero shift from the located minimum;
/// unbounded-below families are reported as V - E (RawTableConstant).
PotentialCurve potential_from_exponent(const DistributionSpec& spec, const Grid1D& grid,
                                       const UnitSystem& units);

/// The tabulated closed-form expression for the family (throws at singular
/// points and for Tabulated).
double closed_form_potential(const DistributionSpec& spec, double x, const UnitSystem& units);

/// Closed-form ground energy; defined for gaussian, lorentzian, gumbel,
/// logistic, rayleigh and chi.  Throws for beta (see beta_regime) and
/// tabulated.
double ground_energy(const DistributionSpec& spec, const UnitSystem& units);

/// Max over valid grid cells of |closed_form - E0 - raw|.  Rayleigh and beta
/// are compared up to the best-fit additive constant (midrange fit).
double consistency_check(const DistributionSpec& spec, const Grid1D& grid,
                         const UnitSystem& units);

/// Location and value of the minimum of a smooth scalar function, found from
/// the argmin over the grid and refined by golden-section search.
struct MinimumInfo {
    double x = 0.0;
    double value = 0.0;
};
MinimumInfo refine_minimum(const std::function<double(double)>& fn, const Grid1D& grid,
                           double xtol = 1e-10);

/// Everything the nonlinear-term construction produces for one pdf and one
/// interaction strength gN.
struct GpeDerivation {
    DistributionSpec spec;
    double gN = 0.0;
    double mu = 0.0;
    double mu_min_location = 0.0;  // where v_tilde_paper attains its minimum
    PotentialCurve v_tise;
    PotentialCurve v_tilde_paper;       // v_tise + gN * A * P
    PotentialCurve v_tilde_eff;         // v_tise + (mu - E0), the exact effective potential
    PotentialCurve v_ext_selfconsistent;  // v_tilde_eff - gN * A * P
};

GpeDerivation gpe_derive(const DistributionSpec& spec, const Grid1D& grid, double gN,
                         const UnitSystem& units);

enum class ResidualKind { PaperTilde, EffTilde };

/// Sup over valid cells of |(-hbar^2/2m) psi'' + (Vtilde - mu) psi| with
/// psi = sqrt(P) (quadrature-normalized) and psi'' taken analytically from
/// f', f''.  EffTilde is an identity and stays at rounding level; PaperTilde
/// is a reported diagnostic.
double gpe_residual_report(const GpeDerivation& deriv, ResidualKind which,
                           const UnitSystem& units);

/// Endpoint behaviour of the beta-family potential.
struct BetaRegime {
    enum class Endpoint { WallPlusInfinity, DivergesMinusInfinity, Finite };
    Endpoint at_zero = Endpoint::Finite;
    Endpoint at_one = Endpoint::Finite;
    bool has_finite_minimum = false;
};

BetaRegime beta_regime(double alpha, double beta);

/// V(x,y) = Vx(x) + Vy(y) for a separable pdf; energy is the sum of the axis
/// energies, mask the conjunction of the axis masks.
PotentialField compose_separable_2d(const DistributionSpec& specx, const DistributionSpec& specy,
                                    const Grid2D& grid, const UnitSystem& units);

}  // namespace qinv
