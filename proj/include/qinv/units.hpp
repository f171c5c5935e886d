#pragma once

#include <stdexcept>

namespace qinv {

/// The single hbar/mass combination the formulas use.  Everything is expressed
/// through hbar^2/4m; the kinetic prefactor hbar^2/2m is twice that.
struct UnitSystem {
    double hbar2_over_4m = 1.0;

    static UnitSystem natural() { return UnitSystem{1.0}; }

    static UnitSystem with(double hbar2_over_4m) {
        if (!(hbar2_over_4m > 0.0))
            throw std::invalid_argument("UnitSystem: hbar2_over_4m must be positive");
        return UnitSystem{hbar2_over_4m};
    }

    double kinetic_prefactor() const { return 2.0 * hbar2_over_4m; }
};

}  // namespace qinv
