// units.hpp — unit constants (hbar, k_B) and the thermal state they scale
#pragma once

#include <cmath>

#include "thermal_bound/errors.hpp"

namespace thermal_bound {

// Values of hbar and k_B used everywhere. Defaults are natural units
// (hbar = k_B = 1), which is also the convention of the bundled demos.
struct UnitSystem {
    double hbar = 1.0;
    double k_boltzmann = 1.0;

    void validate() const {
        if (!(hbar > 0.0) || !std::isfinite(hbar))
            throw DomainError("UnitSystem: hbar must be positive and finite");
        if (!(k_boltzmann > 0.0) || !std::isfinite(k_boltzmann))
            throw DomainError("UnitSystem: k_boltzmann must be positive and finite");
    }
};

// Inverse temperature beta = 1/(k_B T) paired with its unit system.
struct ThermalState {
    double beta = 1.0;
    UnitSystem units{};

    void validate() const {
        units.validate();
        if (!(beta > 0.0) || !std::isfinite(beta))
            throw DomainError("ThermalState: beta must be positive and finite");
    }

    double temperature() const { return 1.0 / (units.k_boltzmann * beta); }
};

}  // namespace thermal_bound
