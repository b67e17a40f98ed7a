#pragma once

#include <cmath>

#include "fsi/errors.hpp"

namespace fsi {

/// Physical constants. Pressure law p(rho) = a*rho^gamma, normalized so that
/// P(rho) = p(rho) - p_ext with p_ext = a*rho_bar^gamma; (rho_bar, 0, 0) is
/// the steady state. alpha/beta/delta are the beam rigidity, stretching and
/// friction coefficients.
struct PhysParams {
    double mu = 0.1;        // shear viscosity, > 0
    double mu_prime = 0.0;  // dilatational viscosity, >= 0
    double a = 1.0;         // pressure constant, > 0
    double gamma = 1.4;     // adiabatic exponent, > 1
    double rho_bar = 1.0;   // reference density, > 0
    double alpha = 1.0;     // rigidity, > 0
    double beta = 1.0;      // stretching, >= 0
    double delta = 1.0;     // friction, > 0
    double length = 1.0;    // channel period L, > 0

    double p_ext() const { return a * std::pow(rho_bar, gamma); }

    void validate() const {
        if (!(mu > 0.0)) throw ValidationError("mu", "must be > 0");
        if (!(mu_prime >= 0.0)) throw ValidationError("mu_prime", "must be >= 0");
        if (!(a > 0.0)) throw ValidationError("a", "must be > 0");
        if (!(gamma > 1.0)) throw ValidationError("gamma", "must be > 1");
        if (!(rho_bar > 0.0)) throw ValidationError("rho_bar", "must be > 0");
        if (!(alpha > 0.0)) throw ValidationError("alpha", "must be > 0");
        if (!(beta >= 0.0)) throw ValidationError("beta", "must be >= 0");
        if (!(delta > 0.0)) throw ValidationError("delta", "must be > 0");
        if (!(length > 0.0)) throw ValidationError("length", "must be > 0");
    }
};

/// Density-corridor constants fixed from the run's initial data:
/// admissible states keep m/2 <= sigma + rho_bar <= 2M.
struct DensityBounds {
    double m = 1.0;
    double M = 1.0;
};

}  // namespace fsi
