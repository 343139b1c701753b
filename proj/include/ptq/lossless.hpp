// lossless.hpp: closed-form reference solution without gain, loss or Kerr terms.
//
// With gamma1 = gamma2 = 0 and vanishing Kerr rates the Heisenberg equations are linear
// with real frequencies +/- xi, xi = sqrt(eps^2 - kappa^2), and every quantifier has an
// elementary closed form. These serve as oracles for the numerical pipeline.
#pragma once

#include "ptq/quantifiers.hpp"

namespace ptq::lossless {

struct LosslessParams {
    double epsilon{1.0};
    double kappa{0.0};

    double xi() const;
};

// B, C, D, Dbar for vacuum input at time t (amplitude fields left at zero).
// Throws ExceptionalPointParams when epsilon == kappa.
GaussianCoefficients coefficients(const LosslessParams& p, double t);

// E_N, R, lambda1 = lambda2, lambda directly from the closed-form expressions.
QuantifierSample quantifier_formulas(const LosslessParams& p, double t, LogBase base = LogBase::Two);

// The epsilon == kappa limit, where sin(xi t)/xi -> t.
QuantifierSample ep_limits(double epsilon, double t, LogBase base = LogBase::Two);

// Extremes over all t >= 0 (lambda2_min equals lambda1_min).
Extremes extremes(double epsilon, double kappa, LogBase base = LogBase::Two);

}  // namespace ptq::lossless
