// spectrum.hpp: linear (Kerr-free) dynamics: generator, eigenfrequencies,
// PT eigenvectors and the exceptional-point coupling.
#pragma once

#include "ptq/model.hpp"

#include <Eigen/Dense>

#include <array>
#include <utility>

namespace ptq {

using Matrix4c = Eigen::Matrix4cd;
using Vector4c = Eigen::Vector4cd;

// Generator G of d/dt (a1, a1^+, a2, a2^+) = G (a1, a1^+, a2, a2^+) without Kerr terms,
// i.e. -i times the bracketed matrix of the linear Heisenberg equations.
Matrix4c dynamical_matrix(const SystemParams& params);

// nu_{1,2} = -i(g1+g2)/2 +/- sqrt(eps^2 - kappa^2 - (g1-g2)^2/4), principal root.
// Each is doubly degenerate; a solution component evolves as exp(-i nu t).
std::pair<cplx, cplx> eigenfrequencies(const SystemParams& params);

struct LinearSpectrum {
    cplx nu1;
    cplx nu2;
    double xi{0.0};           // sqrt(eps^2 - kappa^2)
    cplx mu;                  // sqrt(xi^2 - gamma^2); real in the oscillatory regime
    double zeta_plus{0.0};    // sqrt(eps + xi)
    double zeta_minus{0.0};   // sqrt(eps - xi)
    // Y+_{nu1}, Y-_{nu1}, Y+_{nu2}, Y-_{nu2}
    std::array<Vector4c, 4> eigvecs;
    // Scales as eps/|mu|; infinite at the exceptional point where the generator is defective.
    double condition{0.0};

    const Vector4c& plus_nu1() const { return eigvecs[0]; }
    const Vector4c& minus_nu1() const { return eigvecs[1]; }
    const Vector4c& plus_nu2() const { return eigvecs[2]; }
    const Vector4c& minus_nu2() const { return eigvecs[3]; }
};

// Closed-form eigenvectors for PT-symmetric parameters with eps^2 > kappa^2.
// Throws NonPtParameters or DegenerateXi.
LinearSpectrum eigenvectors(const SystemParams& params);

// kappa at which mu^2 = 0 for the given gamma. Throws GammaExceedsEpsilon.
double ep_kappa(double epsilon, double gamma);

}  // namespace ptq
