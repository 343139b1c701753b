// classical.hpp: mean-field amplitude dynamics, steady states and their stability.
#pragma once

#include "ptq/model.hpp"

#include <Eigen/Dense>

#include <array>
#include <optional>
#include <span>
#include <vector>

namespace ptq {

// (d alpha1/dt, d alpha2/dt) of the classical equations with Kerr terms.
AmplitudePair rhs_cartesian(const AmplitudePair& alpha, const SystemParams& params);

struct PolarState {
    double rho1{0.0};
    double rho2{0.0};
    double phi1{0.0};
    double phi2{0.0};

    double phi() const { return phi2 - phi1; }
    double psi() const { return phi2 + phi1; }

    AmplitudePair to_amplitudes() const;
    static PolarState from_amplitudes(const AmplitudePair& alpha);
};

// (d rho1, d rho2, d phi1, d phi2)/dt. Singular at rho1 = 0 or rho2 = 0.
std::array<double, 4> rhs_polar(const PolarState& state, const SystemParams& params);

struct AmplitudeSample {
    double t{0.0};
    AmplitudePair alpha;
};

using AmplitudeTrajectory = std::vector<AmplitudeSample>;

// Uniform grid 0, dt, 2dt, ... up to t_end (t_end included when it is a multiple of dt).
std::vector<double> uniform_grid(double t_end, double dt);

// Adaptive integration of the classical equations, sampled on grid. Throws StepFailure.
AmplitudeTrajectory integrate(const AmplitudePair& alpha0, const SystemParams& params,
                              std::span<const double> grid, double tol = 1e-10);

// Same for the polar form; used as a consistency check away from rho = 0.
std::vector<PolarState> integrate_polar(const PolarState& state0, const SystemParams& params,
                                        std::span<const double> grid, double tol = 1e-10);

enum class SteadyKind { First, Second };

const char* to_string(SteadyKind kind) noexcept;

// Nontrivial fixed point. phi_st and psi_st are the principal arcsine solutions of the
// sine balance; the branch actually occupied is fixed by the signed cosines
// c_epsilon = eps cos(phi), c_kappa = kappa cos(psi).
struct SteadyState {
    SteadyKind kind{SteadyKind::First};
    double rho1_st{0.0};
    double rho2_st{0.0};
    double phi_st{0.0};
    double psi_st{0.0};
    double c_epsilon{0.0};
    double c_kappa{0.0};
    double beta12{1.0};  // (beta1/beta2)^(1/4)

    // Relative phase and phase sum on the branch selected by the cosine signs.
    double phase_difference(const SystemParams& params) const;
    double phase_sum(const SystemParams& params) const;

    PolarState polar(const SystemParams& params) const;
    AmplitudePair amplitudes(const SystemParams& params) const;
};

struct SteadyStateSet {
    std::optional<SteadyState> first;
    std::optional<SteadyState> second;
    // alpha = 0 is always a fixed point of the classical equations.
    bool trivial{true};
    // A nontrivial family collapsed onto alpha = 0 (happens at exceptional points).
    bool nontrivial_coincides_with_trivial{false};
};

// Throws InvalidBeta when beta preconditions fail, NoSteadyState when the sine balance
// has no solution.
SteadyStateSet steady_states(const SystemParams& params);

// Linearized dynamics of (d rho1, d rho2, d phi, d psi) around a steady state.
// The 1/rho terms are eliminated with the amplitude equation satisfied by every
// steady state, so the matrix stays finite when the state collapses to rho = 0.
Eigen::Matrix4d stability_matrix(const SteadyState& state, const SystemParams& params);

enum class Stability { Stable, Marginal, Unstable };

const char* to_string(Stability s) noexcept;

struct StabilityReport {
    // nu_j = i lambda_j for eigenvalues lambda_j of the stability matrix,
    // sorted by real part then imaginary part.
    std::array<cplx, 4> frequencies;
    Stability classification{Stability::Marginal};
    // Closed-form frequencies, present for PT-symmetric parameters.
    std::optional<std::array<cplx, 4>> analytic;

    double max_imag() const;
    double max_abs_real() const;
};

// Default tolerance on Im nu in units of epsilon.
inline constexpr double kStabilityTolerance = 1e-8;

StabilityReport stability_frequencies(const SteadyState& state, const SystemParams& params);

// Closed-form PT frequencies for given signed cosines.
std::array<cplx, 4> pt_stability_frequencies(double c_epsilon, double c_kappa, double beta,
                                             double beta_c);

}  // namespace ptq
