// fluctuations.hpp: linearized quantum fluctuations around the classical solution.
//
// Operator ordering throughout is (da1, da1^+, da2, da2^+). The fluctuations obey
// d(dA)/dt = M(t) dA + L(t) with delta-correlated Langevin forces <L_i(t) L_j(t')> =
// Q_ij delta(t - t'). Second moments N_ij = <dA_i dA_j> therefore satisfy
//
//     dN/dt = M N + N M^T + Q,
//
// which is what propagate_moments integrates. The two other routes (propagator plus
// noise quadrature, eigen-decomposition for constant M) exist to cross-check it.
#pragma once

#include "ptq/classical.hpp"
#include "ptq/model.hpp"
#include "ptq/spectrum.hpp"

#include <Eigen/Dense>

#include <cmath>
#include <functional>
#include <limits>
#include <span>
#include <vector>

namespace ptq {

struct MomentMatrix {
    Matrix4c N{Matrix4c::Zero()};
    double time{0.0};

    // Zero-based accessors for the named moments.
    cplx commutator1() const { return N(0, 1) - N(1, 0); }
    cplx commutator2() const { return N(2, 3) - N(3, 2); }
};

// Drift M(alpha) of the linearized fluctuation equations including Kerr terms.
Matrix4c drift_matrix(const AmplitudePair& alpha, const SystemParams& params);

// Langevin diffusion: Q(0,1) = 2 gamma1 (damping), Q(3,2) = -2 gamma2 (gain).
Eigen::Matrix4d diffusion_matrix(const SystemParams& params);

enum class InitialFluctuations { VacuumFluctuations };

// Coherent (or vacuum) input: only <da da^+> = 1 in each mode.
MomentMatrix initial_moments(InitialFluctuations kind = InitialFluctuations::VacuumFluctuations);

struct MomentSample {
    double t{0.0};
    AmplitudePair alpha;
    MomentMatrix moments;
};

using MomentTrajectory = std::vector<MomentSample>;

// Co-integrates the classical amplitudes and the moment equation on one adaptive
// stepper and samples both on grid. With noise = false the Langevin term is dropped.
// Throws StepFailure.
MomentTrajectory propagate_moments(const AmplitudePair& alpha0, const SystemParams& params,
                                   bool noise, std::span<const double> grid, double tol = 1e-10,
                                   const MomentMatrix& initial = initial_moments());

// Streaming form of propagate_moments: sink receives each sample as it is produced, so
// samples before a StepFailure are not lost.
void propagate_moments(const AmplitudePair& alpha0, const SystemParams& params, bool noise,
                       std::span<const double> grid, double tol, const MomentMatrix& initial,
                       const std::function<void(const MomentSample&)>& sink);

struct PropagationMatrix {
    Matrix4c P{Matrix4c::Identity()};

    // U_jk = P_{2j-1,2k-1}, V_jk = P_{2j-1,2k} (one-based), the a and a^+ responses.
    Eigen::Matrix2cd U() const;
    Eigen::Matrix2cd V() const;
};

struct QuadratureSample {
    double t{0.0};
    AmplitudePair alpha;
    PropagationMatrix propagator;
    Matrix4c noise_moments{Matrix4c::Zero()};  // <F F^T>(t)
};

// P(t, 0) from dP/dt = M(t) P and the noise moments int_0^t P(t,s) Q P(t,s)^T ds,
// evaluated by Gauss-Legendre panels with P(t,s) = P(t,0) P(s,0)^{-1}.
std::vector<QuadratureSample> propagation_and_noise_quadrature(const AmplitudePair& alpha0,
                                                               const SystemParams& params,
                                                               std::span<const double> grid,
                                                               double tol = 1e-11);

// Second moments from a propagator and noise moments: P N0 P^T + <F F^T>.
MomentMatrix moments_from_propagator(const PropagationMatrix& propagator, const Matrix4c& noise_moments,
                                     const MomentMatrix& initial = initial_moments());

struct ConstantCoefficientSample {
    double t{0.0};
    PropagationMatrix propagator;
    Matrix4c noise_moments{Matrix4c::Zero()};
};

struct ConstantCoefficientSolution {
    std::array<cplx, 4> frequencies;  // nu_l, with M = Y diag(-i nu) Y^{-1}
    Matrix4c Y;
    Matrix4c y;                       // Y^{-1}
    double condition{0.0};
    std::vector<ConstantCoefficientSample> samples;
};

// Eigenvector-matrix condition number above which the closed form is refused. Rounding
// splits a 2x2 Jordan block by about sqrt(machine epsilon), which leaves the computed
// eigenvectors with a condition number near 1/sqrt(machine epsilon) rather than infinity.
inline const double kDefectiveCondition = 1.0 / std::sqrt(std::numeric_limits<double>::epsilon());

// Closed form for a time-independent classical solution (a steady state or alpha = 0).
// Throws DefectiveMatrix near exceptional points and InvalidParams if alpha is not stationary.
ConstantCoefficientSolution constant_coefficient_solution(const AmplitudePair& alpha_st,
                                                          const SystemParams& params,
                                                          std::span<const double> times);

}  // namespace ptq
