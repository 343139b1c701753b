// model.hpp: parameters, PT classification and initial states of the
// two-mode gain/loss system with exchange coupling, down-conversion and Kerr terms.
#pragma once

#include <complex>
#include <optional>

namespace ptq {

using cplx = std::complex<double>;

// Rates of the two-mode Hamiltonian. Mode 1 is damped (gamma1 >= 0), mode 2 is
// amplified at the rate -gamma2 >= 0. Units are caller-chosen; scenarios use epsilon = 1.
struct SystemParams {
    double epsilon{1.0};  // linear exchange coupling
    double kappa{0.0};    // down-conversion coupling
    double gamma1{0.0};
    double gamma2{0.0};
    double beta1{0.0};    // self-Kerr, mode 1
    double beta2{0.0};    // self-Kerr, mode 2
    double beta_c{0.0};   // cross-Kerr

    // Balanced gain/loss with equal self-Kerr terms.
    static SystemParams pt(double epsilon, double kappa, double gamma, double beta,
                           double beta_c = 0.0) {
        return {epsilon, kappa, gamma, -gamma, beta, beta, beta_c};
    }
};

enum class Regime { Oscillatory, ExceptionalPoint, Broken };

const char* to_string(Regime r) noexcept;

struct PtClass {
    bool is_pt{false};
    double gamma{0.0};                  // common rate when is_pt
    std::optional<double> mu_squared;   // epsilon^2 - kappa^2 - gamma^2, only when is_pt
    std::optional<Regime> regime;       // only when is_pt
};

// Relative tolerance for |mu^2| <= tol * epsilon^2 to count as an exceptional point.
inline constexpr double kEpTolerance = 1e-9;

// Throws Error(InvalidParams) for non-finite rates, epsilon < 0, gamma1 < 0 or gamma2 > 0.
// epsilon = 0 is accepted so that decoupled modes can be studied.
PtClass validate(const SystemParams& params);

// Same checks as validate plus the Kerr preconditions of the steady-state solver.
void require_steady_state_params(const SystemParams& params);

struct AmplitudePair {
    cplx alpha1{};
    cplx alpha2{};

    double intensity() const { return std::norm(alpha1) + std::norm(alpha2); }
};

// I = |a1|^2 + |a2|^2, |a1|^2 = cos^2(theta) I, phi = arg a2 - arg a1, psi = arg a2 + arg a1.
struct InitialStateSpec {
    double total_intensity{0.0};
    double theta{0.0};
    double phi{0.0};
    double psi{0.0};
};

// Uses phase1 = (psi - phi)/2, phase2 = (psi + phi)/2.
AmplitudePair to_amplitudes(const InitialStateSpec& spec);

// Inverse of to_amplitudes for I > 0; phases reported as principal values in (-pi, pi].
InitialStateSpec from_amplitudes(const AmplitudePair& alpha);

// Wraps an angle into (-pi, pi].
double wrap_angle(double angle);

}  // namespace ptq
