#include "ptq/model.hpp"

#include "ptq/errors.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>

namespace ptq {

const char* to_string(Regime r) noexcept {
    switch (r) {
        case Regime::Oscillatory: return "Oscillatory";
        case Regime::ExceptionalPoint: return "ExceptionalPoint";
        case Regime::Broken: return "Broken";
    }
    return "Unknown";
}

namespace {

bool all_finite(const SystemParams& p) {
    return std::isfinite(p.epsilon) && std::isfinite(p.kappa) && std::isfinite(p.gamma1) &&
           std::isfinite(p.gamma2) && std::isfinite(p.beta1) && std::isfinite(p.beta2) &&
           std::isfinite(p.beta_c);
}

bool close(double a, double b, double scale) {
    return std::abs(a - b) <= 1e-12 * std::max(1.0, scale);
}

}  // namespace

PtClass validate(const SystemParams& p) {
    if (!all_finite(p)) {
        throw Error(ErrorCode::InvalidParams, "non-finite rate");
    }
    if (p.epsilon < 0.0) {
        throw Error(ErrorCode::InvalidParams, "epsilon must be >= 0");
    }
    if (p.gamma1 < 0.0) {
        throw Error(ErrorCode::InvalidParams, "gamma1 must be >= 0 (damped mode)");
    }
    if (p.gamma2 > 0.0) {
        throw Error(ErrorCode::InvalidParams, "gamma2 must be <= 0 (amplified mode)");
    }

    PtClass out;
    const double scale = std::max({std::abs(p.gamma1), std::abs(p.beta1), p.epsilon});
    out.is_pt = close(p.gamma2, -p.gamma1, scale) && close(p.beta2, p.beta1, scale);
    if (!out.is_pt) {
        return out;
    }
    out.gamma = p.gamma1;
    const double mu2 = p.epsilon * p.epsilon - p.kappa * p.kappa - p.gamma1 * p.gamma1;
    out.mu_squared = mu2;
    if (std::abs(mu2) <= kEpTolerance * p.epsilon * p.epsilon) {
        out.regime = Regime::ExceptionalPoint;
    } else {
        out.regime = mu2 > 0.0 ? Regime::Oscillatory : Regime::Broken;
    }
    return out;
}

void require_steady_state_params(const SystemParams& p) {
    validate(p);
    if (!(p.epsilon > 0.0)) {
        throw Error(ErrorCode::InvalidParams, "steady states need epsilon > 0");
    }
    if (!(p.beta1 > 0.0) || !(p.beta2 > 0.0)) {
        throw Error(ErrorCode::InvalidBeta, "steady states need beta1 > 0 and beta2 > 0");
    }
    if (!(p.beta_c > -2.0 * std::sqrt(p.beta1 * p.beta2))) {
        throw Error(ErrorCode::InvalidBeta, "steady states need beta_c > -2 sqrt(beta1 beta2)");
    }
}

double wrap_angle(double angle) {
    constexpr double two_pi = 2.0 * std::numbers::pi;
    double r = std::remainder(angle, two_pi);  // [-pi, pi]
    if (r <= -std::numbers::pi) {
        r += two_pi;
    }
    return r;
}

AmplitudePair to_amplitudes(const InitialStateSpec& s) {
    if (!std::isfinite(s.total_intensity) || !std::isfinite(s.theta) || !std::isfinite(s.phi) ||
        !std::isfinite(s.psi)) {
        throw Error(ErrorCode::InvalidParams, "non-finite initial state");
    }
    if (s.total_intensity < 0.0) {
        throw Error(ErrorCode::InvalidParams, "total intensity must be >= 0");
    }
    const double amp = std::sqrt(s.total_intensity);
    const double phase1 = wrap_angle(0.5 * (s.psi - s.phi));
    const double phase2 = wrap_angle(0.5 * (s.psi + s.phi));
    return {amp * std::cos(s.theta) * std::polar(1.0, phase1),
            amp * std::sin(s.theta) * std::polar(1.0, phase2)};
}

InitialStateSpec from_amplitudes(const AmplitudePair& a) {
    InitialStateSpec s;
    s.total_intensity = a.intensity();
    s.theta = std::atan2(std::abs(a.alpha2), std::abs(a.alpha1));
    const double p1 = std::arg(a.alpha1);
    const double p2 = std::arg(a.alpha2);
    s.phi = wrap_angle(p2 - p1);
    s.psi = wrap_angle(p2 + p1);
    return s;
}

}  // namespace ptq
