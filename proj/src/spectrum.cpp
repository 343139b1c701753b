#include "ptq/spectrum.hpp"

#include "ptq/errors.hpp"

#include <cmath>
#include <limits>

namespace ptq {

namespace {
constexpr cplx I{0.0, 1.0};
}

Matrix4c dynamical_matrix(const SystemParams& p) {
    const double e = p.epsilon;
    const double k = p.kappa;
    Eigen::Matrix4cd bracket;
    // clang-format off
    bracket << -I * p.gamma1, 0.0,            e,              k,
               0.0,           -I * p.gamma1,  -k,             -e,
               e,             k,              -I * p.gamma2,  0.0,
               -k,            -e,             0.0,            -I * p.gamma2;
    // clang-format on
    return -I * bracket;
}

std::pair<cplx, cplx> eigenfrequencies(const SystemParams& p) {
    const double dg = p.gamma1 - p.gamma2;
    const cplx root = std::sqrt(cplx(p.epsilon * p.epsilon - p.kappa * p.kappa - 0.25 * dg * dg, 0.0));
    const cplx center = -0.5 * I * (p.gamma1 + p.gamma2);
    return {center + root, center - root};
}

LinearSpectrum eigenvectors(const SystemParams& p) {
    const PtClass pt = validate(p);
    if (!pt.is_pt) {
        throw Error(ErrorCode::NonPtParameters, "closed-form eigenvectors need gamma2 = -gamma1, beta2 = beta1");
    }
    const double e2 = p.epsilon * p.epsilon;
    const double xi2 = e2 - p.kappa * p.kappa;
    if (xi2 <= kEpTolerance * e2) {
        throw Error(ErrorCode::DegenerateXi, "eps^2 - kappa^2 must be positive");
    }

    LinearSpectrum s;
    const double g = pt.gamma;
    s.xi = std::sqrt(xi2);
    // mu^2 at the rounding level is an exact exceptional point: the pairs must coincide.
    const double mu2 = xi2 - g * g;
    s.mu = std::abs(mu2) <= 1e-14 * e2 ? cplx{} : std::sqrt(cplx(mu2, 0.0));
    s.zeta_plus = std::sqrt(p.epsilon + s.xi);
    s.zeta_minus = std::sqrt(p.epsilon - s.xi);
    std::tie(s.nu1, s.nu2) = eigenfrequencies(p);

    const double norm = 1.0 / (2.0 * std::sqrt(p.epsilon));
    const cplx r1 = (s.mu + I * g) / s.xi;
    const cplx r2 = (s.mu - I * g) / s.xi;
    const double zp = s.zeta_plus;
    const double zm = s.zeta_minus;
    s.eigvecs[0] << zp, -zm, zp * r1, -zm * r1;
    s.eigvecs[1] << zm, -zp, -zm * r1, zp * r1;
    s.eigvecs[2] << zp, -zm, -zp * r2, zm * r2;
    s.eigvecs[3] << zm, -zp, zm * r2, -zp * r2;
    for (auto& v : s.eigvecs) {
        v *= norm;
    }
    const double mu_abs = std::abs(s.mu);
    s.condition = mu_abs > 0.0 ? p.epsilon / mu_abs : std::numeric_limits<double>::infinity();
    return s;
}

double ep_kappa(double epsilon, double gamma) {
    if (!std::isfinite(epsilon) || !std::isfinite(gamma) || gamma < 0.0 || epsilon <= 0.0) {
        throw Error(ErrorCode::InvalidParams, "ep_kappa needs epsilon > 0 and gamma >= 0");
    }
    if (gamma > epsilon) {
        throw Error(ErrorCode::GammaExceedsEpsilon, "no exceptional point for gamma > epsilon");
    }
    return std::sqrt(epsilon * epsilon - gamma * gamma);
}

}  // namespace ptq
