#include "ptq/lossless.hpp"

#include "ptq/errors.hpp"

#include <boost/math/special_functions/sinc.hpp>

#include <cmath>

namespace ptq::lossless {

namespace {

constexpr cplx I{0.0, 1.0};

void require_oscillatory(const LosslessParams& p) {
    if (!(p.epsilon > 0.0) || !(p.kappa >= 0.0) || !std::isfinite(p.epsilon) || !std::isfinite(p.kappa)) {
        throw Error(ErrorCode::InvalidParams, "lossless oracle needs epsilon > 0, kappa >= 0");
    }
    if (p.kappa == p.epsilon) {
        throw Error(ErrorCode::ExceptionalPointParams, "epsilon == kappa; use ep_limits");
    }
    if (p.kappa > p.epsilon) {
        throw Error(ErrorCode::InvalidParams, "lossless oracle needs epsilon > kappa");
    }
}

// sin(x t)/x, exact through x -> 0.
double sin_over(double x, double t) {
    return t * boost::math::sinc_pi(x * t);
}

}  // namespace

double LosslessParams::xi() const {
    return std::sqrt((epsilon - kappa) * (epsilon + kappa));
}

GaussianCoefficients coefficients(const LosslessParams& p, double t) {
    require_oscillatory(p);
    const double xi = p.xi();
    const double s = sin_over(xi, t);  // sin(xi t)/xi
    GaussianCoefficients c;
    c.B1 = c.B2 = p.kappa * p.kappa * s * s;
    c.C1 = c.C2 = -p.epsilon * p.kappa * s * s;
    c.D = -I * p.kappa * sin_over(2.0 * xi, t);  // -i (kappa/xi) sin(2 xi t)/2
    c.Dbar = 0.0;
    return c;
}

QuantifierSample quantifier_formulas(const LosslessParams& p, double t, LogBase base) {
    require_oscillatory(p);
    const double e = p.epsilon;
    const double k = p.kappa;
    const double xi = p.xi();
    const double s = sin_over(xi, t);
    const double sin_xt = std::sin(xi * t);

    QuantifierSample q;
    q.t = t;
    // g = xi / (kappa sin 2xi t); E_N = -1/2 log(1 + 2(1 - sqrt(1+g^2))/g^2).
    const double sin_2xt = std::sin(2.0 * xi * t);
    if (k == 0.0 || sin_2xt == 0.0) {
        q.E_N = 0.0;
    } else {
        const double g = xi / (k * sin_2xt);
        q.E_N = -0.5 * log_in_base(1.0 - 2.0 / (1.0 + std::sqrt(1.0 + g * g)), base);
    }
    q.R = 2.0 * e * e * s * s;
    q.lambda1 = q.lambda2 = 1.0 - 2.0 * (k / (e + k)) * sin_xt * sin_xt;
    // kappa/xi^2 |sin| sqrt(eps^2 - kappa^2 cos^2) = kappa |s| sqrt(1 + kappa^2 s^2)
    q.lambda = 2.0 * (1.0 + 2.0 * k * k * s * s - 2.0 * k * std::abs(s) * std::sqrt(1.0 + k * k * s * s));
    return q;
}

QuantifierSample ep_limits(double epsilon, double t, LogBase base) {
    const double x = epsilon * t;
    QuantifierSample q;
    q.t = t;
    // 1 + 8x^2 - 4x sqrt(1+4x^2) = (sqrt(1+4x^2) - 2x)^2, evaluated without cancellation.
    q.E_N = log_in_base(std::sqrt(1.0 + 4.0 * x * x) + 2.0 * x, base);
    q.R = 2.0 * x * x;
    q.lambda1 = q.lambda2 = 1.0;
    const double r = 1.0 / (std::sqrt(1.0 + x * x) + x);  // sqrt(1+x^2) - x
    q.lambda = 2.0 * r * r;
    return q;
}

Extremes extremes(double epsilon, double kappa, LogBase base) {
    require_oscillatory({epsilon, kappa});
    const double ratio = (epsilon - kappa) / (epsilon + kappa);
    Extremes e;
    e.E_N_max = -0.5 * log_in_base(ratio, base);
    e.R_min = 0.0;
    e.lambda1_min = e.lambda2_min = ratio;
    e.lambda_min = 2.0 * ratio;
    return e;
}

}  // namespace ptq::lossless
