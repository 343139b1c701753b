#include "ptq/quantifiers.hpp"

#include "ptq/errors.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <string>

namespace ptq {

GaussianCoefficients extract_coefficients(const MomentMatrix& m, const AmplitudePair& alpha) {
    GaussianCoefficients c;
    c.B1 = m.N(1, 0).real();
    c.B2 = m.N(3, 2).real();
    c.C1 = m.N(0, 0);
    c.C2 = m.N(2, 2);
    c.D = m.N(0, 2);
    c.Dbar = -m.N(1, 2);
    c.alpha = alpha;
    return c;
}

CovarianceMatrix covariance(const GaussianCoefficients& k) {
    CovarianceMatrix cov;
    auto& c = cov.C;
    c(0, 0) = 1.0 + 2.0 * k.B1 + 2.0 * k.C1.real();
    c(1, 1) = 1.0 + 2.0 * k.B1 - 2.0 * k.C1.real();
    c(0, 1) = c(1, 0) = 2.0 * k.C1.imag();
    c(2, 2) = 1.0 + 2.0 * k.B2 + 2.0 * k.C2.real();
    c(3, 3) = 1.0 + 2.0 * k.B2 - 2.0 * k.C2.real();
    c(2, 3) = c(3, 2) = 2.0 * k.C2.imag();

    c(0, 2) = c(2, 0) = 2.0 * (k.D - k.Dbar).real();
    c(0, 3) = c(3, 0) = 2.0 * (k.D.imag() - k.Dbar.imag());
    c(1, 2) = c(2, 1) = 2.0 * (k.D.imag() + k.Dbar.imag());
    c(1, 3) = c(3, 1) = -2.0 * (k.D + k.Dbar).real();
    return cov;
}

LogBase parse_log_base(std::string_view text) {
    if (text == "2" || text == "two") {
        return LogBase::Two;
    }
    if (text == "10" || text == "ten") {
        return LogBase::Ten;
    }
    if (text == "e" || text == "natural") {
        return LogBase::Natural;
    }
    throw Error(ErrorCode::ConfigError, "log base must be 2, 10 or e, got '" + std::string(text) + "'");
}

std::string_view to_string(LogBase base) noexcept {
    switch (base) {
        case LogBase::Two: return "2";
        case LogBase::Ten: return "10";
        case LogBase::Natural: return "e";
    }
    return "?";
}

double log_in_base(double x, LogBase base) {
    switch (base) {
        case LogBase::Two: return std::log2(x);
        case LogBase::Ten: return std::log10(x);
        case LogBase::Natural: return std::log(x);
    }
    return std::log(x);
}

namespace {

double det2(const Eigen::Matrix4d& c, int r, int col) {
    return c(r, col) * c(r + 1, col + 1) - c(r, col + 1) * c(r + 1, col);
}

// Smaller root of x^2 - seralian x + det = 0, via det / larger root to avoid cancellation.
double smaller_root(double seralian, double det) {
    const double disc = std::max(0.0, seralian * seralian - 4.0 * det);
    const double larger = 0.5 * (seralian + std::sqrt(disc));
    return larger > 0.0 ? det / larger : 0.5 * (seralian - std::sqrt(disc));
}

}  // namespace

SymplecticSpectrum symplectic_spectrum(const CovarianceMatrix& cov) {
    const auto& c = cov.C;
    SymplecticSpectrum s;
    s.seralian = det2(c, 0, 0) + det2(c, 2, 2) + 2.0 * det2(c, 0, 2);
    s.nu_minus_squared = smaller_root(s.seralian, c.determinant());
    return s;
}

double ppt_nu_minus_squared(const CovarianceMatrix& cov) {
    const auto& c = cov.C;
    // Partial transposition flips the sign of det K; det C is unchanged.
    const double seralian = det2(c, 0, 0) + det2(c, 2, 2) - 2.0 * det2(c, 0, 2);
    return smaller_root(seralian, c.determinant());
}

double log_negativity(const CovarianceMatrix& cov, LogBase base, PhysicalityCheck check) {
    if (check == PhysicalityCheck::Enforce) {
        const double nu2 = symplectic_spectrum(cov).nu_minus_squared;
        if (!(nu2 >= (1.0 - 1e-6) * (1.0 - 1e-6))) {
            throw Error(ErrorCode::NonPhysicalCovariance,
                        "smallest symplectic eigenvalue " + std::to_string(std::sqrt(std::max(nu2, 0.0))) + " < 1");
        }
    }
    const double nu2 = ppt_nu_minus_squared(cov);
    if (!(nu2 < 1.0)) {
        return 0.0;
    }
    if (nu2 <= 0.0) {
        return std::numeric_limits<double>::infinity();
    }
    return -0.5 * log_in_base(nu2, base);
}

double sub_shot_noise(const GaussianCoefficients& k) {
    const cplx a1 = k.alpha.alpha1;
    const cplx a2 = k.alpha.alpha2;
    const double b1 = std::norm(a1) + k.B1;
    const double b2 = std::norm(a2) + k.B2;
    if (b1 + b2 < 1e-14) {
        return 0.0;
    }
    const cplx c1 = a1 * a1 + k.C1;
    const cplx c2 = a2 * a2 + k.C2;
    const cplx d = a1 * a2 + k.D;
    const cplx dbar = std::conj(a1) * a2 - k.Dbar;
    const double imbalance = std::norm(a1) - std::norm(a2);
    const double numerator = b1 * b1 + std::norm(c1) + b2 * b2 + std::norm(c2) - 2.0 * std::norm(d) -
                             2.0 * std::norm(dbar) - 2.0 * imbalance * imbalance;
    return 1.0 + numerator / (b1 + b2);
}

SqueezingVariances squeezing(const GaussianCoefficients& k) {
    SqueezingVariances s;
    s.lambda1 = 1.0 + 2.0 * (k.B1 - std::abs(k.C1));
    s.lambda2 = 1.0 + 2.0 * (k.B2 - std::abs(k.C2));
    s.lambda = 2.0 + 2.0 * (k.B1 + k.B2 - 2.0 * k.Dbar.real() - std::abs(k.C1 + k.C2 + 2.0 * k.D));
    return s;
}

QuantifierSample quantify(double t, const GaussianCoefficients& coeffs, LogBase base, PhysicalityCheck check) {
    const SqueezingVariances sq = squeezing(coeffs);
    return {t, log_negativity(covariance(coeffs), base, check), sub_shot_noise(coeffs), sq.lambda1, sq.lambda2,
            sq.lambda};
}

namespace {

// Extremum of one series; sign = +1 for maxima, -1 for minima.
double refined_extremum(std::span<const QuantifierSample> s, std::size_t first, std::size_t last,
                        double QuantifierSample::*field, double sign) {
    std::size_t best = first;
    for (std::size_t i = first; i <= last; ++i) {
        if (sign * (s[i].*field) > sign * (s[best].*field)) {
            best = i;
        }
    }
    const double discrete = s[best].*field;
    if (best == first || best == last) {
        return discrete;
    }
    const double t0 = s[best - 1].t, t1 = s[best].t, t2 = s[best + 1].t;
    const double f0 = s[best - 1].*field, f1 = discrete, f2 = s[best + 1].*field;
    // Newton divided differences of the interpolating parabola.
    const double d01 = (f1 - f0) / (t1 - t0);
    const double d12 = (f2 - f1) / (t2 - t1);
    const double curvature = (d12 - d01) / (t2 - t0);
    if (!(sign * curvature < 0.0)) {
        return discrete;
    }
    const double slope_at_t1 = d01 + curvature * (t1 - t0);
    const double shift = std::clamp(-slope_at_t1 / (2.0 * curvature), t0 - t1, t2 - t1);
    const double refined = f1 + slope_at_t1 * shift + curvature * shift * shift;
    return sign * refined > sign * discrete ? refined : discrete;
}

}  // namespace

Extremes extremal_scan(std::span<const QuantifierSample> samples, double t_begin, double t_end) {
    std::size_t first = samples.size();
    std::size_t last = 0;
    for (std::size_t i = 0; i < samples.size(); ++i) {
        if (samples[i].t >= t_begin && samples[i].t <= t_end) {
            first = std::min(first, i);
            last = std::max(last, i);
        }
    }
    if (first == samples.size()) {
        throw Error(ErrorCode::EmptyWindow, "no samples inside the scan window");
    }
    Extremes e;
    e.E_N_max = refined_extremum(samples, first, last, &QuantifierSample::E_N, 1.0);
    e.R_min = refined_extremum(samples, first, last, &QuantifierSample::R, -1.0);
    e.lambda1_min = refined_extremum(samples, first, last, &QuantifierSample::lambda1, -1.0);
    e.lambda2_min = refined_extremum(samples, first, last, &QuantifierSample::lambda2, -1.0);
    e.lambda_min = refined_extremum(samples, first, last, &QuantifierSample::lambda, -1.0);
    return e;
}

}  // namespace ptq
