// quantifiers.hpp: Gaussian-state entanglement and nonclassicality measures.
#pragma once

#include "ptq/fluctuations.hpp"
#include "ptq/model.hpp"

#include <Eigen/Dense>

#include <span>
#include <string_view>

namespace ptq {

// Coefficients of the normally ordered characteristic function:
// B_j = <da_j^+ da_j>, C_j = <da_j^2>, D = <da1 da2>, Dbar = -<da1^+ da2>.
struct GaussianCoefficients {
    double B1{0.0};
    double B2{0.0};
    cplx C1{};
    cplx C2{};
    cplx D{};
    cplx Dbar{};
    AmplitudePair alpha;
};

GaussianCoefficients extract_coefficients(const MomentMatrix& moments, const AmplitudePair& alpha);

// Symmetrized quadrature covariance in the order (x1, p1, x2, p2) with
// x = a + a^+, p = -i(a - a^+), so that the vacuum is the identity.
struct CovarianceMatrix {
    Eigen::Matrix4d C{Eigen::Matrix4d::Identity()};
};

CovarianceMatrix covariance(const GaussianCoefficients& coeffs);

enum class LogBase { Two, Ten, Natural };

LogBase parse_log_base(std::string_view text);
std::string_view to_string(LogBase base) noexcept;
double log_in_base(double x, LogBase base);

struct SymplecticSpectrum {
    double seralian{0.0};          // det A + det B + 2 det K
    double nu_minus_squared{1.0};  // smaller symplectic eigenvalue squared
};

SymplecticSpectrum symplectic_spectrum(const CovarianceMatrix& cov);

// Smallest symplectic eigenvalue squared of the partially transposed covariance.
double ppt_nu_minus_squared(const CovarianceMatrix& cov);

enum class PhysicalityCheck { Enforce, Skip };

// max(0, -log(nu_-^2)/2) of the partial transpose. With Enforce, throws
// NonPhysicalCovariance when the covariance violates the uncertainty relation by more
// than 1e-6. Noise-free propagation does not preserve commutators, so its states are
// evaluated with Skip.
double log_negativity(const CovarianceMatrix& cov, LogBase base = LogBase::Two,
                      PhysicalityCheck check = PhysicalityCheck::Enforce);

// Photon-number-difference variance over the total mean photon number;
// 0 when the mean photon number vanishes.
double sub_shot_noise(const GaussianCoefficients& coeffs);

struct SqueezingVariances {
    double lambda1{1.0};
    double lambda2{1.0};
    double lambda{2.0};  // two-mode, reference level 2
};

SqueezingVariances squeezing(const GaussianCoefficients& coeffs);

struct QuantifierSample {
    double t{0.0};
    double E_N{0.0};
    double R{0.0};
    double lambda1{1.0};
    double lambda2{1.0};
    double lambda{2.0};
};

QuantifierSample quantify(double t, const GaussianCoefficients& coeffs, LogBase base = LogBase::Two,
                          PhysicalityCheck check = PhysicalityCheck::Enforce);

struct Extremes {
    double E_N_max{0.0};
    double R_min{0.0};
    double lambda1_min{0.0};
    double lambda2_min{0.0};
    double lambda_min{0.0};
};

// Extrema over samples with t in [t_begin, t_end]; interior discrete extrema are refined
// by the vertex of the parabola through the neighbouring samples. Throws EmptyWindow.
Extremes extremal_scan(std::span<const QuantifierSample> samples, double t_begin, double t_end);

}  // namespace ptq
