#include "ptq/classical.hpp"

#include "ptq/detail/ode.hpp"
#include "ptq/errors.hpp"

#include <algorithm>
#include <cmath>

namespace ptq {

namespace {

constexpr cplx I{0.0, 1.0};

// Candidates with |c_eps + c_kappa| below this (in units of eps) sit on alpha = 0.
constexpr double kCollapseTolerance = 1e-12;

std::array<double, 4> pack(const AmplitudePair& a) {
    return {a.alpha1.real(), a.alpha1.imag(), a.alpha2.real(), a.alpha2.imag()};
}

AmplitudePair unpack(const std::array<double, 4>& x) {
    return {{x[0], x[1]}, {x[2], x[3]}};
}

double sin_balance(double numerator, double coupling) {
    if (coupling == 0.0) {
        if (std::abs(numerator) > 0.0) {
            throw Error(ErrorCode::NoSteadyState, "gain/loss imbalance cannot be compensated without coupling");
        }
        return 0.0;
    }
    const double s = numerator / (2.0 * coupling);
    if (std::abs(s) > 1.0 + 1e-14) {
        throw Error(ErrorCode::NoSteadyState, "sine balance has no solution (|sin| > 1)");
    }
    return std::clamp(s, -1.0, 1.0);
}

}  // namespace

const char* to_string(SteadyKind kind) noexcept {
    return kind == SteadyKind::First ? "first" : "second";
}

const char* to_string(Stability s) noexcept {
    switch (s) {
        case Stability::Stable: return "Stable";
        case Stability::Marginal: return "Marginal";
        case Stability::Unstable: return "Unstable";
    }
    return "Unknown";
}

AmplitudePair rhs_cartesian(const AmplitudePair& a, const SystemParams& p) {
    const double n1 = std::norm(a.alpha1);
    const double n2 = std::norm(a.alpha2);
    const cplx d1 = -p.gamma1 * a.alpha1 - I * p.epsilon * a.alpha2 - I * p.kappa * std::conj(a.alpha2) -
                    I * (p.beta_c * n2 + 2.0 * p.beta1 * n1) * a.alpha1;
    const cplx d2 = -p.gamma2 * a.alpha2 - I * p.epsilon * a.alpha1 - I * p.kappa * std::conj(a.alpha1) -
                    I * (p.beta_c * n1 + 2.0 * p.beta2 * n2) * a.alpha2;
    return {d1, d2};
}

AmplitudePair PolarState::to_amplitudes() const {
    return {std::polar(rho1, phi1), std::polar(rho2, phi2)};
}

PolarState PolarState::from_amplitudes(const AmplitudePair& a) {
    return {std::abs(a.alpha1), std::abs(a.alpha2), std::arg(a.alpha1), std::arg(a.alpha2)};
}

std::array<double, 4> rhs_polar(const PolarState& s, const SystemParams& p) {
    const double phi = s.phi();
    const double psi = s.psi();
    const double cos_sum = p.epsilon * std::cos(phi) + p.kappa * std::cos(psi);
    return {
        -p.gamma1 * s.rho1 + (p.epsilon * std::sin(phi) - p.kappa * std::sin(psi)) * s.rho2,
        -p.gamma2 * s.rho2 - (p.epsilon * std::sin(phi) + p.kappa * std::sin(psi)) * s.rho1,
        -cos_sum * s.rho2 / s.rho1 - p.beta_c * s.rho2 * s.rho2 - 2.0 * p.beta1 * s.rho1 * s.rho1,
        -cos_sum * s.rho1 / s.rho2 - p.beta_c * s.rho1 * s.rho1 - 2.0 * p.beta2 * s.rho2 * s.rho2,
    };
}

std::vector<double> uniform_grid(double t_end, double dt) {
    if (!(t_end >= 0.0) || !(dt > 0.0) || !std::isfinite(t_end) || !std::isfinite(dt)) {
        throw Error(ErrorCode::InvalidParams, "grid needs t_end >= 0 and dt > 0");
    }
    const auto n = static_cast<std::size_t>(std::floor(t_end / dt + 1e-9));
    std::vector<double> grid(n + 1);
    for (std::size_t i = 0; i <= n; ++i) {
        grid[i] = static_cast<double>(i) * dt;
    }
    return grid;
}

AmplitudeTrajectory integrate(const AmplitudePair& alpha0, const SystemParams& params,
                              std::span<const double> grid, double tol) {
    AmplitudeTrajectory out;
    out.reserve(grid.size());
    auto rhs = [&params](const std::array<double, 4>& x, std::array<double, 4>& dx, double) {
        dx = pack(rhs_cartesian(unpack(x), params));
    };
    detail::integrate_on_grid<4>(rhs, pack(alpha0), grid, tol,
                                 [&out](const std::array<double, 4>& x, double t) {
                                     out.push_back({t, unpack(x)});
                                 });
    return out;
}

std::vector<PolarState> integrate_polar(const PolarState& state0, const SystemParams& params,
                                        std::span<const double> grid, double tol) {
    std::vector<PolarState> out;
    out.reserve(grid.size());
    auto rhs = [&params](const std::array<double, 4>& x, std::array<double, 4>& dx, double) {
        dx = rhs_polar({x[0], x[1], x[2], x[3]}, params);
    };
    detail::integrate_on_grid<4>(rhs, std::array<double, 4>{state0.rho1, state0.rho2, state0.phi1, state0.phi2},
                                 grid, tol, [&out](const std::array<double, 4>& x, double) {
                                     out.push_back({x[0], x[1], x[2], x[3]});
                                 });
    return out;
}

double SteadyState::phase_difference(const SystemParams& p) const {
    return std::atan2(std::sin(phi_st), p.epsilon != 0.0 ? c_epsilon / p.epsilon : 0.0);
}

double SteadyState::phase_sum(const SystemParams& p) const {
    return std::atan2(std::sin(psi_st), p.kappa != 0.0 ? c_kappa / p.kappa : 1.0);
}

PolarState SteadyState::polar(const SystemParams& p) const {
    const double phi = phase_difference(p);
    const double psi = phase_sum(p);
    return {rho1_st, rho2_st, 0.5 * (psi - phi), 0.5 * (psi + phi)};
}

AmplitudePair SteadyState::amplitudes(const SystemParams& p) const {
    return polar(p).to_amplitudes();
}

SteadyStateSet steady_states(const SystemParams& p) {
    require_steady_state_params(p);

    const double beta12 = std::pow(p.beta1 / p.beta2, 0.25);
    const double sin_psi = sin_balance(-p.gamma2 * beta12 - p.gamma1 / beta12, p.kappa);
    const double sin_phi = sin_balance(-p.gamma2 * beta12 + p.gamma1 / beta12, p.epsilon);
    const double abs_c_eps = p.epsilon * std::sqrt(1.0 - sin_phi * sin_phi);
    const double abs_c_kappa = std::abs(p.kappa) * std::sqrt(1.0 - sin_psi * sin_psi);
    const double kerr = p.beta_c * beta12 + 2.0 * p.beta1 / beta12;

    SteadyStateSet out;
    auto make = [&](SteadyKind kind, double sign_eps, double sign_kappa) -> std::optional<SteadyState> {
        SteadyState s;
        s.kind = kind;
        s.beta12 = beta12;
        s.phi_st = std::asin(sin_phi);
        s.psi_st = std::asin(sin_psi);
        s.c_epsilon = sign_eps * abs_c_eps;
        s.c_kappa = sign_kappa * (p.kappa < 0.0 ? -abs_c_kappa : abs_c_kappa);
        const double drive = -s.c_epsilon - s.c_kappa;
        if (std::abs(drive) <= kCollapseTolerance * p.epsilon) {
            s.rho1_st = 0.0;
            out.nontrivial_coincides_with_trivial = true;
        } else if (drive < 0.0) {
            return std::nullopt;
        } else {
            s.rho1_st = std::sqrt(drive / kerr);
        }
        s.rho2_st = beta12 * s.rho1_st;

        const AmplitudePair d = rhs_cartesian(s.amplitudes(p), p);
        const double residual = std::max(std::abs(d.alpha1), std::abs(d.alpha2));
        if (residual > 1e-10 * p.epsilon * std::max(1.0, s.rho1_st + s.rho2_st)) {
            return std::nullopt;
        }
        return s;
    };

    out.first = make(SteadyKind::First, -1.0, -1.0);
    if (!out.first) {
        out.first = make(SteadyKind::First, 1.0, 1.0);
    }
    out.second = make(SteadyKind::Second, -1.0, 1.0);
    if (!out.second) {
        out.second = make(SteadyKind::Second, 1.0, -1.0);
    }
    return out;
}

Eigen::Matrix4d stability_matrix(const SteadyState& st, const SystemParams& p) {
    const double b12 = st.beta12;
    const double b12sq = b12 * b12;
    const double r1 = st.rho1_st;
    const double r2 = st.rho2_st;
    const double s_eps = p.epsilon * std::sin(st.phi_st);
    const double s_kappa = p.kappa * std::sin(st.psi_st);
    const double ce = st.c_epsilon;
    const double ck = st.c_kappa;
    const double sum = ce + ck;

    // Coefficients of the 1/rho terms, -sum/rho2 and sum/rho1.
    double over_rho2 = 0.0;
    double over_rho1 = 0.0;
    if (r1 > 0.0 && r2 > 0.0) {
        over_rho2 = -sum / r2;
        over_rho1 = sum / r1;
    } else if (std::abs(sum) > kCollapseTolerance * p.epsilon) {
        throw Error(ErrorCode::ZeroAmplitude,
                    "steady-state amplitude is zero but the cosine balance is not; analyze alpha = 0 with the linear spectrum");
    }

    const double g_plus = over_rho2 * (1.0 + b12sq) + 2.0 * (2.0 * p.beta1 - p.beta_c) * r1;
    const double g_minus = over_rho2 * (1.0 - b12sq) + 2.0 * (-2.0 * p.beta1 - p.beta_c) * r1;
    const double h_plus = over_rho1 * (1.0 / b12sq + 1.0) - 2.0 * (2.0 * p.beta2 - p.beta_c) * r2;
    const double h_minus = over_rho1 * (1.0 / b12sq - 1.0) - 2.0 * (2.0 * p.beta2 + p.beta_c) * r2;
    const double i_plus = 1.0 / b12 - b12;
    const double i_minus = 1.0 / b12 + b12;

    Eigen::Matrix4d m;
    // clang-format off
    m << -p.gamma1,          s_eps - s_kappa,  ce * r2,          -ck * r2,
         -s_eps - s_kappa,   -p.gamma2,        -ce * r1,         -ck * r1,
         g_plus,             h_plus,           i_plus * s_eps,   i_plus * s_kappa,
         g_minus,            h_minus,          i_minus * s_eps,  i_minus * s_kappa;
    // clang-format on
    return m;
}

namespace {

void sort_frequencies(std::array<cplx, 4>& nu) {
    std::sort(nu.begin(), nu.end(), [](const cplx& a, const cplx& b) {
        if (std::abs(a.real() - b.real()) > 1e-12) {
            return a.real() < b.real();
        }
        return a.imag() < b.imag();
    });
}

}  // namespace

std::array<cplx, 4> pt_stability_frequencies(double ce, double ck, double beta, double beta_c) {
    const double sum = ce + ck;
    const cplx w1 = 2.0 * I * std::sqrt(cplx(-ck * sum, 0.0));
    const cplx w2 = 2.0 * I * std::sqrt(cplx(-2.0 * beta * ce * sum / (beta + 0.5 * beta_c), 0.0));
    std::array<cplx, 4> nu{w1, -w1, w2, -w2};
    sort_frequencies(nu);
    return nu;
}

double StabilityReport::max_imag() const {
    double m = -std::numeric_limits<double>::infinity();
    for (const auto& nu : frequencies) {
        m = std::max(m, nu.imag());
    }
    return m;
}

double StabilityReport::max_abs_real() const {
    double m = 0.0;
    for (const auto& nu : frequencies) {
        m = std::max(m, std::abs(nu.real()));
    }
    return m;
}

StabilityReport stability_frequencies(const SteadyState& st, const SystemParams& p) {
    const Eigen::Matrix4d m = stability_matrix(st, p);
    Eigen::EigenSolver<Eigen::Matrix4d> solver(m, false);
    if (solver.info() != Eigen::Success) {
        throw Error(ErrorCode::InvalidParams, "eigenvalue iteration did not converge");
    }
    StabilityReport report;
    for (int j = 0; j < 4; ++j) {
        report.frequencies[static_cast<std::size_t>(j)] = I * solver.eigenvalues()(j);
    }
    sort_frequencies(report.frequencies);

    const double tol = kStabilityTolerance * p.epsilon;
    const double max_im = report.max_imag();
    bool all_real = true;
    for (const auto& nu : report.frequencies) {
        all_real = all_real && std::abs(nu.imag()) <= tol;
    }
    if (max_im > tol) {
        report.classification = Stability::Unstable;
    } else if (all_real) {
        report.classification = Stability::Marginal;
    } else {
        report.classification = Stability::Stable;
    }

    if (validate(p).is_pt) {
        report.analytic = pt_stability_frequencies(st.c_epsilon, st.c_kappa, p.beta1, p.beta_c);
    }
    return report;
}

}  // namespace ptq
