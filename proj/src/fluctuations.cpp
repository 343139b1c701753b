#include "ptq/fluctuations.hpp"

#include "ptq/detail/ode.hpp"
#include "ptq/errors.hpp"

#include <boost/math/quadrature/gauss.hpp>

#include <algorithm>
#include <cmath>

namespace ptq {

namespace {

constexpr cplx I{0.0, 1.0};
constexpr std::size_t kStateSize = 4 + 32;
using State = std::array<double, kStateSize>;

void pack(const AmplitudePair& a, const Matrix4c& m, State& x) {
    x[0] = a.alpha1.real();
    x[1] = a.alpha1.imag();
    x[2] = a.alpha2.real();
    x[3] = a.alpha2.imag();
    for (int k = 0; k < 16; ++k) {
        const cplx v = m(k % 4, k / 4);
        x[static_cast<std::size_t>(4 + 2 * k)] = v.real();
        x[static_cast<std::size_t>(5 + 2 * k)] = v.imag();
    }
}

AmplitudePair unpack_alpha(const State& x) {
    return {{x[0], x[1]}, {x[2], x[3]}};
}

Matrix4c unpack_matrix(const State& x) {
    Matrix4c m;
    for (int k = 0; k < 16; ++k) {
        m(k % 4, k / 4) = {x[static_cast<std::size_t>(4 + 2 * k)], x[static_cast<std::size_t>(5 + 2 * k)]};
    }
    return m;
}

}  // namespace

Matrix4c drift_matrix(const AmplitudePair& a, const SystemParams& p) {
    const cplx a1 = a.alpha1;
    const cplx a2 = a.alpha2;
    const double n1 = std::norm(a1);
    const double n2 = std::norm(a2);

    // Rows for da1 and da2; the a^+ rows are their conjugates with columns swapped pairwise.
    const cplx m11 = -(p.gamma1 + I * (4.0 * p.beta1 * n1 + p.beta_c * n2));
    const cplx m12 = -2.0 * I * p.beta1 * a1 * a1;
    const cplx m13 = -I * (p.epsilon + p.beta_c * a1 * std::conj(a2));
    const cplx m14 = -I * (p.kappa + p.beta_c * a1 * a2);
    const cplx m31 = -I * (p.epsilon + p.beta_c * std::conj(a1) * a2);
    const cplx m32 = -I * (p.kappa + p.beta_c * a1 * a2);
    const cplx m33 = -(p.gamma2 + I * (4.0 * p.beta2 * n2 + p.beta_c * n1));
    const cplx m34 = -2.0 * I * p.beta2 * a2 * a2;

    Matrix4c m;
    // clang-format off
    m << m11,             m12,             m13,             m14,
         std::conj(m12),  std::conj(m11),  std::conj(m14),  std::conj(m13),
         m31,             m32,             m33,             m34,
         std::conj(m32),  std::conj(m31),  std::conj(m34),  std::conj(m33);
    // clang-format on
    return m;
}

Eigen::Matrix4d diffusion_matrix(const SystemParams& p) {
    Eigen::Matrix4d q = Eigen::Matrix4d::Zero();
    q(0, 1) = 2.0 * p.gamma1;
    q(3, 2) = -2.0 * p.gamma2;
    return q;
}

MomentMatrix initial_moments(InitialFluctuations) {
    MomentMatrix m;
    m.N(0, 1) = 1.0;
    m.N(2, 3) = 1.0;
    return m;
}

void propagate_moments(const AmplitudePair& alpha0, const SystemParams& params, bool noise,
                       std::span<const double> grid, double tol, const MomentMatrix& initial,
                       const std::function<void(const MomentSample&)>& sink) {
    const Matrix4c q = noise ? Matrix4c(diffusion_matrix(params).cast<cplx>()) : Matrix4c(Matrix4c::Zero());
    auto rhs = [&params, &q](const State& x, State& dx, double) {
        const AmplitudePair a = unpack_alpha(x);
        const Matrix4c m = drift_matrix(a, params);
        const Matrix4c n = unpack_matrix(x);
        const Matrix4c dn = m * n + n * m.transpose() + q;
        pack(rhs_cartesian(a, params), dn, dx);
    };

    State x0{};
    pack(alpha0, initial.N, x0);
    detail::integrate_on_grid<kStateSize>(rhs, x0, grid, tol, [&sink](const State& x, double t) {
        sink({t, unpack_alpha(x), {unpack_matrix(x), t}});
    });
}

MomentTrajectory propagate_moments(const AmplitudePair& alpha0, const SystemParams& params, bool noise,
                                   std::span<const double> grid, double tol, const MomentMatrix& initial) {
    MomentTrajectory out;
    out.reserve(grid.size());
    propagate_moments(alpha0, params, noise, grid, tol, initial,
                      [&out](const MomentSample& s) { out.push_back(s); });
    return out;
}

Eigen::Matrix2cd PropagationMatrix::U() const {
    Eigen::Matrix2cd u;
    u << P(0, 0), P(0, 2), P(2, 0), P(2, 2);
    return u;
}

Eigen::Matrix2cd PropagationMatrix::V() const {
    Eigen::Matrix2cd v;
    v << P(0, 1), P(0, 3), P(2, 1), P(2, 3);
    return v;
}

MomentMatrix moments_from_propagator(const PropagationMatrix& prop, const Matrix4c& noise_moments,
                                     const MomentMatrix& initial) {
    MomentMatrix m;
    m.N = prop.P * initial.N * prop.P.transpose() + noise_moments;
    return m;
}

std::vector<QuadratureSample> propagation_and_noise_quadrature(const AmplitudePair& alpha0,
                                                               const SystemParams& params,
                                                               std::span<const double> grid, double tol) {
    detail::check_grid(grid);
    using Rule = boost::math::quadrature::gauss<double, 10>;
    constexpr double kMaxPanel = 0.25;

    // Quadrature nodes and weights on every grid interval, interleaved with the grid points.
    struct Node {
        double t;
        double weight;  // 0 for grid points
    };
    std::vector<Node> nodes;
    nodes.push_back({grid[0], 0.0});
    for (std::size_t k = 0; k + 1 < grid.size(); ++k) {
        const double a = grid[k];
        const double b = grid[k + 1];
        const auto panels = static_cast<std::size_t>(std::ceil((b - a) / (kMaxPanel / params.epsilon)));
        const double h = (b - a) / static_cast<double>(panels);
        for (std::size_t j = 0; j < panels; ++j) {
            const double mid = a + (static_cast<double>(j) + 0.5) * h;
            std::vector<Node> panel;
            for (std::size_t i = 0; i < Rule::abscissa().size(); ++i) {
                const double x = Rule::abscissa()[i];
                const double w = 0.5 * h * Rule::weights()[i];
                panel.push_back({mid - 0.5 * h * x, w});
                if (x != 0.0) {
                    panel.push_back({mid + 0.5 * h * x, w});
                }
            }
            std::sort(panel.begin(), panel.end(), [](const Node& l, const Node& r) { return l.t < r.t; });
            nodes.insert(nodes.end(), panel.begin(), panel.end());
        }
        nodes.push_back({b, 0.0});
    }
    std::vector<double> times(nodes.size());
    std::transform(nodes.begin(), nodes.end(), times.begin(), [](const Node& n) { return n.t; });

    auto rhs = [&params](const State& x, State& dx, double) {
        const AmplitudePair a = unpack_alpha(x);
        pack(rhs_cartesian(a, params), drift_matrix(a, params) * unpack_matrix(x), dx);
    };

    const Matrix4c q = diffusion_matrix(params).cast<cplx>();
    Matrix4c accumulated = Matrix4c::Zero();  // int_0^t P(s)^{-1} Q P(s)^{-T} ds
    std::vector<QuadratureSample> out;
    out.reserve(grid.size());
    std::size_t index = 0;

    State x0{};
    pack(alpha0, Matrix4c::Identity(), x0);
    detail::integrate_on_grid<kStateSize>(rhs, x0, times, tol, [&](const State& x, double t) {
        const Node& node = nodes[index++];
        const Matrix4c p = unpack_matrix(x);
        if (node.weight > 0.0) {
            const Matrix4c inv = p.inverse();
            accumulated += node.weight * (inv * q * inv.transpose());
            return;
        }
        QuadratureSample s;
        s.t = t;
        s.alpha = unpack_alpha(x);
        s.propagator.P = p;
        s.noise_moments = p * accumulated * p.transpose();
        out.push_back(s);
    });
    return out;
}

namespace {

// int_0^t exp(sigma s) ds, with a series where the difference quotient cancels.
cplx exp_integral(cplx sigma, double t) {
    const cplx z = sigma * t;
    if (std::abs(z) < 1e-3) {
        cplx term = 1.0;
        cplx sum = 1.0;
        for (int k = 2; k <= 7; ++k) {
            term *= z / static_cast<double>(k);
            sum += term;
        }
        return t * sum;
    }
    return (std::exp(z) - 1.0) / sigma;
}

}  // namespace

ConstantCoefficientSolution constant_coefficient_solution(const AmplitudePair& alpha_st, const SystemParams& params,
                                                          std::span<const double> times) {
    const AmplitudePair d = rhs_cartesian(alpha_st, params);
    const double scale = std::max(1.0, std::sqrt(alpha_st.intensity()));
    if (std::max(std::abs(d.alpha1), std::abs(d.alpha2)) > 1e-9 * params.epsilon * scale) {
        throw Error(ErrorCode::InvalidParams, "closed form needs a stationary classical solution");
    }

    const Matrix4c m = drift_matrix(alpha_st, params);
    Eigen::ComplexEigenSolver<Matrix4c> solver(m);
    if (solver.info() != Eigen::Success) {
        throw Error(ErrorCode::DefectiveMatrix, "eigen decomposition did not converge");
    }

    ConstantCoefficientSolution sol;
    sol.Y = solver.eigenvectors();
    Eigen::JacobiSVD<Matrix4c> svd(sol.Y);
    const auto& sv = svd.singularValues();
    sol.condition = sv(3) > 0.0 ? sv(0) / sv(3) : std::numeric_limits<double>::infinity();
    if (!(sol.condition <= kDefectiveCondition)) {
        throw Error(ErrorCode::DefectiveMatrix, "drift matrix is (nearly) defective; use the quadrature path");
    }
    sol.y = sol.Y.inverse();

    Eigen::Vector4cd lambda = solver.eigenvalues();  // -i nu
    for (int l = 0; l < 4; ++l) {
        sol.frequencies[static_cast<std::size_t>(l)] = I * lambda(l);
    }

    // Projected diffusion 2 [g1 y_l1 y_l'2 - g2 y_l4 y_l'3] = (y Q y^T)_{ll'}.
    const Matrix4c projected = sol.y * diffusion_matrix(params).cast<cplx>() * sol.y.transpose();

    sol.samples.reserve(times.size());
    for (double t : times) {
        ConstantCoefficientSample s;
        s.t = t;
        Eigen::Vector4cd growth;
        for (int l = 0; l < 4; ++l) {
            growth(l) = std::exp(lambda(l) * t);
        }
        s.propagator.P = sol.Y * growth.asDiagonal() * sol.y;

        Matrix4c weighted;
        for (int l = 0; l < 4; ++l) {
            for (int lp = 0; lp < 4; ++lp) {
                weighted(l, lp) = projected(l, lp) * exp_integral(lambda(l) + lambda(lp), t);
            }
        }
        s.noise_moments = sol.Y * weighted * sol.Y.transpose();
        sol.samples.push_back(s);
    }
    return sol;
}

}  // namespace ptq
