#include "ptq/classical.hpp"
#include "ptq/errors.hpp"
#include "ptq/fluctuations.hpp"
#include "ptq/lossless.hpp"
#include "ptq/quantifiers.hpp"
#include "ptq/spectrum.hpp"

#include <doctest.h>

#include <cmath>
#include <numbers>

using namespace ptq;
using doctest::Approx;

namespace {

const cplx I{0.0, 1.0};
const SystemParams kLangevin = SystemParams::pt(1.0, 0.9, 0.1, 0.05);

AmplitudePair first_kind(const SystemParams& p) { return steady_states(p).first->amplitudes(p); }

double max_diff(const Matrix4c& a, const Matrix4c& b) { return (a - b).cwiseAbs().maxCoeff(); }

}  // namespace

TEST_CASE("drift matrix") {
    SUBCASE("self-Kerr terms") {
        const SystemParams p{0.0, 0.0, 0.0, 0.0, 0.05, 0.0, 0.0};
        const Matrix4c m = drift_matrix({1.0, 0.0}, p);
        CHECK(std::abs(m(0, 0) - cplx(0.0, -0.2)) < 1e-15);
        CHECK(std::abs(m(0, 1) - cplx(0.0, -0.1)) < 1e-15);
    }
    SUBCASE("cross-Kerr dressing of the exchange term") {
        const SystemParams p{0.0, 0.0, 0.0, 0.0, 0.0, 0.0, 0.1};
        const Matrix4c m = drift_matrix({1.0, 1.0}, p);
        CHECK(std::abs(m(0, 2) - cplx(0.0, -0.1)) < 1e-15);
    }
    SUBCASE("adjoint rows are conjugates with swapped columns") {
        const SystemParams p{1.0, 0.4, 0.2, -0.05, 0.05, 0.03, 0.02};
        const Matrix4c m = drift_matrix({cplx(0.7, -0.3), cplx(-0.4, 1.1)}, p);
        const int swap[] = {1, 0, 3, 2};
        for (int r : {0, 2}) {
            for (int c = 0; c < 4; ++c) {
                CHECK(std::abs(m(r + 1, swap[c]) - std::conj(m(r, c))) < 1e-15);
            }
        }
    }
}

TEST_CASE("diffusion and initial moments") {
    const Eigen::Matrix4d q = diffusion_matrix({1.0, 0.0, 0.3, -0.2});
    CHECK(q(0, 1) == Approx(0.6));
    CHECK(q(3, 2) == Approx(0.4));
    CHECK(q.cwiseAbs().sum() == Approx(1.0));

    const MomentMatrix n = initial_moments();
    CHECK(n.commutator1() == cplx(1.0));
    CHECK(n.commutator2() == cplx(1.0));
    const GaussianCoefficients k = extract_coefficients(n, {});
    CHECK(k.B1 == 0.0);
    CHECK(k.B2 == 0.0);
    CHECK(std::abs(k.C1) + std::abs(k.C2) + std::abs(k.D) + std::abs(k.Dbar) == 0.0);
    CHECK(covariance(k).C.isIdentity());
}

TEST_CASE("propagate_moments") {
    SUBCASE("lossless down-conversion") {
        const double xi = std::sqrt(0.75);
        const std::vector<double> grid{0.0, 0.5 * std::numbers::pi / xi};
        const auto traj = propagate_moments({}, SystemParams::pt(1.0, 0.5, 0.0, 0.0), true, grid);
        CHECK(extract_coefficients(traj.back().moments, {}).B1 == Approx(1.0 / 3.0).epsilon(1e-9));
    }
    SUBCASE("damping alone without noise drains the commutator") {
        SystemParams p;
        p.epsilon = 0.0;
        p.gamma1 = 0.1;
        for (const auto& s : propagate_moments({}, p, false, uniform_grid(10.0, 0.5))) {
            CHECK(std::abs(s.moments.N(0, 1) - std::exp(-0.2 * s.t)) < 1e-8);
        }
    }
    SUBCASE("gain alone without noise inflates the commutator") {
        SystemParams p;
        p.epsilon = 0.0;
        p.gamma2 = -0.1;
        for (const auto& s : propagate_moments({}, p, false, uniform_grid(10.0, 0.5))) {
            CHECK(std::abs(s.moments.commutator2() - std::exp(0.2 * s.t)) < 1e-8 * std::exp(0.2 * s.t));
        }
    }
    SUBCASE("with noise the damped mode keeps its commutator") {
        SystemParams p;
        p.epsilon = 0.0;
        p.gamma1 = 0.1;
        for (const auto& s : propagate_moments({}, p, true, uniform_grid(10.0, 0.5))) {
            CHECK(std::abs(s.moments.N(0, 1) - 1.0) < 1e-12);
        }
    }
    SUBCASE("commutators and conjugation structure along a Kerr trajectory") {
        const AmplitudePair a0{cplx(1.0, 0.5), cplx(-0.3, 0.2)};
        for (const auto& s : propagate_moments(a0, kLangevin, true, uniform_grid(10.0, 0.1), 1e-13)) {
            CHECK(std::abs(s.moments.commutator1() - 1.0) < 1e-8);
            CHECK(std::abs(s.moments.commutator2() - 1.0) < 1e-8);
            const Matrix4c& n = s.moments.N;
            // Moments reach ~1e3 here, so the structure is checked relative to their size.
            const double tol = 1e-10 * std::max(1.0, n.cwiseAbs().maxCoeff());
            // <da+ da+> = <da da>*, <da2 da1+> = <da2+ da1>*.
            CHECK(std::abs(n(1, 1) - std::conj(n(0, 0))) < tol);
            CHECK(std::abs(n(3, 3) - std::conj(n(2, 2))) < tol);
            CHECK(std::abs(n(3, 0) - std::conj(n(2, 1))) < tol);
        }
    }
}

TEST_CASE("propagator and noise quadrature") {
    SUBCASE("trivial at t = 0") {
        const std::vector<double> grid{0.0};
        const auto q = propagation_and_noise_quadrature({}, kLangevin, grid);
        CHECK(q[0].propagator.P.isIdentity());
        CHECK(q[0].noise_moments.isZero());
    }
    SUBCASE("no noise without damping or gain") {
        const auto q = propagation_and_noise_quadrature({0.3, 0.1}, SystemParams::pt(1.0, 0.4, 0.0, 0.05),
                                                        uniform_grid(3.0, 1.0));
        for (const auto& s : q) {
            CHECK(s.noise_moments.isZero());
        }
    }
    SUBCASE("agrees with the moment equation along a moving trajectory") {
        const AmplitudePair a0{cplx(1.0, 0.5), cplx(-0.3, 0.2)};
        const auto grid = uniform_grid(5.0, 0.5);
        const auto ode = propagate_moments(a0, kLangevin, true, grid);
        const auto quad = propagation_and_noise_quadrature(a0, kLangevin, grid);
        for (std::size_t i = 0; i < grid.size(); ++i) {
            const MomentMatrix n = moments_from_propagator(quad[i].propagator, quad[i].noise_moments);
            CHECK(max_diff(n.N, ode[i].moments.N) <= 1e-6);
        }
    }
}

TEST_CASE("constant-coefficient solution") {
    SUBCASE("t = 0") {
        const std::vector<double> grid{0.0};
        const auto s = constant_coefficient_solution({}, SystemParams::pt(1.0, 0.5, 0.1, 0.05), grid);
        CHECK(max_diff(s.samples[0].propagator.P, Matrix4c::Identity()) < 1e-12);
        CHECK(s.samples[0].noise_moments.cwiseAbs().maxCoeff() < 1e-14);
    }
    SUBCASE("lossless propagator") {
        const double xi = std::sqrt(0.75);
        const auto grid = uniform_grid(5.0, 0.5);
        const auto s = constant_coefficient_solution({}, SystemParams::pt(1.0, 0.5, 0.0, 0.0), grid);
        for (const auto& sample : s.samples) {
            const double t = sample.t;
            CHECK(std::abs(sample.propagator.U()(0, 0) - std::cos(xi * t)) < 1e-10);
            CHECK(std::abs(sample.propagator.V()(0, 1) - (-I * (0.5 / xi) * std::sin(xi * t))) < 1e-10);
        }
    }
    SUBCASE("matches the moment equation at a steady state") {
        const AmplitudePair a = first_kind(kLangevin);
        const auto grid = uniform_grid(5.0, 0.25);
        const auto ode = propagate_moments(a, kLangevin, true, grid, 1e-13);
        const auto closed = constant_coefficient_solution(a, kLangevin, grid);
        for (std::size_t i = 0; i < grid.size(); ++i) {
            const MomentMatrix n = moments_from_propagator(closed.samples[i].propagator, closed.samples[i].noise_moments);
            CHECK(max_diff(n.N, ode[i].moments.N) <= 1e-8);
        }
    }
    SUBCASE("refuses the defective exceptional point") {
        const std::vector<double> grid{1.0};
        try {
            constant_coefficient_solution({}, SystemParams::pt(1.0, 0.8, 0.6, 0.0), grid);
            FAIL("expected an error");
        } catch (const Error& e) {
            CHECK(e.code() == ErrorCode::DefectiveMatrix);
        }
    }
    SUBCASE("refuses a moving classical solution") {
        const std::vector<double> grid{1.0};
        CHECK_THROWS_AS(constant_coefficient_solution({1.0, 0.0}, kLangevin, grid), Error);
    }
}
