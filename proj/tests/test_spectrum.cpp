#include "ptq/errors.hpp"
#include "ptq/fluctuations.hpp"
#include "ptq/spectrum.hpp"

#include <doctest.h>

#include <cmath>

using namespace ptq;
using doctest::Approx;

namespace {

const cplx I{0.0, 1.0};

}  // namespace

TEST_CASE("dynamical matrix") {
    SUBCASE("pure exchange couples the modes off-diagonally") {
        const Matrix4c g = dynamical_matrix({1.0, 0.0});
        for (int r = 0; r < 4; ++r) {
            for (int c = 0; c < 4; ++c) {
                const bool exchange = (r == 0 && c == 2) || (r == 2 && c == 0);
                const bool exchange_adj = (r == 1 && c == 3) || (r == 3 && c == 1);
                const cplx expected = exchange ? -I : (exchange_adj ? I : cplx{});
                CHECK(std::abs(g(r, c) - expected) < 1e-15);
            }
        }
    }
    SUBCASE("damping, gain and down-conversion entries") {
        const Matrix4c g = dynamical_matrix(SystemParams::pt(1.0, 0.5, 0.1, 0.0));
        CHECK(std::abs(g(0, 0) - cplx(-0.1)) < 1e-15);
        CHECK(std::abs(g(2, 2) - cplx(0.1)) < 1e-15);
        CHECK(std::abs(g(0, 3) - cplx(0.0, -0.5)) < 1e-15);
    }
    SUBCASE("equals the fluctuation drift at zero amplitude") {
        const SystemParams p{1.0, 0.4, 0.2, -0.05, 0.05, 0.03, 0.01};
        CHECK((dynamical_matrix(p) - drift_matrix({}, p)).norm() < 1e-15);
    }
}

TEST_CASE("eigenfrequencies") {
    {
        const auto [nu1, nu2] = eigenfrequencies(SystemParams::pt(1.0, 0.5, 0.0, 0.0));
        CHECK(nu1.real() == Approx(0.8660254));
        CHECK(nu2.real() == Approx(-0.8660254));
        CHECK(std::abs(nu1.imag()) < 1e-15);
    }
    {
        const auto [nu1, nu2] = eigenfrequencies({1.0, 0.5, 0.2, -0.1});
        CHECK(nu1.imag() == Approx(-0.05));
        CHECK(nu1.real() == Approx(0.852936).epsilon(1e-6));
        CHECK(nu2.real() == Approx(-0.852936).epsilon(1e-6));
    }
    {
        const auto [nu1, nu2] = eigenfrequencies(SystemParams::pt(1.0, 0.8, 0.6, 0.0));
        CHECK(std::abs(nu1) < 1e-7);
        CHECK(std::abs(nu2) < 1e-7);
    }
}

TEST_CASE("closed-form eigenvectors") {
    SUBCASE("lossless") {
        const LinearSpectrum s = eigenvectors(SystemParams::pt(1.0, 0.5, 0.0, 0.0));
        const Vector4c& v = s.plus_nu1();
        CHECK(v(0).real() == Approx(0.5 * 1.3660254));
        CHECK(v(1).real() == Approx(-0.5 * 0.3660254));
        CHECK(v(2).real() == Approx(0.5 * 1.3660254));
        CHECK(v(3).real() == Approx(-0.5 * 0.3660254));
        CHECK(v.imag().norm() < 1e-12);
    }
    SUBCASE("at the exceptional point the pairs coincide") {
        const LinearSpectrum s = eigenvectors(SystemParams::pt(1.0, 0.8, 0.6, 0.0));
        const Vector4c& v = s.plus_nu1();
        CHECK(std::abs(v(0) - cplx(0.5 * 1.2649111)) < 1e-7);
        CHECK(std::abs(v(1) - cplx(-0.5 * 0.6324555)) < 1e-7);
        CHECK(std::abs(v(2) - cplx(0.0, 0.5 * 1.2649111)) < 1e-7);
        CHECK(std::abs(v(3) - cplx(0.0, -0.5 * 0.6324555)) < 1e-7);
        CHECK((s.plus_nu1() - s.plus_nu2()).norm() < 1e-8);
    }
    SUBCASE("eigen-equation residual") {
        for (double gamma : {0.0, 0.1, 0.3, 0.6}) {
            for (double kappa : {0.0, 0.2, 0.5}) {
                const SystemParams p = SystemParams::pt(1.0, kappa, gamma, 0.0);
                if (*validate(p).mu_squared <= 0.0) {
                    continue;
                }
                const LinearSpectrum s = eigenvectors(p);
                const Matrix4c g = dynamical_matrix(p);
                const cplx nus[] = {s.nu1, s.nu1, s.nu2, s.nu2};
                for (int k = 0; k < 4; ++k) {
                    const Vector4c& v = s.eigvecs[k];
                    CHECK((g * v + I * nus[k] * v).norm() <= 1e-10 * v.norm());
                }
                CHECK(std::abs(s.nu1.imag()) <= 1e-12);
            }
        }
    }
    SUBCASE("approaching the exceptional point") {
        const double ep = ep_kappa(1.0, 0.3);
        double previous = 1e9;
        for (double gap : {1e-2, 1e-4, 1e-6}) {
            const LinearSpectrum s = eigenvectors(SystemParams::pt(1.0, ep - gap, 0.3, 0.0));
            const double d = (s.plus_nu1() - s.plus_nu2()).norm();
            CHECK(d < previous);
            previous = d;
        }
    }
    SUBCASE("errors") {
        auto code = [](const SystemParams& p) {
            try {
                eigenvectors(p);
            } catch (const Error& e) {
                return e.code();
            }
            return ErrorCode::ConfigError;
        };
        CHECK(code({1.0, 0.5, 0.2, -0.1}) == ErrorCode::NonPtParameters);
        CHECK(code(SystemParams::pt(1.0, 1.0, 0.0, 0.0)) == ErrorCode::DegenerateXi);
    }
}

TEST_CASE("ep_kappa") {
    CHECK(ep_kappa(1.0, 0.0) == 1.0);
    CHECK(ep_kappa(1.0, 0.6) == Approx(0.8));
    CHECK(ep_kappa(1.0, 0.1) == Approx(0.9949874));
    CHECK(*validate(SystemParams::pt(1.0, ep_kappa(1.0, 0.37), 0.37, 0.0)).regime == Regime::ExceptionalPoint);
    try {
        ep_kappa(1.0, 1.5);
        FAIL("expected an error");
    } catch (const Error& e) {
        CHECK(e.code() == ErrorCode::GammaExceedsEpsilon);
    }
}
