#include "ptq/errors.hpp"
#include "ptq/model.hpp"

#include <doctest.h>

#include <cmath>
#include <limits>
#include <numbers>

using namespace ptq;
using doctest::Approx;

TEST_CASE("validate classifies PT regimes") {
    SUBCASE("Pythagorean triple sits on the exceptional point") {
        const PtClass c = validate(SystemParams::pt(1.0, 0.8, 0.6, 0.05));
        CHECK(c.is_pt);
        CHECK(*c.regime == Regime::ExceptionalPoint);
        CHECK(*c.mu_squared == Approx(0.0).epsilon(1e-15));
    }
    SUBCASE("lossless coupling is oscillatory") {
        const PtClass c = validate(SystemParams::pt(1.0, 0.5, 0.0, 0.0));
        CHECK(c.is_pt);
        CHECK(*c.mu_squared == Approx(0.75));
        CHECK(*c.regime == Regime::Oscillatory);
    }
    SUBCASE("strong down-conversion breaks the symmetry") {
        CHECK(*validate(SystemParams::pt(1.0, 0.9, 0.6, 0.0)).regime == Regime::Broken);
    }
    SUBCASE("unbalanced gain and loss is not PT") {
        SystemParams p{1.0, 0.5, 0.2, -0.1};
        const PtClass c = validate(p);
        CHECK_FALSE(c.is_pt);
        CHECK_FALSE(c.mu_squared.has_value());
        CHECK_FALSE(c.regime.has_value());
    }
    SUBCASE("unequal Kerr terms are not PT") {
        SystemParams p{1.0, 0.5, 0.1, -0.1, 0.05, 0.06};
        CHECK_FALSE(validate(p).is_pt);
    }
}

TEST_CASE("validate rejects bad rates") {
    const double nan = std::numeric_limits<double>::quiet_NaN();
    CHECK_THROWS_AS(validate({1.0, nan}), Error);
    CHECK_THROWS_AS(validate({-1.0}), Error);
    CHECK_THROWS_AS(validate({1.0, 0.0, -0.1, 0.0}), Error);
    CHECK_THROWS_AS(validate({1.0, 0.0, 0.1, 0.1}), Error);
    try {
        validate({1.0, 0.0, 0.0, 0.5});
        FAIL("expected an error");
    } catch (const Error& e) {
        CHECK(e.code() == ErrorCode::InvalidParams);
    }
    CHECK_NOTHROW(validate({0.0, 0.0, 0.1, 0.0}));  // decoupled modes are allowed
}

TEST_CASE("steady-state preconditions on the Kerr terms") {
    CHECK_NOTHROW(require_steady_state_params(SystemParams::pt(1.0, 0.5, 0.1, 0.05)));
    auto code = [](const SystemParams& p) {
        try {
            require_steady_state_params(p);
        } catch (const Error& e) {
            return e.code();
        }
        return ErrorCode::ConfigError;
    };
    CHECK(code(SystemParams::pt(1.0, 0.5, 0.1, 0.0)) == ErrorCode::InvalidBeta);
    CHECK(code({1.0, 0.5, 0.1, -0.1, 0.05, 0.05, -0.2}) == ErrorCode::InvalidBeta);
    CHECK(code({1.0, 0.5, 0.1, -0.1, 0.05, 0.05, -0.09}) == ErrorCode::ConfigError);  // no error
}

TEST_CASE("to_amplitudes") {
    SUBCASE("zero intensity") {
        const AmplitudePair a = to_amplitudes({0.0, 0.7, 1.2, -0.4});
        CHECK(std::abs(a.alpha1) == 0.0);
        CHECK(std::abs(a.alpha2) == 0.0);
    }
    SUBCASE("balanced in-phase input") {
        const AmplitudePair a = to_amplitudes({1.0, std::numbers::pi / 4, 0.0, 0.0});
        CHECK(a.alpha1.real() == Approx(1.0 / std::sqrt(2.0)));
        CHECK(a.alpha1.imag() == Approx(0.0));
        CHECK(a.alpha2.real() == Approx(1.0 / std::sqrt(2.0)));
        CHECK(a.alpha2.imag() == Approx(0.0));
    }
    SUBCASE("out-of-phase input") {
        const AmplitudePair a = to_amplitudes({1.0, std::numbers::pi / 4, std::numbers::pi, 0.0});
        CHECK(a.alpha1.real() == Approx(0.0));
        CHECK(a.alpha1.imag() == Approx(-1.0 / std::sqrt(2.0)));
        CHECK(a.alpha2.real() == Approx(0.0));
        CHECK(a.alpha2.imag() == Approx(1.0 / std::sqrt(2.0)));
    }
}

TEST_CASE("to_amplitudes and from_amplitudes round trip") {
    for (double intensity : {0.3, 1.0, 100.0}) {
        for (double theta : {0.1, 0.7, 1.4}) {
            for (double phi : {-2.9, -0.5, 0.0, 1.1, 3.0}) {
                for (double psi : {-1.0, 0.0, 2.5}) {
                    const InitialStateSpec in{intensity, theta, phi, psi};
                    const AmplitudePair a = to_amplitudes(in);
                    CHECK(a.intensity() == Approx(intensity).epsilon(1e-12));
                    const InitialStateSpec out = from_amplitudes(a);
                    CHECK(out.total_intensity == Approx(intensity).epsilon(1e-12));
                    CHECK(out.theta == Approx(theta).epsilon(1e-12));
                    CHECK(std::abs(wrap_angle(out.phi - phi)) < 1e-12);
                    CHECK(std::abs(wrap_angle(out.psi - psi)) < 1e-12);
                }
            }
        }
    }
}

TEST_CASE("wrap_angle maps into (-pi, pi]") {
    CHECK(wrap_angle(std::numbers::pi) == Approx(std::numbers::pi));
    CHECK(wrap_angle(-std::numbers::pi) == Approx(std::numbers::pi));
    CHECK(wrap_angle(3 * std::numbers::pi / 2) == Approx(-std::numbers::pi / 2));
    CHECK(wrap_angle(0.25) == 0.25);
}
