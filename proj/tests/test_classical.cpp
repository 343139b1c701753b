#include "ptq/classical.hpp"
#include "ptq/errors.hpp"
#include "ptq/spectrum.hpp"

#include <doctest.h>

#include <Eigen/Eigenvalues>

#include <algorithm>
#include <cmath>
#include <vector>

using namespace ptq;
using doctest::Approx;

namespace {

const SystemParams kMap = SystemParams::pt(1.0, 0.5, 0.1, 0.05);
const SystemParams kLangevin = SystemParams::pt(1.0, 0.9, 0.1, 0.05);

double distance(const AmplitudePair& a, const AmplitudePair& b) {
    return std::max(std::abs(a.alpha1 - b.alpha1), std::abs(a.alpha2 - b.alpha2));
}

}  // namespace

TEST_CASE("classical right-hand side") {
    const SystemParams p = SystemParams::pt(1.0, 0.3, 0.2, 0.05, 0.02);
    const AmplitudePair zero = rhs_cartesian({}, p);
    CHECK(std::abs(zero.alpha1) == 0.0);
    CHECK(std::abs(zero.alpha2) == 0.0);

    const AmplitudePair exchange = rhs_cartesian({1.0, 0.0}, {1.0, 0.0});
    CHECK(std::abs(exchange.alpha1) < 1e-15);
    CHECK(std::abs(exchange.alpha2 - cplx(0.0, -1.0)) < 1e-15);

    const AmplitudePair kerr = rhs_cartesian({1.0, 0.0}, {0.0, 0.0, 0.0, 0.0, 0.05, 0.0, 0.0});
    CHECK(std::abs(kerr.alpha1 - cplx(0.0, -0.1)) < 1e-15);
    CHECK(std::abs(kerr.alpha2) < 1e-15);
}

TEST_CASE("integrate") {
    SUBCASE("pure exchange oscillates between the modes") {
        const auto grid = uniform_grid(10.0, 0.1);
        for (const auto& s : integrate({1.0, 0.0}, {1.0, 0.0}, grid)) {
            CHECK(std::abs(s.alpha.alpha1 - cplx(std::cos(s.t))) < 1e-8);
            CHECK(std::abs(s.alpha.alpha2 - cplx(0.0, -std::sin(s.t))) < 1e-8);
        }
    }
    SUBCASE("zero stays zero") {
        for (const auto& s : integrate({}, kLangevin, uniform_grid(5.0, 0.5))) {
            CHECK(s.alpha.intensity() == 0.0);
        }
    }
    SUBCASE("a steady state does not move") {
        const AmplitudePair a0 = steady_states(kLangevin).first->amplitudes(kLangevin);
        for (const auto& s : integrate(a0, kLangevin, uniform_grid(10.0, 0.1))) {
            CHECK(distance(s.alpha, a0) < 1e-6);
        }
    }
    SUBCASE("polar and Cartesian forms agree away from zero amplitude") {
        const SystemParams p{1.0, 0.4, 0.1, -0.05, 0.05, 0.04, 0.01};
        const AmplitudePair a0{cplx(0.8, 0.3), cplx(-0.2, 0.9)};
        const auto grid = uniform_grid(5.0, 0.25);
        const auto cart = integrate(a0, p, grid, 1e-12);
        const auto polar = integrate_polar(PolarState::from_amplitudes(a0), p, grid, 1e-12);
        for (std::size_t i = 0; i < grid.size(); ++i) {
            CHECK(distance(cart[i].alpha, polar[i].to_amplitudes()) < 1e-8);
        }
    }
    SUBCASE("runaway growth reports the reached time") {
        // Broken PT symmetry with a strong seed and no Kerr saturation grows exponentially.
        const SystemParams p = SystemParams::pt(1.0, 3.0, 0.0, 0.0);
        try {
            integrate({1e100, 0.0}, p, uniform_grid(100.0, 1.0));
            FAIL("expected a step failure");
        } catch (const StepFailure& e) {
            CHECK(e.code() == ErrorCode::StepFailure);
            CHECK(e.reached_time() >= 0.0);
            CHECK(e.reached_time() < 100.0);
        }
    }
    SUBCASE("grid validation") {
        const std::vector<double> bad{0.0, 1.0, 0.5};
        CHECK_THROWS_AS(integrate({1.0, 0.0}, kMap, bad), Error);
    }
}

TEST_CASE("uniform_grid") {
    CHECK(uniform_grid(0.0, 0.1).size() == 1);
    const auto g = uniform_grid(1.0, 0.1);
    CHECK(g.size() == 11);
    CHECK(g.back() == Approx(1.0));
    CHECK_THROWS_AS(uniform_grid(1.0, 0.0), Error);
}

TEST_CASE("steady states") {
    SUBCASE("first kind for the stability-map parameters") {
        const SteadyStateSet set = steady_states(kMap);
        REQUIRE(set.first);
        CHECK(set.trivial);
        CHECK(set.first->psi_st == Approx(0.0));
        CHECK(set.first->phi_st == Approx(0.1001674));
        CHECK(set.first->c_epsilon == Approx(-0.9949874));
        CHECK(set.first->c_kappa == Approx(-0.5));
        CHECK(set.first->rho1_st == Approx(3.8665069).epsilon(1e-6));
        CHECK(set.first->rho2_st == Approx(set.first->rho1_st));
    }
    SUBCASE("every returned state is a fixed point") {
        for (const SystemParams& p : {kMap, kLangevin, SystemParams{1.0, 0.6, 0.15, -0.05, 0.05, 0.08, 0.02}}) {
            const SteadyStateSet set = steady_states(p);
            for (const auto* st : {&set.first, &set.second}) {
                if (*st) {
                    const AmplitudePair d = rhs_cartesian((*st)->amplitudes(p), p);
                    CHECK(std::max(std::abs(d.alpha1), std::abs(d.alpha2)) <= 1e-10);
                }
            }
        }
    }
    SUBCASE("equal Kerr terms and balanced rates give equal amplitudes") {
        const SteadyStateSet set = steady_states(SystemParams::pt(1.0, 0.7, 0.2, 0.03));
        REQUIRE(set.first);
        CHECK(set.first->rho1_st == Approx(set.first->rho2_st));
        CHECK(set.first->beta12 == 1.0);
    }
    SUBCASE("unequal Kerr terms scale the amplitudes") {
        const SystemParams p{1.0, 0.5, 0.1, -0.1, 0.08, 0.02, 0.0};
        const SteadyStateSet set = steady_states(p);
        REQUIRE(set.first);
        CHECK(set.first->rho2_st / set.first->rho1_st == Approx(std::pow(4.0, 0.25)));
    }
    SUBCASE("second kind collapses onto zero at the exceptional point") {
        const SystemParams ep = SystemParams::pt(1.0, ep_kappa(1.0, 0.1), 0.1, 0.05);
        const SteadyStateSet set = steady_states(ep);
        REQUIRE(set.second);
        CHECK(set.second->c_epsilon == Approx(-set.second->c_kappa));
        CHECK(set.second->rho1_st == 0.0);
        CHECK(set.nontrivial_coincides_with_trivial);
    }
    SUBCASE("errors") {
        auto code = [](const SystemParams& p) {
            try {
                steady_states(p);
            } catch (const Error& e) {
                return e.code();
            }
            return ErrorCode::ConfigError;
        };
        CHECK(code(SystemParams::pt(1.0, 0.5, 3.0, 0.05)) == ErrorCode::NoSteadyState);
        CHECK(code({1.0, 0.5, 0.1, -0.1, 0.05, 0.0}) == ErrorCode::InvalidBeta);
    }
}

TEST_CASE("stability matrix and frequencies") {
    const SteadyStateSet set = steady_states(kMap);
    REQUIRE(set.first);
    REQUIRE(set.second);

    SUBCASE("structure for balanced Kerr terms") {
        const Eigen::Matrix4d m = stability_matrix(*set.first, kMap);
        CHECK(m(0, 0) == Approx(-0.1));
        CHECK(m(1, 1) == Approx(0.1));
        CHECK(m(2, 2) == Approx(0.0));                   // I+ vanishes
        CHECK(m(3, 2) == Approx(2.0 * 0.1));             // I- = 2, s_eps = gamma
        CHECK(m(3, 3) == Approx(0.0));                   // s_kappa = 0
    }
    SUBCASE("first kind is marginal with two real pairs") {
        const StabilityReport r = stability_frequencies(*set.first, kMap);
        CHECK(r.classification == Stability::Marginal);
        CHECK(r.max_imag() <= 1e-8);
        CHECK(r.frequencies[2].real() == Approx(1.7291544).epsilon(1e-6));
        CHECK(r.frequencies[3].real() == Approx(3.4496304).epsilon(1e-6));
        REQUIRE(r.analytic);
        for (int k = 0; k < 4; ++k) {
            CHECK(std::abs(r.frequencies[k] - (*r.analytic)[k]) < 1e-8);
        }
    }
    SUBCASE("frequencies agree with a finite-difference Jacobian") {
        const AmplitudePair a = set.first->amplitudes(kMap);
        auto pack = [](const AmplitudePair& v) {
            return Eigen::Vector4d(v.alpha1.real(), v.alpha1.imag(), v.alpha2.real(), v.alpha2.imag());
        };
        auto unpack = [](const Eigen::Vector4d& x) {
            return AmplitudePair{cplx(x[0], x[1]), cplx(x[2], x[3])};
        };
        const Eigen::Vector4d x0 = pack(a);
        Eigen::Matrix4d jac;
        const double h = 1e-6;
        for (int k = 0; k < 4; ++k) {
            Eigen::Vector4d up = x0, down = x0;
            up[k] += h;
            down[k] -= h;
            jac.col(k) = (pack(rhs_cartesian(unpack(up), kMap)) - pack(rhs_cartesian(unpack(down), kMap))) / (2 * h);
        }
        std::vector<double> numeric, reported;
        for (const cplx& l : Eigen::EigenSolver<Eigen::Matrix4d>(jac).eigenvalues()) {
            numeric.push_back(std::abs(l));
        }
        for (const cplx& nu : stability_frequencies(*set.first, kMap).frequencies) {
            reported.push_back(std::abs(nu));
        }
        std::sort(numeric.begin(), numeric.end());
        std::sort(reported.begin(), reported.end());
        for (int k = 0; k < 4; ++k) {
            CHECK(numeric[k] == Approx(reported[k]).epsilon(1e-7));
        }
        CHECK(numeric[3] == Approx(3.4496304).epsilon(1e-6));
    }
    SUBCASE("second kind has exactly one growing mode") {
        const StabilityReport r = stability_frequencies(*set.second, kMap);
        CHECK(r.classification == Stability::Unstable);
        const auto growing = std::count_if(r.frequencies.begin(), r.frequencies.end(),
                                           [](const cplx& nu) { return nu.imag() > 1e-8; });
        CHECK(growing == 1);
        CHECK(r.max_imag() == Approx(0.99497).epsilon(1e-4));
    }
    SUBCASE("second kind at the exceptional point is frozen") {
        const SystemParams ep = SystemParams::pt(1.0, ep_kappa(1.0, 0.1), 0.1, 0.05);
        const auto st = steady_states(ep).second;
        REQUIRE(st);
        for (const cplx& nu : stability_frequencies(*st, ep).frequencies) {
            CHECK(std::abs(nu) <= 1e-6);
        }
    }
    SUBCASE("zero amplitude off the collapse point is rejected") {
        SteadyState broken = *set.first;
        broken.rho1_st = broken.rho2_st = 0.0;
        try {
            stability_matrix(broken, kMap);
            FAIL("expected an error");
        } catch (const Error& e) {
            CHECK(e.code() == ErrorCode::ZeroAmplitude);
        }
    }
    SUBCASE("damping against gain decides first-kind stability") {
        for (double g1 = 0.05; g1 <= 0.3 + 1e-12; g1 += 0.0625) {
            for (double g2 = 0.05; g2 <= 0.3 + 1e-12; g2 += 0.0625) {
                const SystemParams p{1.0, 0.5, g1, -g2, 0.05, 0.05, 0.0};
                const auto st = steady_states(p).first;
                REQUIRE(st);
                const bool stable = stability_frequencies(*st, p).max_imag() <= kStabilityTolerance;
                CHECK(stable == (g1 >= g2 - 1e-12));
            }
        }
    }
}
