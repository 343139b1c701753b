// Adaptive Dormand-Prince integration sampled on a caller grid.
#pragma once

#include "ptq/errors.hpp"

#include <boost/numeric/odeint.hpp>

#include <algorithm>
#include <array>
#include <cmath>
#include <cstddef>
#include <span>
#include <sstream>

namespace ptq::detail {

inline constexpr double kBlowUp = 1e150;

inline void check_grid(std::span<const double> grid) {
    if (grid.empty()) {
        throw Error(ErrorCode::InvalidParams, "empty time grid");
    }
    for (std::size_t i = 0; i < grid.size(); ++i) {
        if (!std::isfinite(grid[i]) || (i > 0 && !(grid[i] > grid[i - 1]))) {
            throw Error(ErrorCode::InvalidParams, "time grid must be finite and strictly increasing");
        }
    }
}

// Integrates dx/dt = rhs(x, t) from grid.front() and calls observe(x, t) at every grid point.
// rhs has signature void(const State&, State&, double).
template <std::size_t N, class Rhs, class Observer>
void integrate_on_grid(Rhs&& rhs, std::array<double, N> state, std::span<const double> grid,
                       double tol, Observer&& observe) {
    namespace ode = boost::numeric::odeint;
    using State = std::array<double, N>;
    check_grid(grid);
    if (!(tol > 0.0)) {
        throw Error(ErrorCode::InvalidParams, "integrator tolerance must be positive");
    }

    double reached = grid.front();
    auto guarded_observer = [&](const State& x, double t) {
        for (double v : x) {
            if (!std::isfinite(v) || std::abs(v) > kBlowUp) {
                std::ostringstream msg;
                msg << "solution left the representable range near t = " << t;
                throw StepFailure(reached, msg.str());
            }
        }
        reached = t;
        observe(x, t);
    };

    const double span = grid.back() - grid.front();
    const double dt0 = grid.size() > 1 ? std::min(1e-3, 0.1 * (grid[1] - grid[0])) : 1e-3;
    auto stepper = ode::make_dense_output(tol, tol, ode::runge_kutta_dopri5<State>());
    try {
        ode::integrate_times(stepper, rhs, state, grid.begin(), grid.end(), dt0, guarded_observer,
                             ode::max_step_checker(static_cast<int>(1e6)));
    } catch (const StepFailure&) {
        throw;
    } catch (const std::exception& e) {
        std::ostringstream msg;
        msg << "adaptive stepper failed (" << e.what() << ") over a span of " << span;
        throw StepFailure(reached, msg.str());
    }
}

}  // namespace ptq::detail
