#pragma once

#include <cstdint>
#include <functional>
#include <stdexcept>
#include <string>
#include <vector>

#include "hrsync/diagnostics.hpp"
#include "hrsync/dynamics.hpp"

namespace hrsync {

enum class Scheme {
    /// Forward Euler kinetics, backward Euler diffusion. First order.
    ImexEuler,
    /// Half kinetics step (RK4), Crank-Nicolson diffusion, half kinetics
    /// step. Second order.
    ImexStrang,
};

std::string scheme_name(Scheme scheme);
/// Accepts "imex-euler" and "imex-strang".
Scheme parse_scheme(const std::string& name);

struct StepperConfig {
    double dt = 1e-3;
    Scheme scheme = Scheme::ImexStrang;
    int check_interval = 100;

    bool operator==(const StepperConfig&) const = default;
};

/// A time integration produced a non-finite value.
struct IntegrationError : std::runtime_error {
    IntegrationError(const std::string& what, std::int64_t step,
                     double last_finite_time)
        : std::runtime_error(what), step(step),
          last_finite_time(last_finite_time)
    {
    }
    std::int64_t step;
    double last_finite_time;
};

PairState imex_step(const Grid& grid, const Parameters& params,
                    const PairState& s, double dt, Scheme scheme);

using Observer = std::function<void(const TimeSeriesRecord&, const PairState&)>;

struct IntegrationResult {
    TimeSeries records;
    PairState final_state;
    std::int64_t steps = 0;
};

/// Advances s0 by round(T/dt) steps, recording diagnostics at step 0, every
/// `sample_every` steps and at the final step. Record times are
/// t0 + n·dt. T must be a whole number of steps.
IntegrationResult integrate(const Grid& grid, const Parameters& params,
                            const PairState& s0, double T,
                            const StepperConfig& stepper, int sample_every,
                            const Observer& observer = {}, double t0 = 0.0);

/// Classical fourth-order Runge-Kutta step of the homogeneous ODE.
OdePoint rk4_ode_step(const Parameters& params, const OdePoint& y, double dt);

struct OdeSample {
    double t = 0.0;
    OdePoint y{};
};

/// Samples at step 0, every `sample_every` steps and the final step.
std::vector<OdeSample> integrate_ode(const Parameters& params,
                                     const OdePoint& y0, double T, double dt,
                                     int sample_every = 1);

/// Number of steps of size dt covering T; throws when T is not a whole
/// number of steps (to 1e-9 relative) or non-positive.
std::int64_t step_count(double T, double dt);

}  // namespace hrsync
