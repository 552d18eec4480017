#include "hrsync/integrator.hpp"

#include <cmath>

namespace hrsync {

std::string scheme_name(Scheme scheme)
{
    return scheme == Scheme::ImexEuler ? "imex-euler" : "imex-strang";
}

Scheme parse_scheme(const std::string& name)
{
    if (name == "imex-euler") return Scheme::ImexEuler;
    if (name == "imex-strang") return Scheme::ImexStrang;
    throw std::invalid_argument("unknown scheme '" + name +
                                "' (expected imex-euler or imex-strang)");
}

OdePoint rk4_ode_step(const Parameters& params, const OdePoint& y, double dt)
{
    auto axpy = [](const OdePoint& base, double h, const OdePoint& k) {
        OdePoint out;
        for (std::size_t c = 0; c < kComponents; ++c) out[c] = base[c] + h * k[c];
        return out;
    };
    const OdePoint k1 = local_rates(params, y);
    const OdePoint k2 = local_rates(params, axpy(y, 0.5 * dt, k1));
    const OdePoint k3 = local_rates(params, axpy(y, 0.5 * dt, k2));
    const OdePoint k4 = local_rates(params, axpy(y, dt, k3));
    OdePoint out;
    for (std::size_t c = 0; c < kComponents; ++c)
        out[c] = y[c] + dt / 6.0 * (k1[c] + 2.0 * k2[c] + 2.0 * k3[c] + k4[c]);
    return out;
}

namespace {

void kinetics_euler(const Parameters& params, PairState& s, double dt)
{
    for (std::size_t k = 0; k < s.point_count(); ++k) {
        OdePoint y = s.at(k);
        const OdePoint rate = local_rates(params, y);
        for (std::size_t c = 0; c < kComponents; ++c) y[c] += dt * rate[c];
        s.set(k, y);
    }
}

void kinetics_rk4(const Parameters& params, PairState& s, double dt)
{
    for (std::size_t k = 0; k < s.point_count(); ++k)
        s.set(k, rk4_ode_step(params, s.at(k), dt));
}

void diffuse_backward_euler(const Grid& grid, const Parameters& params,
                            PairState& s, double dt)
{
    for (std::size_t c : {kU1, kU2})
        s[c] = helmholtz_solve(grid, dt * params.d, s[c]);
}

void diffuse_crank_nicolson(const Grid& grid, const Parameters& params,
                            PairState& s, double dt)
{
    const double gamma = 0.5 * dt * params.d;
    for (std::size_t c : {kU1, kU2}) {
        ScalarField rhs = laplacian_apply(grid, s[c]);
        for (std::size_t k = 0; k < rhs.size(); ++k)
            rhs[k] = s[c][k] + gamma * rhs[k];
        s[c] = helmholtz_solve(grid, gamma, rhs);
    }
}

}  // namespace

PairState imex_step(const Grid& grid, const Parameters& params,
                    const PairState& s, double dt, Scheme scheme)
{
    for (const auto& f : s.fields) require_same_grid(grid, f);
    if (!(dt > 0.0)) throw std::invalid_argument("dt must be positive");
    PairState next = s;
    switch (scheme) {
    case Scheme::ImexEuler:
        kinetics_euler(params, next, dt);
        diffuse_backward_euler(grid, params, next, dt);
        break;
    case Scheme::ImexStrang:
        kinetics_rk4(params, next, 0.5 * dt);
        diffuse_crank_nicolson(grid, params, next, dt);
        kinetics_rk4(params, next, 0.5 * dt);
        break;
    }
    return next;
}

std::int64_t step_count(double T, double dt)
{
    if (!(T > 0.0)) throw std::invalid_argument("horizon T must be positive");
    if (!(dt > 0.0)) throw std::invalid_argument("dt must be positive");
    const double ratio = T / dt;
    const auto n = static_cast<std::int64_t>(std::llround(ratio));
    if (n < 1 || std::abs(ratio - static_cast<double>(n)) > 1e-9 * ratio)
        throw std::invalid_argument("horizon T must be a whole number of steps dt");
    return n;
}

IntegrationResult integrate(const Grid& grid, const Parameters& params,
                            const PairState& s0, double T,
                            const StepperConfig& stepper, int sample_every,
                            const Observer& observer, double t0)
{
    if (sample_every < 1) throw std::invalid_argument("sample_every must be >= 1");
    if (stepper.check_interval < 1)
        throw std::invalid_argument("check_interval must be >= 1");
    const std::int64_t n_steps = step_count(T, stepper.dt);
    const DerivedConstants constants = compute_constants(params);

    IntegrationResult result;
    result.final_state = s0;
    PairState& s = result.final_state;
    double last_finite = t0;

    auto require_finite = [&](std::int64_t step) {
        if (!s.all_finite())
            throw IntegrationError(
                "non-finite state at step " + std::to_string(step) +
                    " (last finite time " + std::to_string(last_finite) + ")",
                step, last_finite);
        last_finite = t0 + static_cast<double>(step) * stepper.dt;
    };
    auto sample = [&](std::int64_t step) {
        const double t = t0 + static_cast<double>(step) * stepper.dt;
        result.records.push_back(record_diagnostics(grid, params, constants, s, t));
        if (observer) observer(result.records.back(), s);
    };

    require_finite(0);
    sample(0);
    for (std::int64_t step = 1; step <= n_steps; ++step) {
        s = imex_step(grid, params, s, stepper.dt, stepper.scheme);
        const bool sampled = step % sample_every == 0 || step == n_steps;
        if (sampled || step % stepper.check_interval == 0) require_finite(step);
        if (sampled) sample(step);
    }
    result.steps = n_steps;
    return result;
}

std::vector<OdeSample> integrate_ode(const Parameters& params,
                                     const OdePoint& y0, double T, double dt,
                                     int sample_every)
{
    if (sample_every < 1) throw std::invalid_argument("sample_every must be >= 1");
    const std::int64_t n_steps = step_count(T, dt);
    std::vector<OdeSample> out{{0.0, y0}};
    OdePoint y = y0;
    double last_finite = 0.0;
    for (std::int64_t step = 1; step <= n_steps; ++step) {
        y = rk4_ode_step(params, y, dt);
        for (double v : y) {
            if (!std::isfinite(v))
                throw IntegrationError("non-finite ODE state at t = " +
                                           std::to_string(step * dt),
                                       step, last_finite);
        }
        last_finite = static_cast<double>(step) * dt;
        if (step % sample_every == 0 || step == n_steps)
            out.push_back({last_finite, y});
    }
    return out;
}

}  // namespace hrsync
