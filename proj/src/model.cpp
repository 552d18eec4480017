#include "hrsync/model.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace hrsync {

Parameters typical_parameters()
{
    Parameters p;
    p.a = 3.0;
    p.b = 1.0;
    p.alpha = 1.0;
    p.beta = 5.0;
    p.r = 0.0021;
    p.q = p.r * 4.0;
    p.c = -1.6;
    p.J = 3.281;
    p.d = 0.1;
    p.p = 0.0;
    return p;
}

Parameters test_parameters()
{
    Parameters p;
    p.a = 1.0;
    p.b = 1.0;
    p.alpha = 1.0;
    p.beta = 1.0;
    p.q = 8.0;
    p.r = 1.0;
    p.c = -1.6;
    p.J = 1.0;
    p.d = 0.1;
    p.p = 6.0;
    return p;
}

Parameters preset_parameters(const std::string& name)
{
    if (name == "typical") return typical_parameters();
    if (name == "test") return test_parameters();
    throw std::invalid_argument("unknown parameter preset '" + name +
                                "' (expected 'typical' or 'test')");
}

Parameters validate_parameters(const Parameters& raw)
{
    const std::pair<const char*, double> values[] = {
        {"a", raw.a},         {"b", raw.b}, {"alpha", raw.alpha},
        {"beta", raw.beta},   {"q", raw.q}, {"r", raw.r},
        {"c", raw.c},         {"J", raw.J}, {"d", raw.d},
        {"p", raw.p},         {"domain_length", raw.domain_length},
    };
    for (const auto& [name, v] : values) {
        if (!std::isfinite(v))
            throw std::invalid_argument(std::string(name) + " must be finite");
    }
    if (raw.b <= 0) throw std::invalid_argument("b must be positive");
    if (raw.r <= 0) throw std::invalid_argument("r must be positive");
    if (raw.d <= 0) throw std::invalid_argument("d must be positive");
    if (raw.p < 0) throw std::invalid_argument("p must be non-negative");
    if (raw.domain_length <= 0)
        throw std::invalid_argument("domain_length must be positive");
    if (raw.dimension != 1 && raw.dimension != 2)
        throw std::invalid_argument("dimension must be 1 or 2");
    return raw;
}

double domain_area(const Parameters& params)
{
    return std::pow(params.domain_length, params.dimension);
}

double compute_lambda(const Parameters& params)
{
    return 8.0 * params.beta * params.beta / params.b;
}

double compute_sync_threshold(const Parameters& params)
{
    const double lambda = compute_lambda(params);
    if (lambda == 0.0)
        throw std::domain_error("sync threshold undefined: lambda = 0 (beta = 0)");
    const double gap = params.q - lambda;
    return lambda / 2.0 + params.a * params.a / params.b +
           gap * gap / (4.0 * lambda * params.r);
}

SyncRate compute_delta_mu(const Parameters& params, double p)
{
    const double lambda = compute_lambda(params);
    if (lambda == 0.0)
        throw std::domain_error("sync rate undefined: lambda = 0 (beta = 0)");
    const double gap = params.q - lambda;
    const double loss = 2.0 * lambda * lambda +
                        4.0 * lambda * params.a * params.a / params.b +
                        gap * gap / params.r;
    const double delta = 4.0 * p * lambda - loss;
    if (!(delta > 0.0)) throw std::domain_error("p below analytic threshold");
    return {delta, std::min(delta / lambda, params.r)};
}

DerivedConstants compute_absorbing_constants(const Parameters& params,
                                             double omega_area)
{
    validate_parameters(params);
    if (!(omega_area > 0.0))
        throw std::invalid_argument("omega_area must be positive");

    const double a = params.a, b = params.b, r = params.r, q = params.q;
    DerivedConstants k;
    k.omega_area = omega_area;
    k.C1 = (params.beta * params.beta + 4.0) / b;

    const double C1a = k.C1 * a;
    const double mixed = k.C1 * k.C1 * (2.0 + 1.0 / r) + k.C1;
    k.C2 = 2.0 * C1a * C1a * C1a * C1a + 2.0 * k.C1 * params.J * params.J +
           2.0 * mixed * mixed + 4.0 * params.alpha * params.alpha +
           2.0 * q * q * params.c * params.c / r + 2.0 * q * q * q * q / (r * r);
    k.r1 = 0.5 * std::min(1.0, r);

    const double source = 2.0 * k.C2 + k.C1 * k.C1 / 16.0;
    const double c1_min = std::min(k.C1, 1.0);
    const double c1_max = std::max(k.C1, 1.0);
    k.M = source / k.r1;
    k.K = k.M * omega_area / c1_min + 1.0;
    k.C3 = a * a / (3.0 * b);

    k.M1_derived = c1_max * (1.0 / (k.C1 * params.d) + 1.0 / c1_min);
    k.M2_derived = source / (k.C1 * params.d) + k.M / c1_min;

    k.lambda = compute_lambda(params);
    if (k.lambda > 0.0) {
        k.p_star = compute_sync_threshold(params);
        if (params.p > k.p_star) {
            // p can exceed p_star by a rounding-level margin and still give δ ≤ 0.
            try {
                const auto rate = compute_delta_mu(params, params.p);
                k.delta = rate.delta;
                k.mu = rate.mu;
            } catch (const std::domain_error&) {
            }
        }
    } else {
        k.p_star = 0.0;
        k.warnings.emplace_back(
            "lambda = 0 (beta = 0): synchronization estimate does not apply");
    }
    return k;
}

double log_plus(double x)
{
    if (!(x > 1.0)) return 0.0;
    return std::log(x);
}

double compute_absorb_entry_time(const DerivedConstants& constants, double R)
{
    const double ratio =
        std::max(constants.C1, 1.0) / std::min(constants.C1, 1.0);
    return log_plus(R * ratio) / constants.r1;
}

}  // namespace hrsync
