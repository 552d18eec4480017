#pragma once

#include <optional>
#include <string>
#include <vector>

namespace hrsync {

/// Constants of the coupled partly diffusive Hindmarsh-Rose system
///
///   u_i' = d Δu_i + a u_i² − b u_i³ + v_i − w_i + J + p (u_j − u_i)
///   v_i' = α − v_i − β u_i²
///   w_i' = q (u_i − c) − r w_i
///
/// with homogeneous Neumann conditions on u_i over a box of side
/// `domain_length` in `dimension` space dimensions.
struct Parameters {
    double a = 1.0;
    double b = 1.0;
    double alpha = 1.0;
    double beta = 1.0;
    double q = 8.0;
    double r = 1.0;
    double c = -1.6;
    double J = 1.0;
    double d = 0.1;
    double p = 0.0;
    double domain_length = 1.0;
    int dimension = 1;

    bool operator==(const Parameters&) const = default;
};

/// Parameter set of the original single-neuron ODE model (q = r·S, S = 4).
Parameters typical_parameters();

/// Desk-scale set with λ = 8 and p* = 5 so the synchronization rate is O(1).
Parameters test_parameters();

/// Looks up "typical" or "test"; throws std::invalid_argument otherwise.
Parameters preset_parameters(const std::string& name);

/// Throws std::invalid_argument naming the first violated constraint.
Parameters validate_parameters(const Parameters& raw);

/// |Ω| = L^dimension.
double domain_area(const Parameters& params);

/// Multiplier on ‖U‖² in the synchronization functional, 8β²/b.
double compute_lambda(const Parameters& params);

/// Coupling strength above which synchronization is guaranteed,
/// p* = λ/2 + a²/b + (q − λ)²/(4λr). Throws std::domain_error when λ = 0.
double compute_sync_threshold(const Parameters& params);

struct SyncRate {
    double delta = 0.0;
    double mu = 0.0;
};

/// δ = 4pλ − (2λ² + 4λa²/b + (q − λ)²/r) and μ = min{δ/λ, r}.
/// Throws std::domain_error("p below analytic threshold") when δ ≤ 0.
SyncRate compute_delta_mu(const Parameters& params, double p);

/// Every computable constant from the dissipativity and synchronization
/// estimates. M1/M2 are not given in closed form by the source analysis;
/// the values here come from integrating the energy inequality over [0, 1].
struct DerivedConstants {
    double C1 = 0.0;
    double C2 = 0.0;
    double r1 = 0.0;
    double M = 0.0;
    double K = 0.0;
    double C3 = 0.0;
    double lambda = 0.0;
    double p_star = 0.0;
    std::optional<double> delta;
    std::optional<double> mu;
    double omega_area = 0.0;
    double M1_derived = 0.0;
    double M2_derived = 0.0;
    std::vector<std::string> warnings;
};

/// Fills delta/mu from params.p when it exceeds the threshold.
DerivedConstants compute_absorbing_constants(const Parameters& params,
                                             double omega_area);

inline DerivedConstants compute_constants(const Parameters& params)
{
    return compute_absorbing_constants(params, domain_area(params));
}

/// max{0, ln x}; 0 for x ≤ 0.
double log_plus(double x);

/// Time after which every trajectory starting in {‖g‖² ≤ R} stays in the
/// absorbing ball: (1/r1) log⁺(R max{C1,1}/min{C1,1}).
double compute_absorb_entry_time(const DerivedConstants& constants, double R);

}  // namespace hrsync
