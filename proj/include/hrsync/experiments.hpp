#pragma once

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "hrsync/diagnostics.hpp"
#include "hrsync/integrator.hpp"

namespace hrsync {

struct GridSpec {
    int dimension = 1;
    int points = 101;
    double length = 1.0;

    bool operator==(const GridSpec&) const = default;
};

/// Named initial-data generator: "constant", "fourier-smooth" or "bump".
struct InitialSpec {
    std::string generator = "fourier-smooth";
    std::uint64_t seed = 1;
    double amplitude = 1.0;
    /// Six values for the "constant" generator.
    OdePoint values{};

    bool operator==(const InitialSpec&) const = default;
};

struct ExperimentSpec {
    std::string name = "sync";
    double T = 20.0;
    int sample_every = 10;
    double p_lo = 0.0;
    double p_hi = 6.0;
    double tol = 0.1;
    /// Synchronization criterion: sync_L(T) <= epsilon * sync_L(0).
    double epsilon = 1e-6;
    double slack = kGronwallSlack;
    /// Squared radius of the ball of initial data for the absorbing check.
    double radius = 10.0;

    bool operator==(const ExperimentSpec&) const = default;
};

/// Everything needed to reproduce a run. `params.dimension` and
/// `params.domain_length` always mirror `grid`.
struct RunConfig {
    std::string preset = "test";
    Parameters params = test_parameters();
    GridSpec grid;
    StepperConfig stepper;
    InitialSpec initial;
    ExperimentSpec experiment;

    bool operator==(const RunConfig&) const = default;
};

/// Checks horizon, bracket ordering, epsilon and generator constraints,
/// and validates the parameters. Throws std::invalid_argument.
void validate_run_config(const RunConfig& config);

Grid make_run_grid(const RunConfig& config);

struct ExperimentReport {
    std::string name;
    std::string config_echo;
    std::vector<std::pair<std::string, double>> scalars;
    std::vector<std::pair<std::string, std::string>> labels;
    /// Named pass/fail flags, e.g. {"gronwall_bound", true}.
    std::vector<std::pair<std::string, bool>> checks;
    std::vector<BoundReport> bounds;
    std::vector<std::string> notes;
    /// Sampled diagnostics of the main integration, when there is one.
    TimeSeries series;

    bool passed() const;
    /// Throws std::out_of_range for a missing key.
    double scalar(const std::string& key) const;
    bool check(const std::string& key) const;
};

PairState generate_initial_condition(const InitialSpec& spec, const Grid& grid);

/// Integrates the configured run and checks the global bound (and the
/// absorbing-ball entry when the horizon passes T0).
ExperimentReport run_simulation(const RunConfig& config);

/// Integrates at the configured p, checks the synchronization bound when
/// p > p* and fits the decay rate over the last half of the horizon.
ExperimentReport run_sync_experiment(const RunConfig& config);

struct BisectionStep {
    double p = 0.0;
    double ratio = 0.0;  // sync_L(T) / sync_L(0)
    bool synchronized = false;
};

struct ThresholdResult {
    double p_emp = 0.0;
    std::vector<BisectionStep> trace;
    ExperimentReport report;
};

/// Smallest p (to width tol) at which the synchronization criterion holds.
/// Throws std::invalid_argument("criterion not bracketed") when p_lo >= p_hi
/// or the criterion fails at p_hi. When it already holds at p_lo the
/// threshold lies at or below the bracket and p_emp = p_lo is returned with
/// label bracket=lower-endpoint-synchronizes.
ThresholdResult bisect_empirical_threshold(const RunConfig& config, double p_lo,
                                           double p_hi, double tol);

/// Spatial order of the Laplacian on a cosine eigenfunction, spatial
/// self-convergence of the PDE, and temporal Richardson orders of both
/// schemes.
ExperimentReport convergence_study(const RunConfig& config);

/// PDE from spatially constant data against the RK4 ODE with matched dt.
ExperimentReport oracle_comparison(const RunConfig& config);

/// Constants table for `constants`.
ExperimentReport constants_report(const RunConfig& config);

}  // namespace hrsync
