#pragma once

#include <optional>
#include <string>
#include <vector>

#include "hrsync/dynamics.hpp"
#include "hrsync/grid.hpp"
#include "hrsync/model.hpp"

namespace hrsync {

/// Norms and functionals of one sampled state.
struct TimeSeriesRecord {
    double t = 0.0;
    /// ‖g‖² summed over all six components.
    double norm_g_sq = 0.0;
    /// λ‖U‖² + ‖V‖² + ‖W‖².
    double sync_L = 0.0;
    /// ‖g1 − g2‖² = ‖U‖² + ‖V‖² + ‖W‖².
    double sync_dist_sq = 0.0;
    /// ‖∇u1‖² + ‖∇u2‖².
    double h1_u = 0.0;
    /// C1 (‖u1‖² + ‖u2‖²) + ‖v1‖² + ‖v2‖² + ‖w1‖² + ‖w2‖².
    double weighted_norm = 0.0;

    bool operator==(const TimeSeriesRecord&) const = default;
};

using TimeSeries = std::vector<TimeSeriesRecord>;

TimeSeriesRecord record_diagnostics(const Grid& grid, const Parameters& params,
                                    const DerivedConstants& constants,
                                    const PairState& s, double t);

/// ‖g‖² of a state.
double state_norm_sq(const Grid& grid, const PairState& s);

/// Outcome of checking an inequality at every sample of a series.
struct BoundReport {
    std::string name;
    /// Fraction of checked samples where the bound holds.
    double fraction = 1.0;
    /// min over samples of (bound − observed); negative means violated.
    double worst_margin = 0.0;
    double worst_time = 0.0;
    std::size_t samples_checked = 0;
    std::vector<std::string> notes;

    bool holds() const { return fraction == 1.0; }
};

/// ‖g(t)‖² ≤ (max{C1,1}/min{C1,1}) ‖g0‖² + M|Ω|/min{C1,1}.
BoundReport check_global_bound(const TimeSeries& series,
                               const DerivedConstants& constants,
                               double g0_norm_sq);

/// ‖g(t)‖² < K for every sample with t > T0(R). Throws std::invalid_argument
/// when the initial norm exceeds R and std::domain_error("horizon shorter
/// than T0") when no sample lies past T0.
BoundReport check_absorbing_entry(const TimeSeries& series,
                                  const DerivedConstants& constants, double R);

/// Default multiplicative slack on the synchronization bound.
inline constexpr double kGronwallSlack = 1.05;

/// min{1,λ} ‖g1 − g2‖² ≤ slack · e^{−μt} max{1,λ} ‖g1⁰ − g2⁰‖².
/// Throws std::domain_error("p below analytic threshold") when p ≤ p*.
BoundReport check_gronwall_sync(const TimeSeries& series,
                                const Parameters& params,
                                const DerivedConstants& constants, double p,
                                double initial_dist_sq,
                                double slack = kGronwallSlack);

struct DecayFit {
    double mu_emp = 0.0;
    double intercept = 0.0;
    /// Root-mean-square residual of the log-linear fit.
    double residual = 0.0;
    std::size_t samples = 0;
};

/// Least-squares slope of −ln(sync_L) against t over [t_start, t_end].
/// Throws std::domain_error when the window holds fewer than two samples
/// or when sync_L is zero inside it ("fully synchronized before window").
DecayFit fit_decay_rate(const TimeSeries& series, double t_start, double t_end);

/// Largest ‖g1 − g2‖ over samples in the last `tail_fraction` of the
/// horizon: the finite-horizon stand-in for the limsup in the asynchronous
/// degree.
double async_degree_proxy(const TimeSeries& series, double tail_fraction = 0.1);

/// Samples after `after_time` where sync_L grew relative to the previous
/// sample, beyond relative roundoff.
std::size_t count_sync_increases(const TimeSeries& series, double after_time);

/// Running maximum of h1_u: its peak and the last time it increased.
struct RunningMaxSummary {
    double peak = 0.0;
    double last_increase_time = 0.0;
};
RunningMaxSummary h1_running_max(const TimeSeries& series);

}  // namespace hrsync
