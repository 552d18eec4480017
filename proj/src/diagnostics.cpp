#include "hrsync/diagnostics.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>
#include <stdexcept>

namespace hrsync {

double state_norm_sq(const Grid& grid, const PairState& s)
{
    double sum = 0.0;
    for (const auto& f : s.fields) sum += l2_norm_sq(grid, f);
    return sum;
}

TimeSeriesRecord record_diagnostics(const Grid& grid, const Parameters& params,
                                    const DerivedConstants& constants,
                                    const PairState& s, double t)
{
    std::array<double, kComponents> sq;
    for (std::size_t c = 0; c < kComponents; ++c) sq[c] = l2_norm_sq(grid, s[c]);

    const DifferenceState diff = difference_state(s);
    const double U = l2_norm_sq(grid, diff.U);
    const double V = l2_norm_sq(grid, diff.V);
    const double W = l2_norm_sq(grid, diff.W);
    const double lambda = compute_lambda(params);

    TimeSeriesRecord rec;
    rec.t = t;
    for (double v : sq) rec.norm_g_sq += v;
    rec.sync_L = lambda * U + V + W;
    rec.sync_dist_sq = U + V + W;
    rec.h1_u = h1_seminorm_sq(grid, s[kU1]) + h1_seminorm_sq(grid, s[kU2]);
    rec.weighted_norm = constants.C1 * (sq[kU1] + sq[kU2]) + sq[kV1] + sq[kV2] +
                        sq[kW1] + sq[kW2];
    return rec;
}

namespace {

// Shared sample loop: `bound(rec)` gives the right-hand side, `observed(rec)`
// the left; a sample holds when observed <= bound (or < when strict).
template <typename Bound, typename Observed>
void scan(BoundReport& report, const TimeSeries& series, double after_time,
          bool strict, Bound&& bound, Observed&& observed)
{
    std::size_t ok = 0;
    report.worst_margin = std::numeric_limits<double>::infinity();
    for (const auto& rec : series) {
        if (!(rec.t > after_time)) continue;
        const double rhs = bound(rec);
        const double lhs = observed(rec);
        const double margin = rhs - lhs;
        if (strict ? lhs < rhs : lhs <= rhs) ++ok;
        if (margin < report.worst_margin) {
            report.worst_margin = margin;
            report.worst_time = rec.t;
        }
        ++report.samples_checked;
    }
    report.fraction = report.samples_checked == 0
                          ? 1.0
                          : static_cast<double>(ok) /
                                static_cast<double>(report.samples_checked);
    if (report.samples_checked == 0) report.worst_margin = 0.0;
}

}  // namespace

BoundReport check_global_bound(const TimeSeries& series,
                               const DerivedConstants& constants,
                               double g0_norm_sq)
{
    const double c1_min = std::min(constants.C1, 1.0);
    const double ratio = std::max(constants.C1, 1.0) / c1_min;
    const double bound = ratio * g0_norm_sq + constants.M * constants.omega_area / c1_min;

    BoundReport report;
    report.name = "global_bound";
    const double before_start = -std::numeric_limits<double>::infinity();
    scan(report, series, before_start, false,
         [&](const TimeSeriesRecord&) { return bound; },
         [](const TimeSeriesRecord& r) { return r.norm_g_sq; });
    return report;
}

BoundReport check_absorbing_entry(const TimeSeries& series,
                                  const DerivedConstants& constants, double R)
{
    if (series.empty()) throw std::invalid_argument("empty time series");
    if (series.front().norm_g_sq > R)
        throw std::invalid_argument("initial norm exceeds the radius R of the bounded set");

    const double entry = compute_absorb_entry_time(constants, R);
    const double t_first = series.front().t;
    if (!(series.back().t - t_first > entry))
        throw std::domain_error("horizon shorter than T0");

    BoundReport report;
    report.name = "absorbing_entry";
    std::ostringstream note;
    note << "T0=" << entry;
    report.notes.push_back(note.str());
    if (1.0 / constants.r1 > 100.0) {
        std::ostringstream warn;
        warn << "T0 grows by 1/r1 = " << 1.0 / constants.r1
             << " time units per log unit of R; it may exceed practical horizons";
        report.notes.push_back(warn.str());
    }
    scan(report, series, t_first + entry, true,
         [&](const TimeSeriesRecord&) { return constants.K; },
         [](const TimeSeriesRecord& r) { return r.norm_g_sq; });
    return report;
}

BoundReport check_gronwall_sync(const TimeSeries& series,
                                const Parameters& params,
                                const DerivedConstants& constants, double p,
                                double initial_dist_sq, double slack)
{
    const SyncRate rate = compute_delta_mu(params, p);
    const double lambda = constants.lambda;
    const double lower = std::min(1.0, lambda);
    const double upper = std::max(1.0, lambda);
    const double t_first = series.empty() ? 0.0 : series.front().t;

    BoundReport report;
    report.name = "gronwall_bound";
    std::ostringstream note;
    note << "mu=" << rate.mu << " delta=" << rate.delta << " slack=" << slack;
    report.notes.push_back(note.str());
    scan(report, series, -std::numeric_limits<double>::infinity(), false,
         [&](const TimeSeriesRecord& r) {
             return slack * std::exp(-rate.mu * (r.t - t_first)) * upper *
                    initial_dist_sq;
         },
         [&](const TimeSeriesRecord& r) { return lower * r.sync_dist_sq; });
    return report;
}

DecayFit fit_decay_rate(const TimeSeries& series, double t_start, double t_end)
{
    if (!(t_end > t_start)) throw std::invalid_argument("t_end must exceed t_start");
    std::vector<double> ts, ys;
    for (const auto& rec : series) {
        if (rec.t < t_start || rec.t > t_end) continue;
        if (!(rec.sync_L > 0.0))
            throw std::domain_error("fully synchronized before window");
        ts.push_back(rec.t);
        ys.push_back(-std::log(rec.sync_L));
    }
    if (ts.size() < 2) throw std::domain_error("decay-fit window is empty");

    const double n = static_cast<double>(ts.size());
    double t_mean = 0.0, y_mean = 0.0;
    for (std::size_t i = 0; i < ts.size(); ++i) {
        t_mean += ts[i];
        y_mean += ys[i];
    }
    t_mean /= n;
    y_mean /= n;
    double stt = 0.0, sty = 0.0;
    for (std::size_t i = 0; i < ts.size(); ++i) {
        stt += (ts[i] - t_mean) * (ts[i] - t_mean);
        sty += (ts[i] - t_mean) * (ys[i] - y_mean);
    }
    DecayFit fit;
    fit.samples = ts.size();
    fit.mu_emp = sty / stt;
    fit.intercept = y_mean - fit.mu_emp * t_mean;
    double ss = 0.0;
    for (std::size_t i = 0; i < ts.size(); ++i) {
        const double e = ys[i] - (fit.intercept + fit.mu_emp * ts[i]);
        ss += e * e;
    }
    fit.residual = std::sqrt(ss / n);
    return fit;
}

double async_degree_proxy(const TimeSeries& series, double tail_fraction)
{
    if (series.empty()) return 0.0;
    const double t0 = series.front().t;
    const double t1 = series.back().t;
    const double cutoff = t1 - tail_fraction * (t1 - t0);
    double worst = 0.0;
    for (const auto& rec : series)
        if (rec.t >= cutoff) worst = std::max(worst, std::sqrt(rec.sync_dist_sq));
    return worst;
}

std::size_t count_sync_increases(const TimeSeries& series, double after_time)
{
    std::size_t count = 0;
    for (std::size_t i = 1; i < series.size(); ++i) {
        if (series[i].t <= after_time) continue;
        if (series[i].sync_L > series[i - 1].sync_L * (1.0 + 1e-12)) ++count;
    }
    return count;
}

RunningMaxSummary h1_running_max(const TimeSeries& series)
{
    RunningMaxSummary summary;
    if (series.empty()) return summary;
    summary.peak = series.front().h1_u;
    summary.last_increase_time = series.front().t;
    for (const auto& rec : series) {
        if (rec.h1_u > summary.peak) {
            summary.peak = rec.h1_u;
            summary.last_increase_time = rec.t;
        }
    }
    return summary;
}

}  // namespace hrsync
