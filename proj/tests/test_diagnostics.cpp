#include <doctest.h>

#include <cmath>
#include <stdexcept>

#include "hrsync/diagnostics.hpp"

using namespace hrsync;

namespace {

TimeSeries series_from(double t_end, double dt, auto&& fill)
{
    TimeSeries out;
    const int n = static_cast<int>(std::lround(t_end / dt));
    for (int i = 0; i <= n; ++i) {
        TimeSeriesRecord rec;
        rec.t = i * dt;
        fill(rec);
        out.push_back(rec);
    }
    return out;
}

}  // namespace

TEST_CASE("record_diagnostics on hand-checkable states")
{
    const Parameters P = test_parameters();  // λ = 8, C1 = 5
    const DerivedConstants K = compute_constants(P);
    const Grid grid = make_grid(1, 11, 1.0);

    const TimeSeriesRecord a = record_diagnostics(grid, P, K, uniform_state(grid, {1, 0, 0, 0, 0, 0}), 0.5);
    CHECK(a.t == 0.5);
    CHECK(a.norm_g_sq == doctest::Approx(1.0));
    CHECK(a.sync_L == doctest::Approx(8.0));
    CHECK(a.sync_dist_sq == doctest::Approx(1.0));
    CHECK(a.h1_u == 0.0);
    CHECK(a.weighted_norm == doctest::Approx(5.0));

    const TimeSeriesRecord b = record_diagnostics(grid, P, K, uniform_state(grid, {1, 2, 3, 1, 2, 3}), 0.0);
    CHECK(b.norm_g_sq == doctest::Approx(28.0));
    CHECK(b.sync_L == 0.0);
    CHECK(b.sync_dist_sq == 0.0);
    CHECK(b.weighted_norm == doctest::Approx(2 * 5.0 + 2 * 4.0 + 2 * 9.0));

    PairState ramp(grid);
    ramp[kU1] = sample_field(grid, [](double x, double) { return x; });
    const TimeSeriesRecord c = record_diagnostics(grid, P, K, ramp, 0.0);
    CHECK(c.norm_g_sq == doctest::Approx(1.0 / 3.0 + 0.01 / 6.0).epsilon(1e-13));
    CHECK(c.h1_u == doctest::Approx(1.0).epsilon(1e-13));
    CHECK(state_norm_sq(grid, ramp) == c.norm_g_sq);
}

TEST_CASE("check_global_bound")
{
    const DerivedConstants K = compute_constants(test_parameters());
    // Bound = 5·g0 + M for C1 = 5, |Ω| = 1.
    const TimeSeries ok = series_from(10.0, 1.0, [](TimeSeriesRecord& r) { r.norm_g_sq = 1000.0; });
    const BoundReport good = check_global_bound(ok, K, 1.0);
    CHECK(good.holds());
    CHECK(good.samples_checked == 11);
    CHECK(good.worst_margin == doctest::Approx(5.0 + K.M - 1000.0));

    DerivedConstants corrupted = K;
    corrupted.M = 0.0;
    TimeSeries bad = series_from(10.0, 1.0, [](TimeSeriesRecord& r) { r.norm_g_sq = 1.0; });
    bad[4].norm_g_sq = 6.0;
    const BoundReport fail = check_global_bound(bad, corrupted, 1.0);
    CHECK_FALSE(fail.holds());
    CHECK(fail.fraction == doctest::Approx(10.0 / 11.0));
    CHECK(fail.worst_margin == doctest::Approx(-1.0));
    CHECK(fail.worst_time == 4.0);
}

TEST_CASE("check_absorbing_entry")
{
    const DerivedConstants K = compute_constants(test_parameters());
    const double T0 = compute_absorb_entry_time(K, 10.0);  // about 7.82
    const TimeSeries series = series_from(20.0, 0.5, [](TimeSeriesRecord& r) { r.norm_g_sq = 5.0; });
    const BoundReport rep = check_absorbing_entry(series, K, 10.0);
    CHECK(rep.holds());
    CHECK(rep.samples_checked == 25);  // samples with t > 7.82: 8.0 .. 20.0
    CHECK(series[16].t > T0);
    CHECK_FALSE(rep.notes.empty());

    DerivedConstants tight = K;
    tight.K = 5.0;  // strict inequality: equal to K is a violation
    CHECK_FALSE(check_absorbing_entry(series, tight, 10.0).holds());

    CHECK_THROWS_AS(check_absorbing_entry(series, K, 1.0), std::invalid_argument);
    const TimeSeries short_run = series_from(5.0, 0.5, [](TimeSeriesRecord& r) { r.norm_g_sq = 5.0; });
    CHECK_THROWS_WITH_AS(check_absorbing_entry(short_run, K, 10.0), "horizon shorter than T0",
                         std::domain_error);

    // Slow r1 earns a note about the horizon.
    const DerivedConstants slow = compute_constants(typical_parameters());
    const double T0_slow = compute_absorb_entry_time(slow, 10.0);
    const TimeSeries long_run = series_from(std::ceil(T0_slow) + 10.0, 1.0,
                                            [](TimeSeriesRecord& r) { r.norm_g_sq = 1.0; });
    CHECK(check_absorbing_entry(long_run, slow, 10.0).notes.size() == 2);
}

TEST_CASE("check_gronwall_sync")
{
    const Parameters P = test_parameters();  // λ = 8, p* = 5, μ(6) = 1
    const DerivedConstants K = compute_constants(P);
    const double d0 = 2.0;
    auto exact = series_from(10.0, 0.1, [](TimeSeriesRecord&) {});
    for (auto& r : exact) r.sync_dist_sq = 8.0 * d0 * std::exp(-r.t);
    CHECK(check_gronwall_sync(exact, P, K, 6.0, d0, 1.0 + 1e-12).holds());

    auto over = exact;
    for (auto& r : over) r.sync_dist_sq *= 1.06;
    const BoundReport fail = check_gronwall_sync(over, P, K, 6.0, d0);
    CHECK_FALSE(fail.holds());
    CHECK(fail.fraction == 0.0);
    CHECK(check_gronwall_sync(over, P, K, 6.0, d0, 1.07).holds());

    CHECK_THROWS_WITH_AS(check_gronwall_sync(exact, P, K, 4.0, d0), "p below analytic threshold",
                         std::domain_error);
}

TEST_CASE("fit_decay_rate recovers synthetic exponentials")
{
    const auto pure = series_from(5.0, 0.05, [](TimeSeriesRecord& r) { r.sync_L = std::exp(-3.0 * r.t); });
    const DecayFit f = fit_decay_rate(pure, 0.0, 5.0);
    CHECK(f.mu_emp == doctest::Approx(3.0).epsilon(1e-12));
    CHECK(f.intercept == doctest::Approx(0.0).scale(1.0));
    CHECK(f.residual < 1e-12);
    CHECK(f.samples == 101);

    const auto scaled = series_from(10.0, 0.1, [](TimeSeriesRecord& r) { r.sync_L = 5.0 * std::exp(-0.5 * r.t); });
    const DecayFit g = fit_decay_rate(scaled, 2.0, 8.0);
    CHECK(g.mu_emp == doctest::Approx(0.5).epsilon(1e-12));
    CHECK(g.intercept == doctest::Approx(-std::log(5.0)).epsilon(1e-12));

    auto zeroed = pure;
    zeroed[50].sync_L = 0.0;
    CHECK_THROWS_WITH_AS(fit_decay_rate(zeroed, 1.0, 5.0), "fully synchronized before window",
                         std::domain_error);
    CHECK_THROWS_WITH_AS(fit_decay_rate(pure, 6.0, 7.0), "decay-fit window is empty", std::domain_error);
    CHECK_THROWS_AS(fit_decay_rate(pure, 2.0, 2.0), std::invalid_argument);
}

TEST_CASE("series summaries")
{
    auto s = series_from(10.0, 1.0, [](TimeSeriesRecord& r) {
        r.sync_dist_sq = 100.0 / (1.0 + r.t);
        r.sync_L = r.sync_dist_sq;
        r.h1_u = std::min(r.t, 3.0);
    });
    // Tail = last 10% of [0, 10]: t ≥ 9.
    CHECK(async_degree_proxy(s, 0.1) == doctest::Approx(std::sqrt(10.0)));
    CHECK(async_degree_proxy({}, 0.1) == 0.0);

    CHECK(count_sync_increases(s, 0.0) == 0);
    s[7].sync_L = 50.0;
    CHECK(count_sync_increases(s, 0.0) == 1);
    CHECK(count_sync_increases(s, 7.0) == 0);

    const RunningMaxSummary h = h1_running_max(s);
    CHECK(h.peak == 3.0);
    CHECK(h.last_increase_time == 3.0);
}
