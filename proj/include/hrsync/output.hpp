#pragma once

#include <filesystem>
#include <ostream>
#include <string>

#include "hrsync/diagnostics.hpp"
#include "hrsync/experiments.hpp"

namespace hrsync {

inline constexpr const char* kTimeSeriesHeader =
    "t,norm_g_sq,sync_L,sync_dist_sq,h1_u,weighted_norm";

/// Shortest decimal text that reads back to the same double (17 significant
/// digits).
std::string format_double(double v);

/// CSV with kTimeSeriesHeader and one row per record. Throws
/// std::invalid_argument for an empty series and std::runtime_error when the
/// sink fails.
void write_timeseries(const TimeSeries& records, std::ostream& sink);
void write_timeseries(const TimeSeries& records, const std::filesystem::path& path);

/// Human-readable summary followed by a key=value block holding every
/// scalar, label, bound and check (as pass/fail).
void write_report(const ExperimentReport& report, std::ostream& sink);
void write_report(const ExperimentReport& report, const std::filesystem::path& path);

}  // namespace hrsync
