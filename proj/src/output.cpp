#include "hrsync/output.hpp"

#include <cstdio>
#include <fstream>
#include <stdexcept>

namespace hrsync {

std::string format_double(double v)
{
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

namespace {

void require_good(const std::ostream& sink, const std::string& what)
{
    if (!sink) throw std::runtime_error("failed to write " + what);
}

std::ofstream open_for_write(const std::filesystem::path& path)
{
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) throw std::runtime_error("cannot open " + path.string() + " for writing");
    return out;
}

const char* pass_fail(bool ok) { return ok ? "pass" : "fail"; }

}  // namespace

void write_timeseries(const TimeSeries& records, std::ostream& sink)
{
    if (records.empty()) throw std::invalid_argument("no time-series records to write");
    sink << kTimeSeriesHeader << '\n';
    for (const auto& r : records) {
        sink << format_double(r.t) << ',' << format_double(r.norm_g_sq) << ','
             << format_double(r.sync_L) << ',' << format_double(r.sync_dist_sq) << ','
             << format_double(r.h1_u) << ',' << format_double(r.weighted_norm) << '\n';
    }
    sink.flush();
    require_good(sink, "time series");
}

void write_timeseries(const TimeSeries& records, const std::filesystem::path& path)
{
    if (records.empty()) throw std::invalid_argument("no time-series records to write");
    std::ofstream out = open_for_write(path);
    write_timeseries(records, out);
}

void write_report(const ExperimentReport& report, std::ostream& sink)
{
    sink << "Experiment: " << report.name << '\n';
    sink << "Overall: " << (report.passed() ? "PASS" : "FAIL") << "\n\n";
    if (!report.scalars.empty()) {
        sink << "Results\n";
        for (const auto& [key, value] : report.scalars)
            sink << "  " << key << " = " << format_double(value) << '\n';
        sink << '\n';
    }
    for (const auto& b : report.bounds) {
        sink << "Bound " << b.name << ": holds at " << b.fraction * 100.0 << "% of "
             << b.samples_checked << " samples; worst margin " << format_double(b.worst_margin)
             << " at t = " << format_double(b.worst_time) << '\n';
        for (const auto& n : b.notes) sink << "  " << n << '\n';
    }
    if (!report.checks.empty()) {
        sink << "Checks\n";
        for (const auto& [key, ok] : report.checks)
            sink << "  " << key << ": " << (ok ? "PASS" : "FAIL") << '\n';
    }
    if (!report.notes.empty()) {
        sink << "Notes\n";
        for (const auto& n : report.notes) sink << "  - " << n << '\n';
    }
    sink << "\n# configuration\n" << report.config_echo;

    sink << "\n# results (key=value)\n";
    sink << "experiment=" << report.name << '\n';
    for (const auto& [key, value] : report.scalars)
        sink << key << '=' << format_double(value) << '\n';
    for (const auto& [key, value] : report.labels) sink << key << '=' << value << '\n';
    for (const auto& b : report.bounds) {
        sink << b.name << "_fraction=" << format_double(b.fraction) << '\n';
        sink << b.name << "_worst_margin=" << format_double(b.worst_margin) << '\n';
        sink << b.name << "_worst_time=" << format_double(b.worst_time) << '\n';
    }
    for (const auto& [key, ok] : report.checks) sink << key << '=' << pass_fail(ok) << '\n';
    sink << "overall=" << pass_fail(report.passed()) << '\n';
    sink.flush();
    require_good(sink, "report");
}

void write_report(const ExperimentReport& report, const std::filesystem::path& path)
{
    std::ofstream out = open_for_write(path);
    write_report(report, out);
}

}  // namespace hrsync
