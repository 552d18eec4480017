#include <doctest.h>

#include <filesystem>
#include <fstream>
#include <sstream>

#include "hrsync/output.hpp"

using namespace hrsync;

namespace {

std::vector<std::string> lines_of(const std::string& text)
{
    std::vector<std::string> out;
    std::istringstream in(text);
    for (std::string line; std::getline(in, line);) out.push_back(line);
    return out;
}

}  // namespace

TEST_CASE("format_double round-trips")
{
    for (double v : {0.1, 1.0 / 3.0, -2.5e-300, 6.02214076e23, 0.0}) {
        const std::string s = format_double(v);
        CHECK(std::stod(s) == v);
    }
    CHECK(format_double(0.5) == "0.5");
    CHECK(format_double(0.1) == "0.10000000000000001");
}

TEST_CASE("write_timeseries")
{
    TimeSeries records(3);
    for (int i = 0; i < 3; ++i) {
        records[i].t = 0.5 * i;
        records[i].norm_g_sq = 1.0 + i;
        records[i].sync_L = 0.1;
        records[i].h1_u = 2.0;
    }
    std::ostringstream out;
    write_timeseries(records, out);
    const auto lines = lines_of(out.str());
    REQUIRE(lines.size() == 4);
    CHECK(lines[0] == kTimeSeriesHeader);
    CHECK(lines[0] == "t,norm_g_sq,sync_L,sync_dist_sq,h1_u,weighted_norm");
    CHECK(lines[2] == "0.5,2,0.10000000000000001,0,2,0");

    std::ostringstream empty;
    CHECK_THROWS_AS(write_timeseries({}, empty), std::invalid_argument);

    const std::filesystem::path dir = HRSYNC_TEST_TMPDIR;
    std::filesystem::create_directories(dir);
    const auto path = dir / "series.csv";
    write_timeseries(records, path);
    std::ifstream in(path);
    std::stringstream text;
    text << in.rdbuf();
    CHECK(text.str() == out.str());
    CHECK_THROWS_AS(write_timeseries(records, dir / "missing" / "x.csv"), std::runtime_error);
}

TEST_CASE("write_report layout")
{
    ExperimentReport r;
    r.name = "sync";
    r.config_echo = "[parameters]\np = 6\n";
    r.scalars = {{"mu", 1.0}, {"mu_emp", 1.9962}};
    r.labels = {{"bracket", "bisected"}};
    BoundReport b;
    b.name = "gronwall_bound";
    b.fraction = 1.0;
    b.samples_checked = 3;
    b.worst_margin = 0.25;
    b.worst_time = 2.0;
    r.bounds.push_back(b);
    r.checks = {{"gronwall_bound", true}, {"decay_rate", false}};
    r.notes = {"a note"};

    std::ostringstream out;
    write_report(r, out);
    const std::string text = out.str();
    const auto lines = lines_of(text);
    CHECK(lines[0] == "Experiment: sync");
    CHECK(lines[1] == "Overall: FAIL");
    CHECK(text.find("  mu_emp = 1.9962\n") != std::string::npos);
    CHECK(text.find("Bound gronwall_bound: holds at 100% of 3 samples; worst margin 0.25 at t = 2\n") !=
          std::string::npos);
    CHECK(text.find("  decay_rate: FAIL\n") != std::string::npos);
    CHECK(text.find("  - a note\n") != std::string::npos);
    CHECK(text.find("# configuration\n[parameters]\np = 6\n") != std::string::npos);

    const auto kv = text.substr(text.find("# results (key=value)\n"));
    CHECK(kv == "# results (key=value)\n"
                "experiment=sync\n"
                "mu=1\n"
                "mu_emp=1.9962\n"
                "bracket=bisected\n"
                "gronwall_bound_fraction=1\n"
                "gronwall_bound_worst_margin=0.25\n"
                "gronwall_bound_worst_time=2\n"
                "gronwall_bound=pass\n"
                "decay_rate=fail\n"
                "overall=fail\n");

    r.checks.back().second = true;
    std::ostringstream ok;
    write_report(r, ok);
    CHECK(ok.str().find("Overall: PASS") != std::string::npos);
    CHECK(ok.str().find("overall=pass") != std::string::npos);
}
