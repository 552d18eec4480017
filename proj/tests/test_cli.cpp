#include <doctest.h>

#include <filesystem>
#include <fstream>
#include <sstream>

#include "hrsync/cli.hpp"

using namespace hrsync;

namespace {

const std::filesystem::path kTmp = HRSYNC_TEST_TMPDIR;

std::string write_config(const std::string& name, const std::string& text)
{
    std::filesystem::create_directories(kTmp);
    const auto path = kTmp / name;
    std::ofstream(path) << text;
    return path.string();
}

struct Run {
    int code;
    std::string out, err;
};

Run run(std::vector<std::string> args)
{
    std::ostringstream out, err;
    const int code = cli_main(args, out, err);
    return {code, out.str(), err.str()};
}

const char* kSmall = "[parameters]\npreset = test\n[grid]\npoints = 21\n[experiment]\nT = 2\n";

}  // namespace

TEST_CASE("constants prints the report and exits 0")
{
    const auto cfg = write_config("constants.cfg", "[parameters]\npreset = typical\n");
    const Run r = run({"constants", cfg});
    CHECK(r.code == kExitOk);
    CHECK(r.out.find("experiment=constants") != std::string::npos);
    CHECK(r.out.find("p_star=23916.52385152381") != std::string::npos);
}

TEST_CASE("malformed configs exit 2 with the message on stderr")
{
    const auto cfg = write_config("bad.cfg", "[parameters]\nbta = 1\n");
    const Run r = run({"sync", cfg});
    CHECK(r.code == kExitUsage);
    CHECK(r.err.find("nearest valid key is 'beta'") != std::string::npos);
    CHECK(r.out.empty());

    CHECK(run({"sync", (kTmp / "does-not-exist.cfg").string()}).code == kExitUsage);
    CHECK(run({"frobnicate", cfg}).code == kExitUsage);
    CHECK(run({}).code == kExitUsage);
    CHECK(run({"--help"}).code == kExitOk);
}

TEST_CASE("sync writes report and series with --out")
{
    const auto cfg = write_config("sync.cfg", kSmall);
    const auto dir = kTmp / "sync-out";
    std::filesystem::remove_all(dir);
    const Run r = run({"sync", cfg, "--out", dir.string(), "--quiet"});
    CHECK(r.code == kExitOk);
    CHECK(r.err.empty());
    CHECK(r.out.find("overall=pass") != std::string::npos);
    CHECK(std::filesystem::exists(dir / "sync_report.txt"));
    CHECK(std::filesystem::exists(dir / "sync_timeseries.csv"));
}

TEST_CASE("simulate streams CSV to stdout and honours --seed")
{
    const auto cfg = write_config("simulate.cfg", kSmall);
    const Run a = run({"simulate", cfg, "--quiet"});
    CHECK(a.code == kExitOk);
    CHECK(a.out.rfind("t,norm_g_sq,", 0) == 0);
    CHECK(run({"simulate", cfg, "--quiet"}).out == a.out);
    const Run b = run({"simulate", "--seed", "7", cfg, "--quiet"});
    CHECK(b.code == kExitOk);
    CHECK(b.out != a.out);
}

TEST_CASE("a failing check exits 1")
{
    // Oracle tolerance cannot be met with a step this coarse.
    const auto cfg = write_config("oracle.cfg",
                                  "[parameters]\npreset = test\n[grid]\npoints = 5\n"
                                  "[stepper]\ndt = 0.05\nscheme = imex-euler\n"
                                  "[initial]\ngenerator = constant\nvalues = 2, -1, 0.5, -2, 1, 0\n"
                                  "[experiment]\nT = 5\nsample_every = 1\n");
    const Run r = run({"oracle", cfg, "--quiet"});
    CHECK(r.code == kExitCheckFailed);
    CHECK(r.out.find("oracle_equivalence=fail") != std::string::npos);
}
