#include <doctest.h>

#include <string>

#include "hrsync/config.hpp"

using namespace hrsync;

namespace {

std::string error_of(const std::string& text)
{
    try {
        parse_run_config(text);
    } catch (const ConfigError& e) {
        return e.what();
    }
    return "";
}

}  // namespace

TEST_CASE("a minimal preset config resolves to the preset and defaults")
{
    const RunConfig typical = parse_run_config("[parameters]\npreset = typical\n");
    CHECK(typical.params == typical_parameters());
    CHECK(typical.experiment.T == 2000.0);
    CHECK(typical.stepper == StepperConfig{});

    const RunConfig test = parse_run_config("[parameters]\npreset = test\n");
    CHECK(test.params == test_parameters());
    CHECK(test.experiment.T == 20.0);

    CHECK(parse_run_config("") == RunConfig{});
}

TEST_CASE("explicit keys override the preset; S overrides q")
{
    const RunConfig c = parse_run_config(R"(
# comment line
[parameters]
preset = typical
p = 2.5e4      # trailing comment
r = 0.01
S = 4

[grid]
dimension = 2
points = 33
length = 2

[stepper]
dt = 5e-4
scheme = imex-euler
check_interval = 7

[initial]
generator = constant
values = 1, 2, 3, 4, 5, 6.5

[experiment]
name = custom
T = 3
sample_every = 20
epsilon = 1e-8
)");
    CHECK(c.params.p == 2.5e4);
    CHECK(c.params.r == 0.01);
    CHECK(c.params.q == doctest::Approx(0.04));
    CHECK(c.params.a == 3.0);
    CHECK(c.params.dimension == 2);
    CHECK(c.params.domain_length == 2.0);
    CHECK(c.grid == GridSpec{2, 33, 2.0});
    CHECK(c.stepper.dt == 5e-4);
    CHECK(c.stepper.scheme == Scheme::ImexEuler);
    CHECK(c.stepper.check_interval == 7);
    CHECK(c.initial.values == OdePoint{1, 2, 3, 4, 5, 6.5});
    CHECK(c.experiment.name == "custom");
    CHECK(c.experiment.T == 3.0);
    CHECK(c.experiment.sample_every == 20);
    CHECK(c.experiment.epsilon == 1e-8);
}

TEST_CASE("misspelled keys name the nearest valid key and the line")
{
    const std::string msg = error_of("[parameters]\npreset = test\nbta = 2\n");
    CHECK(msg.find("line 3") != std::string::npos);
    CHECK(msg.find("'bta'") != std::string::npos);
    CHECK(msg.find("'beta'") != std::string::npos);

    try {
        parse_run_config("[parameters]\n\nbta = 2\n");
        FAIL("expected ConfigError");
    } catch (const ConfigError& e) {
        CHECK(e.line == 3);
    }

    CHECK(error_of("[paramters]\n").find("[parameters]") != std::string::npos);
    CHECK(nearest_key("dimenson", config_schema().at("grid")) == "dimension");
}

TEST_CASE("malformed input is rejected")
{
    CHECK(error_of("[grid]\npoints = many\n").find("line 2") != std::string::npos);
    CHECK(error_of("[grid]\npoints = 10.5\n").find("integer") != std::string::npos);
    CHECK(error_of("[grid\n").find("unterminated") != std::string::npos);
    CHECK(error_of("a = 1\n").find("outside") != std::string::npos);
    CHECK(error_of("[parameters]\na\n").find("key = value") != std::string::npos);
    CHECK(error_of("[parameters]\na =\n").find("empty value") != std::string::npos);
    CHECK(error_of("[parameters]\na = 1\na = 2\n").find("duplicate") != std::string::npos);
    CHECK(error_of("[parameters]\npreset = fast\n").find("line 2") != std::string::npos);
    CHECK(error_of("[stepper]\nscheme = rk4\n").find("line 2") != std::string::npos);
    CHECK(error_of("[initial]\nvalues = 1, 2, 3\n").find("six") != std::string::npos);
    CHECK(error_of("[parameters]\nb = -1\n").find("b must be positive") != std::string::npos);
    CHECK(error_of("[experiment]\np_lo = 5\np_hi = 1\n").find("p_lo") != std::string::npos);
}

TEST_CASE("property: the echoed configuration parses back to the same run")
{
    RunConfig c = parse_run_config("[parameters]\npreset = typical\nS = 3.7\nJ = 3.1\n"
                                   "[initial]\nseed = 99\namplitude = 0.3\n"
                                   "[experiment]\nT = 12.5\ntol = 0.01\n");
    c.initial.values = {0.1, 1.0 / 3.0, -2.0 / 7.0, 1e-300, -0.0, 12345.678};
    const std::string echo = echo_run_config(c);
    const RunConfig back = parse_run_config(echo);
    CHECK(back == c);
    CHECK(echo_run_config(back) == echo);
}
