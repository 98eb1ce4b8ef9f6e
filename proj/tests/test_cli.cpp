#include "cyldecay/serialize.hpp"

#include <doctest.h>

#include <json.hpp>

#include <cstdlib>
#include <fstream>
#include <sstream>
#include <string>

#ifndef CYLDECAY_CLI_PATH
#define CYLDECAY_CLI_PATH "cyldecay"
#endif

namespace {

int run(const std::string& args) {
    const std::string cmd = std::string(CYLDECAY_CLI_PATH) + " " + args + " >/dev/null 2>&1";
    const int rc = std::system(cmd.c_str());
    return WEXITSTATUS(rc);
}

std::string slurp(const std::string& path) {
    std::ifstream f(path);
    std::ostringstream os;
    os << f.rdbuf();
    return os.str();
}

} // namespace

TEST_CASE("build writes a timeline file with the declared blocks") {
    REQUIRE(run("build --kind harmonic --n0 12 -N 4 --out /tmp/cyldecay_tl.json") == 0);
    const auto j = nlohmann::json::parse(slurp("/tmp/cyldecay_tl.json"));
    CHECK(j.at("format") == "cyldecay-timeline");
    CHECK(j.at("blocks").size() == 4);
    CHECK(j.at("blocks")[0].at("k_in") == 4096);
    CHECK(j.at("blocks")[3].at("k_out") == 65536);
}

TEST_CASE("parameter-domain violations exit with code 2 and name the constraint") {
    CHECK(run("build --kind plis-miller --alpha 0.6 --n0 50 -N 3") == 2);
    CHECK(run("build --kind harmonic --n0 4 -N 1") == 2); // strict needs n0 >= 12
    CHECK(run("build --kind eigen-half --mu 1 --n0 12 -N 1 --out /tmp/cyldecay_eh.json") == 0);
}

TEST_CASE("verify on a file round-trips against the in-memory run") {
    REQUIRE(run("build --kind harmonic --n0 12 -N 1 --out /tmp/cyldecay_t1.json") == 0);
    REQUIRE(run("verify --timeline /tmp/cyldecay_t1.json --suite decay --seed 7 "
                "--out /tmp/cyldecay_r1.json") == 0);
    REQUIRE(run("verify --kind harmonic --n0 12 -N 1 --suite decay --seed 7 "
                "--out /tmp/cyldecay_r2.json") == 0);
    const auto r1 = nlohmann::json::parse(slurp("/tmp/cyldecay_r1.json"));
    const auto r2 = nlohmann::json::parse(slurp("/tmp/cyldecay_r2.json"));
    CHECK(r1.at("checks") == r2.at("checks"));
    CHECK(r1.at("decay") == r2.at("decay"));
}

TEST_CASE("corrupted timeline files exit with code 2") {
    {
        std::ofstream f("/tmp/cyldecay_bad.json");
        f << "{\"format\": \"cyldecay-timeline\", \"version\": 1, \"config\": {}, "
             "\"blocks\": [{\"n\": 1, \"t0\": 0.5, \"t1\": 1.0, \"k_in\": 7, "
             "\"v_in\": {\"sign\": 1, \"logmag\": 0.0}}]}";
    }
    CHECK(run("verify --timeline /tmp/cyldecay_bad.json --suite decay") == 2);
    {
        std::ofstream f("/tmp/cyldecay_bad2.json");
        f << "this is not json";
    }
    CHECK(run("verify --timeline /tmp/cyldecay_bad2.json") == 2);
}

TEST_CASE("an unreachable tolerance makes verify exit with code 1") {
    {
        std::ofstream f("/tmp/cyldecay_tight.json");
        f << "{\"tolerances\": {\"residual_rel\": 1e-18}}";
    }
    CHECK(run("verify --kind harmonic --n0 12 -N 1 --suite residual "
              "--tolerances /tmp/cyldecay_tight.json --out /tmp/cyldecay_r3.json") == 1);
    CHECK(run("report --report /tmp/cyldecay_r3.json") == 1);
}

TEST_CASE("sample emits CSV tables") {
    REQUIRE(run("sample --kind harmonic --n0 12 -N 1 --what decay --out /tmp/cyldecay_d.csv") ==
            0);
    const std::string csv = slurp("/tmp/cyldecay_d.csv");
    CHECK(csv.rfind("t,sup_sign,sup_logmag", 0) == 0);
    REQUIRE(run("sample --kind parabolic -N 3 --what grid --nx 8 --ny 8 --t 0.5 "
                "--out /tmp/cyldecay_g.csv") == 0);
    CHECK(slurp("/tmp/cyldecay_g.csv").rfind("x,y,t,u_logmag", 0) == 0);
    REQUIRE(run("sample --kind gaussian --n0 100 -N 4 --what line --nt 50 "
                "--out /tmp/cyldecay_l.csv") == 0);
    CHECK(slurp("/tmp/cyldecay_l.csv").rfind("t,u_sign,u_logmag", 0) == 0);
}
