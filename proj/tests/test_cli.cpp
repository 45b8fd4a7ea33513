#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cstdio>
#include <string>

namespace {

struct RunResult {
    int code;
    std::string out;
};

RunResult run(const std::string& args) {
    std::string cmd = std::string(FRSUM_BINARY) + " " + args + " 2>/dev/null";
    FILE* pipe = popen(cmd.c_str(), "r");
    REQUIRE(pipe != nullptr);
    std::string out;
    char buf[4096];
    std::size_t got;
    while ((got = fread(buf, 1, sizeof(buf), pipe)) > 0) out.append(buf, got);
    int status = pclose(pipe);
    return {WEXITSTATUS(status), out};
}

bool contains(const std::string& hay, const std::string& needle) {
    return hay.find(needle) != std::string::npos;
}

}  // namespace

TEST_CASE("restricted sum command") {
    RunResult r = run("msum --algebra A1 --k 2 --lambda 0 --n 1:4,0");
    CHECK(r.code == 0);
    CHECK(contains(r.out, "\"M\": 2"));
    CHECK(contains(r.out, "\"algebra\": \"A1\""));
    CHECK(contains(r.out, "\"version\""));
}

TEST_CASE("unrestricted sum command") {
    RunResult r = run("nsum --algebra A1 --k 2 --lambda 0 --n 1:4,0");
    CHECK(r.code == 0);
    CHECK(contains(r.out, "\"N\": 2"));
}

TEST_CASE("polynomial table command") {
    RunResult r = run("qsystem --algebra A1 --levels 3");
    CHECK(r.code == 0);
    CHECK(contains(r.out, "\"Q(1,3)\": \"t1^3 - 2*t1\""));

    RunResult b = run("qsystem --algebra B2 --levels 2");
    CHECK(b.code == 0);
    CHECK(contains(b.out, "\"Q(2,4)\""));
}

TEST_CASE("deformed table command with the recursion check") {
    RunResult r = run("deformed --algebra C2 --levels 2 --verify-recursion");
    CHECK(r.code == 0);
    CHECK(contains(r.out, "\"recursion_check\": \"pass\""));
    CHECK(contains(r.out, "\"D(1,2)\""));
}

TEST_CASE("statement verification command") {
    RunResult r = run("verify --statement gfactorization --algebra A2 --k 2 --window 4");
    CHECK(r.code == 0);
    CHECK(contains(r.out, "\"status\": \"pass\""));
    CHECK(contains(r.out, "\"checked_coefficients\""));

    RunResult s = run(
        "verify --statement partialfactorization --algebra B2 --k 1 --window 3 "
        "--lambda 1,0 --n 2:0,1 --split-p 1");
    CHECK(s.code == 0);
    CHECK(contains(s.out, "\"status\": \"pass\""));

    RunResult bad = run("verify --statement no-such-token --algebra A1 --k 1 --window 2");
    CHECK(bad.code == 2);
}

TEST_CASE("grid comparison command") {
    RunResult r = run("verify-mn --algebra G2 --k 1 --max-n 2 --max-lambda 2");
    CHECK(r.code == 0);
    CHECK(contains(r.out, "\"checked\": 90"));
    CHECK(contains(r.out, "\"failures\": 0"));
}

TEST_CASE("power-series comparison command") {
    RunResult r = run("ps-check --algebra A2 --k 1 --lambda 1,0 --n 1:1 --bound 3");
    CHECK(r.code == 0);
    CHECK(contains(r.out, "\"status\": \"pass\""));
}

TEST_CASE("oracle command on both grids") {
    RunResult r = run("oracle-check --grid sl2 --max-weight 5");
    CHECK(r.code == 0);
    CHECK(contains(r.out, "\"failures\": 0"));

    RunResult a = run("oracle-check --grid A2");
    CHECK(a.code == 0);
    CHECK(contains(a.out, "\"failures\": 0"));
}

TEST_CASE("sweep is deterministic and independent of the worker count") {
    std::string args = "sweep --algebra A1,B2 --k 1 --max-n 2 --max-lambda 1";
    RunResult one = run(args + " --jobs 1");
    RunResult four = run(args + " --jobs 4");
    CHECK(one.code == 0);
    CHECK(one.out == four.out);
    CHECK(contains(one.out, "\"failures\": 0"));
    // repeated runs are byte-identical
    CHECK(run(args + " --jobs 1").out == one.out);
}

TEST_CASE("usage errors exit with code 2") {
    CHECK(run("msum --algebra Z9 --k 1").code == 2);
    CHECK(run("nsum --no-such-flag").code == 2);
    CHECK(run("msum --algebra A2 --k 1 --n 1:1,2,3").code == 2);
    CHECK(run("").code == 2);
}
