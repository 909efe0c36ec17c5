// Licensed under the Apache License, Version 2.0 (see LICENSE or
// https://www.apache.org/licenses/LICENSE-2.0).
//
// End-to-end checks of the CLI binary: byte determinism, exit codes, and a
// few output fields.  The binary path arrives as argv[1].

#define DOCTEST_CONFIG_IMPLEMENT
#include <doctest.h>

#include <array>
#include <cstdio>
#include <string>

#include <json.hpp>

namespace {

std::string g_cli;

struct RunResult {
    int exit_code;
    std::string out;
};

RunResult run(const std::string& args) {
    std::string cmd = g_cli + " " + args + " 2>/dev/null";
    std::array<char, 4096> buf{};
    std::string out;
    FILE* p = popen(cmd.c_str(), "r");
    REQUIRE(p != nullptr);
    size_t n;
    while ((n = fread(buf.data(), 1, buf.size(), p)) > 0) out.append(buf.data(), n);
    int status = pclose(p);
    return {WEXITSTATUS(status), out};
}

}  // namespace

TEST_CASE("curve-info fields") {
    RunResult r = run("curve-info -a 0,0,0,1,0");
    CHECK(r.exit_code == 0);
    auto j = nlohmann::json::parse(r.out);
    CHECK(j["schema"] == 1);
    CHECK(j["curve"]["j"] == "1728");
    CHECK(j["local"].size() == 1);
    CHECK(j["local"][0]["p"] == "2");
}

TEST_CASE("byte determinism") {
    for (const std::string& args :
         {std::string("twist-report -a 1,0,1,4,-6 --degrees 3,3"),
          std::string("isogenies -a 1,1,1,-13,-219 --degrees 3,5"),
          std::string("hesse --u 3 --v 1")}) {
        RunResult a = run(args);
        RunResult b = run(args);
        CHECK(a.exit_code == 0);
        CHECK(a.out == b.out);
        CHECK(!a.out.empty());
    }
}

TEST_CASE("worked-example twist report") {
    RunResult r = run("twist-report -a 1,0,1,4,-6 --degrees 3,3");
    REQUIRE(r.exit_code == 0);
    auto j = nlohmann::json::parse(r.out);
    CHECK(j["rank"]["rank0_density_lb"] == "1/4");
    CHECK(j["rank"]["avg_rank_bound"] == "7/6");
    CHECK(j["joint"]["terms"].size() == 6);
    bool found35 = false, found7 = false;
    for (const auto& st : j["sha"]) {
        if (st["density"] == "35/384") found35 = true;
        if (st["density"] == "7/384") found7 = true;
    }
    CHECK(found35);
    CHECK(found7);
}

TEST_CASE("restricted quintic report") {
    RunResult r = run("twist-report -a 1,1,1,-13,-219 --degrees 3,5 --restrict 2:1,inf:+,5:1");
    REQUIRE(r.exit_code == 0);
    auto j = nlohmann::json::parse(r.out);
    CHECK(j["marginals"][0]["restricted_ratio"]["ratio"] == "1");
    CHECK(j["marginals"][1]["restricted_ratio"]["ratio"] == "25");
    REQUIRE(j["sha"].size() == 1);
    CHECK(j["sha"][0]["ell"] == 5);
    CHECK(j["sha"][0]["min_order_exponent"] == 2);
    CHECK(j["sha"][0]["density"] == "1/2");
}

TEST_CASE("input errors exit 2") {
    CHECK(run("curve-info -a 0,0,0,0,0").exit_code == 2);       // singular
    CHECK(run("curve-info -a 1,2,bad,4,5").exit_code == 2);     // malformed
    CHECK(run("twist-report -a 1,0,1,4,-6 --degrees 3,3,3").exit_code == 2);
    CHECK(run("family18 --m 2 --n 4").exit_code == 2);          // not coprime
    CHECK(run("twist-report -a 0,0,0,1,0 --degrees 3").exit_code == 2);  // no 3-isogeny
    CHECK(run("delta-square -a 0,0,0,-1,0").exit_code == 2);    // full 2-torsion
}

TEST_CASE("delta-square reports the parameter") {
    RunResult r = run("delta-square -a 1,0,1,4,-6");
    REQUIRE(r.exit_code == 0);
    auto j = nlohmann::json::parse(r.out);
    CHECK(j["is_square"] == false);
    CHECK(j.contains("x06_t"));
}

int main(int argc, char** argv) {
    if (argc > 1) g_cli = argv[1];
    doctest::Context ctx;
    ctx.applyCommandLine(1, argv);
    return ctx.run();
}

TEST_CASE("verify-empirical smoke") {
    RunResult r = run("verify-empirical -a 1,0,1,4,-6 --degrees 3 --bound 1000");
    REQUIRE(r.exit_code == 0);
    auto j = nlohmann::json::parse(r.out);
    CHECK(j["result"]["locality_ok"] == true);
    CHECK(j["result"]["total"].get<long>() > 1100);
    CHECK(run("verify-empirical -a 1,0,1,4,-6 --degrees 3 --bound 10").exit_code == 2);
}
