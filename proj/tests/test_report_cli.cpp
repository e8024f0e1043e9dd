#include <doctest.h>

#include <array>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>

#include "torusbundle/report.hpp"
#include "torusbundle/verification.hpp"

using namespace torusbundle;

#ifndef TORUSBUNDLE_CLI
#define TORUSBUNDLE_CLI "torusbundle"
#endif

namespace {

struct RunResult {
    int exit_code = -1;
    std::string out;
};

RunResult run_cli(const std::string& args) {
    std::string cmd = std::string(TORUSBUNDLE_CLI) + " " + args + " 2>&1";
    std::array<char, 4096> buf{};
    RunResult r;
    FILE* pipe = popen(cmd.c_str(), "r");
    REQUIRE(pipe != nullptr);
    while (std::size_t n = fread(buf.data(), 1, buf.size(), pipe)) r.out.append(buf.data(), n);
    int status = pclose(pipe);
    r.exit_code = WEXITSTATUS(status);
    return r;
}

std::string temp_path(const std::string& name) {
    return std::string("/tmp/torusbundle_test_") + name;
}

std::string strip_timing_lines(const std::string& text) {
    std::istringstream is(text);
    std::ostringstream os;
    std::string line;
    while (std::getline(is, line))
        if (line.empty() || line[0] != '#') os << line << "\n";
    return os.str();
}

}  // namespace

TEST_CASE("report JSON round trip is a fixed point") {
    for (const auto& theta : six_case_corpus()) {
        Report rep = run_report(theta, {CoefficientRing::integers(), CoefficientRing::mod(2),
                                        CoefficientRing::mod(5)});
        std::string text = report_to_json(rep);
        Report back = report_from_json(text);
        CHECK(back == rep);
        CHECK(report_to_json(back) == text);
    }
}

TEST_CASE("report content for the trivial action") {
    Report rep = run_report(GluingMatrix(1, 0, 0, 1), {CoefficientRing::integers()});
    CHECK(rep.all_checks_passed);
    CHECK(rep.det == 1);
    CHECK(rep.rank_theta_minus_identity == 0);
    REQUIRE(rep.rings.size() == 1);
    CHECK(rep.rings[0].groups[0].name == "Z");
    CHECK(rep.rings[0].groups[1].name == "Z^3");
    CHECK(rep.rings[0].groups[2].name == "Z^3");
    CHECK(rep.rings[0].groups[3].name == "Z");
    CHECK(rep.rings[0].case_index == 1);
}

TEST_CASE("cli report exit codes") {
    CHECK(run_cli("report --theta 1,0,0,1").exit_code == 0);
    RunResult bad = run_cli("report --theta 1,2,3,4");
    CHECK(bad.exit_code == 2);
    CHECK(bad.out.find("-2") != std::string::npos);
    CHECK(run_cli("report --theta 1,0,0,1 --ring Z4").exit_code == 2);
    CHECK(run_cli("report --theta 1,0,0,1 --ring Zp --p 9").exit_code == 2);
    CHECK(run_cli("report --theta 2,1,1,1 --ring Z,Z2,Z3 --format json").exit_code == 0);
}

TEST_CASE("cli batch") {
    const std::string in = temp_path("batch_in.txt");
    const std::string out = temp_path("batch_out.json");

    SUBCASE("empty input") {
        std::ofstream(in) << "";
        RunResult r = run_cli("batch --input " + in + " --output " + out);
        CHECK(r.exit_code == 0);
        std::ifstream result(out);
        std::stringstream ss;
        ss << result.rdbuf();
        CHECK(ss.str().find("[]") != std::string::npos);
    }

    SUBCASE("six-case corpus") {
        std::ofstream f(in);
        f << "1,0,0,1\n1,0,1,1\n0,1,1,0\n1,2,0,-1\n2,1,1,1\n2,1,1,0\n";
        f.close();
        RunResult r = run_cli("batch --input " + in + " --output " + out + " --jobs 3");
        CHECK(r.exit_code == 0);
        CHECK(r.out.find("6 matrices processed, 0 rejected") != std::string::npos);
    }

    SUBCASE("invalid line is reported but does not abort") {
        std::ofstream f(in);
        f << "1,0,0,1\n1,2,3,4\n[0,1,1,0]\n";
        f.close();
        RunResult r = run_cli("batch --input " + in + " --output " + out);
        CHECK(r.exit_code == 0);
        CHECK(r.out.find("2 matrices processed, 1 rejected") != std::string::npos);
        CHECK(r.out.find("line 2") != std::string::npos);
    }

    SUBCASE("missing input file") {
        RunResult r = run_cli("batch --input /nonexistent/x --output " + out);
        CHECK(r.exit_code == 2);
    }
}

TEST_CASE("cli verify determinism") {
    RunResult a = run_cli("verify --samples 25 --seed 99");
    RunResult b = run_cli("verify --samples 25 --seed 99");
    CHECK(a.exit_code == 0);
    CHECK(strip_timing_lines(a.out) == strip_timing_lines(b.out));
    CHECK(a.out.find("PASS") != std::string::npos);

    RunResult c = run_cli("verify --samples 0");
    CHECK(c.exit_code == 2);
}

TEST_CASE("verification engine summary") {
    VerificationReport rep = run_verification({4242, 40, 2});
    CHECK(rep.all_passed);
    bool found_chain = false;
    for (const auto& s : rep.suites) {
        CHECK(s.passed == s.total);
        if (s.name == "chain_complex") {
            found_chain = true;
            CHECK(s.total == 40);
        }
    }
    CHECK(found_chain);
}
