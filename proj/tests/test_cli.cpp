#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>
#include <json.hpp>

#include <array>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <string>

#ifndef FLOPGW_CLI
#error "FLOPGW_CLI must point at the CLI binary"
#endif
#ifndef FLOPGW_GOLDEN_DIR
#error "FLOPGW_GOLDEN_DIR must point at the golden files"
#endif

namespace {

struct RunResult {
    int exit_code = -1;
    std::string out;
};

RunResult run_cli(const std::string& args)
{
    const std::string cmd = std::string(FLOPGW_CLI) + " " + args + " 2>/dev/null";
    RunResult res;
    FILE* pipe = popen(cmd.c_str(), "r");
    REQUIRE(pipe != nullptr);
    std::array<char, 4096> buf{};
    size_t got;
    while ((got = fread(buf.data(), 1, buf.size(), pipe)) > 0)
        res.out.append(buf.data(), got);
    const int status = pclose(pipe);
    res.exit_code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
    return res;
}

nlohmann::json load_golden(const std::string& name)
{
    std::ifstream in(std::string(FLOPGW_GOLDEN_DIR) + "/" + name);
    REQUIRE(in.good());
    nlohmann::json j;
    in >> j;
    return j;
}

void check_golden(const std::string& args, const std::string& golden, int expect_exit = 0)
{
    const RunResult res = run_cli(args);
    CHECK(res.exit_code == expect_exit);
    CHECK(nlohmann::json::parse(res.out) == load_golden(golden));
}

} // namespace

TEST_CASE("golden end-to-end runs")
{
    check_golden("verify-flop --r 2 --insertions \"h^2,h^2,h^2*xi^3\" --d1-max 8 --json",
                 "verify_flop_ex1.json");
    check_golden("npoint --r 2 --insertions \"h^2,h^2,tau_4 xi\" --d1-max 8 --json",
                 "npoint_descendent.json");
    check_golden("extremal --r 2 --degrees 1,2,2 --d 1..4 --json", "extremal_122.json");
    check_golden("batyrev --r 3 --json", "batyrev_r3.json");
    check_golden("defect --r 2 --insertions \"h,h^2,h^2\" --json", "defect_r2.json");
    check_golden("defect --r 2 --rprime 3 --insertions \"h^2,h^2,h*xi\" --json",
                 "defect_flip_r2_rp3.json");
    check_golden("isometry --r 4 --json", "isometry_r4.json");
    check_golden("table --r 2 --d2 1 --d1-max 8 --json", "table_r2_d2_1.json");
}

TEST_CASE("output is byte-stable under re-run")
{
    const std::string args = "table --r 2 --d2 1 --d1-max 8 --json";
    CHECK(run_cli(args).out == run_cli(args).out);
}

TEST_CASE("exit codes")
{
    CHECK(run_cli("nosuch-command").exit_code == 2);
    CHECK(run_cli("npoint --r 2").exit_code == 2); // missing --insertions
    // dimension filter admits no d2
    CHECK(run_cli("npoint --r 2 --insertions \"h,h,h\"").exit_code == 2);
    // bad insertion grammar
    CHECK(run_cli("npoint --r 2 --insertions \"h^2,z^3,h^2\"").exit_code == 2);
    // cutoff too small for the needed fit degree: NoFit
    CHECK(run_cli("npoint --r 2 --insertions \"h^2,h^2,h^2*xi^3\" --d1-max 7").exit_code == 3);
    // out-of-range exponent normalizes to zero, then the filter rejects
    CHECK(run_cli("npoint --r 2 --insertions \"h^5,h^2,h^2\"").exit_code == 2);
    // passing verifications exit 0
    CHECK(run_cli("verify-flop --r 2 --insertions \"xi^2,xi^2,h^2*xi^3\" --d1-max 8").exit_code == 0);
}

#include "flopgw/insertion_text.hpp"

TEST_CASE("insertion grammar: parse(print(x)) == x")
{
    using namespace flopgw;
    const Ring& ring = Ring::get(ModelSpec::flop_local(2));
    for (int i = 0; i < ring.basis_size(); ++i)
        for (int k : {0, 3}) {
            const Insertion x{k, ring.basis_element(i)};
            const Insertion back = parse_insertion(insertion_to_string(x), ring);
            CHECK(back.k == x.k);
            CHECK(back.cls == x.cls);
        }
    CHECK_THROWS_AS(parse_insertion("z^2", ring), InsertionParseError);
    std::string warning;
    const Insertion zero = parse_insertion("h^5", ring, &warning);
    CHECK(zero.cls.is_zero());
    CHECK(!warning.empty());
}

TEST_CASE("insertion grammar round-trips through the report")
{
    const RunResult res = run_cli("npoint --r 2 --insertions \"tau_4 xi,h^2,h^2\" --json");
    CHECK(res.exit_code == 0);
    const auto j = nlohmann::json::parse(res.out);
    CHECK(j["insertions"] == nlohmann::json({"tau_4 xi", "h^2", "h^2"}));
}
