#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cstdio>
#include <cstdlib>
#include <fstream>

#include "f2cs/io.hpp"
#include "f2cs/optimize.hpp"
#include "instances.hpp"

using namespace f2cs;
using f2cs::testing::data_path;

namespace {

struct CmdResult {
    int exit_code;
    std::string out;
};

CmdResult run_cli(const std::string& args) {
    std::string tmp = std::string(F2CS_DATA_DIR) + "/../build/cli_out.txt";
    std::string cmd = std::string(F2CS_CLI_PATH) + " " + args + " > " + tmp + " 2>&1";
    int rc = std::system(cmd.c_str());
    CmdResult res;
    res.exit_code = WEXITSTATUS(rc);
    res.out = read_file(tmp);
    std::remove(tmp.c_str());
    return res;
}

} // namespace

TEST_CASE("input kind detection and parsing") {
    ParsedInput net = parse_input_file(data_path("lnc_routing_broadcast.net"));
    CHECK(net.kind == InputKind::network);
    CHECK(net.network.omega == 3);
    CHECK(net.network.nodes.size() == 7);
    CHECK(net.network.edges.size() == 13);

    ParsedInput lrc = parse_input_file(data_path("lrc_l5.lrc"));
    CHECK(lrc.kind == InputKind::lrc);
    CHECK(lrc.lrc.ell == 5);
    CHECK(lrc.lrc.surviving == std::vector<int>{1, 3, 5});

    ParsedInput sys = parse_input_file(data_path("system_rank3.sys"));
    CHECK(sys.kind == InputKind::system);
    CHECK(sys.system.n() == 6);
    CHECK(sys.system_v == 3);
    CHECK(sys.system.blocks().size() == 1);
    CHECK(sys.system.nonrank().size() == 1);
}

TEST_CASE("parse errors carry positions") {
    CHECK_THROWS_AS(parse_input_text("", "t"), ParseError);
    CHECK_THROWS_AS(parse_input_text("bogus\n", "t"), ParseError);
    CHECK_THROWS_WITH_AS(parse_input_text("network\nomega 2\nnode a wat\n", "t"),
                         doctest::Contains("t:3"), ParseError);
    CHECK_THROWS_AS(parse_input_text("network\nomega 2\nnode s source\nedge s q\n", "t"),
                    ParseError);
    CHECK_THROWS_AS(parse_input_text("system\nx1 + x2\n", "t"), ParseError);
    // cyclic graph
    CHECK_THROWS_AS(parse_input_text("network\nomega 1\nnode s source\nnode a general\n"
                                     "node b general\nedge a b\nedge b a\n",
                                     "t"),
                    ParseError);
}

TEST_CASE("assignment parsing accepts both forms") {
    auto ones = parse_assignment_text("ones 2 4\n", 5);
    CHECK(ones == std::vector<uint8_t>{0, 1, 0, 1, 0});
    auto bits = parse_assignment_text("01010\n", 5);
    CHECK(bits == ones);
    CHECK_THROWS_AS(parse_assignment_text("0101\n", 5), ParseError);
    CHECK_THROWS_AS(parse_assignment_text("ones 9\n", 5), ParseError);
    CHECK_THROWS_AS(parse_assignment_text("01012\n", 5), ParseError);
}

TEST_CASE("charset files round-trip") {
    PolySystem p = parse_input_file(data_path("system_small.sys")).system;
    DecompositionResult d = bcs(p.nonrank(), 4, 0);
    std::vector<CharSet> original = d.charsets;
    std::string text = charsets_text(original);
    CHECK(text.find("charset k=0 df=") == 0);
    CHECK(text.find("----") != std::string::npos);
    std::vector<CharSet> parsed = parse_charsets_text(text, 4);
    REQUIRE(parsed.size() == original.size());
    for (size_t i = 0; i < parsed.size(); ++i)
        CHECK(parsed[i] == original[i]);
}

TEST_CASE("cli solve prints the summary row") {
    CmdResult r = run_cli("solve " + data_path("lrc_l5.lrc"));
    CHECK(r.exit_code == 0);
    CHECK(r.out.find("charsets=3 solutions=24 search_space=64") != std::string::npos);
    CHECK(r.out.find("x2 + x1 + 1") != std::string::npos);

    r = run_cli("solve " + data_path("system_small.sys"));
    CHECK(r.exit_code == 0);
    CHECK(r.out.find("charsets=2 solutions=3") != std::string::npos);
}

TEST_CASE("cli count and enumerate") {
    CmdResult r = run_cli("count " + data_path("lnc_routing_broadcast.net"));
    CHECK(r.exit_code == 0);
    CHECK(r.out.find("156") != std::string::npos);

    r = run_cli("enumerate " + data_path("system_small.sys"));
    CHECK(r.exit_code == 0);
    CHECK(r.out.find("1101") != std::string::npos); // the df=0 point
    r = run_cli("enumerate --limit 2 " + data_path("system_small.sys"));
    CHECK(r.exit_code == 3);
}

TEST_CASE("cli verify passes on shipped instances and fails on corrupted files") {
    CmdResult r = run_cli("verify " + data_path("lrc_l5.lrc"));
    CHECK(r.exit_code == 0);
    CHECK(r.out.find("PASS") == 0);

    r = run_cli("verify " + data_path("lnc_routing_broadcast.net"));
    CHECK(r.exit_code == 0);
    CHECK(r.out.find("PASS") == 0);

    // corrupt charset file: claims the whole space
    std::string bogus = std::string(F2CS_DATA_DIR) + "/../build/bogus_charsets.txt";
    write_file(bogus, "charset k=0 df=6\n");
    r = run_cli("verify --charsets " + bogus + " " + data_path("lrc_l5.lrc"));
    CHECK(r.exit_code == 1);
    CHECK(r.out.find("FAIL") == 0);
    CHECK(r.out.find("extra_point=") != std::string::npos);
    std::remove(bogus.c_str());
}

TEST_CASE("cli check reports feasibility and objective") {
    CmdResult r = run_cli("check --assignment " + data_path("lrc_l25_assignment.txt") + " " +
                          data_path("lrc_l25.lrc"));
    CHECK(r.exit_code == 0);
    CHECK(r.out.find("feasible, objective 5") != std::string::npos);

    std::string zero = std::string(F2CS_DATA_DIR) + "/../build/zero_assign.txt";
    write_file(zero, "000000\n");
    r = run_cli("check --assignment " + zero + " " + data_path("lrc_l5.lrc"));
    CHECK(r.exit_code == 0);
    CHECK(r.out.find("infeasible, objective 0") != std::string::npos);
    std::remove(zero.c_str());
}

TEST_CASE("cli optimize and export-wcnf") {
    CmdResult r = run_cli("optimize " + data_path("lrc_l5.lrc"));
    CHECK(r.exit_code == 0);
    CHECK(r.out.find("optimum=") != std::string::npos);

    std::string prefix = std::string(F2CS_DATA_DIR) + "/../build/cli_wcnf_";
    r = run_cli("export-wcnf --out " + prefix + " " + data_path("lrc_l5.lrc"));
    CHECK(r.exit_code == 0);
    for (int k = 0; k < 3; ++k) {
        std::string path = prefix + "charset" + std::to_string(k) + ".wcnf";
        CHECK(read_file(path).rfind("p wcnf", 0) == 0);
        std::remove(path.c_str());
        std::remove((prefix + "charset" + std::to_string(k) + ".map").c_str());
    }
}

TEST_CASE("cli maps failures to exit codes") {
    CmdResult r = run_cli("solve /nonexistent/file");
    CHECK(r.exit_code == 2);

    // infeasible instance: identity matrix can never reach rank 2 columns
    std::string dead = std::string(F2CS_DATA_DIR) + "/../build/dead.sys";
    write_file(dead, "system\nn 2\nv 2\n[rank-block 1]\nx3*x1\nx3*x2\n");
    r = run_cli("solve " + dead);
    CHECK(r.exit_code == 1);
    CHECK(r.out.find("charsets=0 solutions=0") != std::string::npos);
    std::remove(dead.c_str());

    // user with too few inputs reports infeasible up front
    std::string starved = std::string(F2CS_DATA_DIR) + "/../build/starved.net";
    write_file(starved,
               "network\nomega 2\nnode s source\nnode u user\nedge s u\n");
    r = run_cli("solve " + starved);
    CHECK(r.exit_code == 1);
    std::remove(starved.c_str());
}

TEST_CASE("cli determinism across runs and workers") {
    CmdResult a = run_cli("solve --workers 1 " + data_path("lrc_l5.lrc"));
    CmdResult b = run_cli("solve --workers 4 " + data_path("lrc_l5.lrc"));
    // identical charset listing; the timing row differs
    auto strip_time = [](std::string s) {
        size_t pos = s.find(" time=");
        return pos == std::string::npos ? s : s.substr(0, pos);
    };
    CHECK(strip_time(a.out) == strip_time(b.out));
}
