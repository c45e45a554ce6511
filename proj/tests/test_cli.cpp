#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "dglie/run.hpp"

using namespace dglie;

namespace {

std::string fx(const char* name) { return std::string(DGLIE_FIXTURES) + "/" + name; }

}  // namespace

TEST_CASE("trees subcommand") {
    RunResult rr = run_command({"trees", "--leaves", "5"});
    CHECK(rr.exit_code == 0);
    CHECK(rr.report["count"] == 3);
    RunResult bad = run_command({"trees", "--leaves", "0"});
    CHECK(bad.exit_code == 2);
}

TEST_CASE("check subcommand and exit codes") {
    RunResult ok = run_command({"check", fx("example37.dgl")});
    CHECK(ok.exit_code == 0);
    CHECK(ok.report["cap"] == 11);
    CHECK(ok.report["conventions"] == "v1");
    CHECK(ok.report.contains("input"));
    CHECK(ok.report["input"].contains("digest"));

    // parse error -> 2
    RunResult parse = run_command({"check", fx("example37_table.retract")});
    CHECK(parse.exit_code == 2);

    // missing file -> 2
    RunResult missing = run_command({"check", fx("no_such.dgl")});
    CHECK(missing.exit_code == 2);
}

TEST_CASE("homology subcommand reports the fixture dimensions") {
    RunResult rr = run_command({"homology", fx("t1.dgl")});
    CHECK(rr.exit_code == 0);
    for (auto& d : rr.report["degrees"]) {
        if (d["degree"] == 2) CHECK(d["dim"] == 2);
        if (d["degree"] == 4) CHECK(d["dim"] == 0);
    }
}

TEST_CASE("retract subcommand round-trips through a file") {
    std::string out = std::string(DGLIE_FIXTURES) + "/../build/tmp_retract.txt";
    RunResult rr = run_command({"retract", fx("t1.dgl"), "--out", out});
    CHECK(rr.exit_code == 0);
    RunResult rr2 = run_command({"transfer", fx("t1.dgl"), "--arity", "3",
                                 "--retract-file", out});
    CHECK(rr2.exit_code == 0);
}

TEST_CASE("transfer subcommand carries Jacobi verdicts") {
    RunResult rr = run_command({"transfer", fx("cp2.dgl"), "--arity", "3"});
    CHECK(rr.exit_code == 0);
    bool saw_jacobi = false, saw_nonzero = false;
    for (auto& v : rr.report["verdicts"]) {
        std::string name = v["name"];
        if (name.rfind("generalized_jacobi", 0) == 0) {
            saw_jacobi = true;
            CHECK(v["status"] == "pass");
        }
    }
    for (auto& b : rr.report["brackets"])
        if (b["arity"] == 3 && b["value"] != "0" && b["value"] != "unknown beyond cap")
            saw_nonzero = true;
    CHECK(saw_jacobi);
    CHECK(saw_nonzero);
}

TEST_CASE("coalgebra subcommand") {
    RunResult rr = run_command({"coalgebra", fx("t1.dgl"), "--check-dsq", "--max-len", "3"});
    CHECK(rr.exit_code == 0);

    RunResult phi = run_command({"coalgebra", fx("t2.dgl"), "--max-degree", "10", "--solve-phi",
                                 "--arity", "3", "--classes", "u1;u2;u3", "--target",
                                 "[u1,u23] - [u2,u13] + [u3,u12]"});
    CHECK(phi.exit_code == 0);
    CHECK(phi.report["phi"]["found"] == true);
}

TEST_CASE("whitehead subcommand with probe") {
    RunResult rr = run_command({"whitehead", fx("t2.dgl"), "--spheres", "3,3,3", "--classes",
                                "u1;u2;u3", "--target", "[u1,u23] - [u2,u13] + [u3,u12]"});
    CHECK(rr.exit_code == 0);
    CHECK(rr.report["probe"]["verdict"] == "MEMBER");

    // obstruction: free algebra with nonvanishing binary bracket
    RunResult ob = run_command({"whitehead", fx("free3.dgl"), "--spheres", "3,3,3", "--classes",
                                "a;b;c"});
    CHECK(ob.exit_code == 1);
    CHECK(ob.report.contains("obstruction"));
}

TEST_CASE("verify subcommands on the wedge fixture") {
    RunResult m1 = run_command({"verify", fx("t2.dgl"), "--max-degree", "9", "--theorem", "main1",
                                "--spheres", "3,3,3", "--classes", "u1;u2;u3"});
    CHECK(m1.exit_code == 0);

    RunResult ep = run_command({"verify", fx("t2.dgl"), "--max-degree", "10", "--theorem",
                                "elprime", "--spheres", "3,3,3", "--classes", "u1;u2;u3"});
    CHECK(ep.exit_code == 0);

    RunResult e2 = run_command({"verify", fx("t2.dgl"), "--max-degree", "9", "--theorem",
                                "elsegundo", "--spheres", "3,3,3", "--classes", "u1;u2;u3"});
    CHECK(e2.exit_code == 0);

    RunResult usage = run_command({"verify", fx("t2.dgl"), "--theorem", "main1"});
    CHECK(usage.exit_code == 2);
}

TEST_CASE("reports serialize rationals as exact strings") {
    RunResult rr = run_command({"transfer", fx("cp2.dgl"), "--arity", "3"});
    std::string dumped = rr.report.dump();
    // no floating point anywhere in the report
    CHECK(dumped.find(".0") == std::string::npos);
    CHECK(dumped.find("e-") == std::string::npos);
}
