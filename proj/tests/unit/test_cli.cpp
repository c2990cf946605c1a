#include <doctest.h>

#include <cstdio>
#include <fstream>
#include <sstream>

#include "support.hpp"
#include "wpbisim/cli.hpp"

using namespace wpb;
using namespace wpb::test;

namespace {

struct Run {
    int code;
    std::string out;
    std::string err;
};

Run run(std::vector<std::string> args) {
    args.insert(args.begin(), "wpbisim");
    std::vector<const char*> argv;
    for (const auto& a : args) argv.push_back(a.c_str());
    std::ostringstream out, err;
    const int code = run_cli(static_cast<int>(argv.size()), argv.data(), out, err);
    return {code, out.str(), err.str()};
}

const std::string kFine = "{sbar,t,u,v|g|b|r}";
const std::string kTarget = "g:1/16,b:5/16,r:10/16";

}  // namespace

TEST_CASE("check") {
    const std::string e = data_path("example_e.pa");
    const Run r = run({"check", e, e});
    CHECK(r.code == 0);
    CHECK(r.out == "BISIMILAR\n");
    const Run traced = run({"check", e, e, "--trace"});
    CHECK(traced.out == "split C#0 on (1.t -a-> 1.g:1) -> C#0, C#1\nBISIMILAR\n");
}

TEST_CASE("weaktrans") {
    const std::string e = data_path("example_e.pa");
    const Run yes = run({"weaktrans", e, "--from", "sbar", "--label", "a", "--target", kTarget, "--partition", kFine,
                         "--scheduler"});
    CHECK(yes.code == 0);
    CHECK(yes.out.rfind("FEASIBLE\n", 0) == 0);
    CHECK(yes.out.find("t PreA -> tr#1:1/5, tr#4:4/5 | stop:0") != std::string::npos);

    const Run no = run({"weaktrans", e, "--from", "sbar", "--label", "a", "--target", kTarget, "--partition", kFine,
                        "--allowed", "0,1,2,3"});
    CHECK(no.code == 1);
    CHECK(no.out == "INFEASIBLE\n");

    const Run other = run({"weaktrans", e, "--from", "sbar", "--label", "a", "--target", "g:1/4,b:1/4,r:1/2",
                           "--partition", kFine, "--allowed", "0,1,2,3"});
    CHECK(other.code == 0);
    CHECK(other.out == "FEASIBLE\n");

    const Run hyper = run({"weaktrans", e, "--from-dist", "u:1/2,v:1/2", "--label", "a", "--target", "b:1/2,r:1/2"});
    CHECK(hyper.code == 0);
    const Run dirac = run({"weaktrans", e, "--from", "sbar", "--hyper", "--label", "a", "--target", kTarget,
                           "--partition", kFine});
    CHECK(dirac.code == 0);

    // Discrete relation by default: reaching exactly Dirac(t) internally.
    CHECK(run({"weaktrans", e, "--from", "t", "--label", "tau", "--target", "t:1"}).code == 0);
    CHECK(run({"weaktrans", e, "--from", "t", "--label", "tau", "--target", "u:1"}).code == 1);
}

TEST_CASE("global flags and stats") {
    const std::string e = data_path("example_e.pa");
    const Run r = run({"weaktrans", e, "--from", "sbar", "--label", "a", "--target", kTarget, "--partition", kFine,
                       "--no-dprime", "--no-lp-opt", "--stats"});
    CHECK(r.code == 0);
    CHECK(r.out == "FEASIBLE\n");
    CHECK(r.err.find("stats: problems=1 vertices=30 arcs=30 variables=30") != std::string::npos);
    CHECK(run({"--stats", "check", e, e}).code == 0);
}

TEST_CASE("quotient, minimize and match") {
    const std::string e = data_path("example_e.pa");
    const Run q = run({"quotient", e, e});
    CHECK(q.code == 0);
    CHECK(q.out == "{1.sbar,1.t,1.u,1.v,2.sbar,2.t,2.u,2.v | 1.g,1.b,1.r,2.g,2.b,2.r}\n");

    const Run m = run({"minimize", e});
    CHECK(m.code == 0);
    CHECK(m.out.find("# B0 = sbar t u v\n# B1 = g b r\n") == 0);
    CHECK(m.out.find("  B0 tau -> B0:1\n  B0 a -> B1:1\n") != std::string::npos);

    const std::string path = "cli_minimized_example.pa";
    CHECK(run({"minimize", e, "-o", path}).code == 0);
    std::ifstream in(path);
    std::stringstream buf;
    buf << in.rdbuf();
    CHECK(buf.str() == m.out);
    CHECK(run({"check", e, path}).out == "BISIMILAR\n");
    std::remove(path.c_str());

    const Run match = run({"match", e, "--left", "u", "--right", "sbar", "--label", "a", "--partition",
                           "{sbar,t,u,v|g,b,r}"});
    CHECK(match.code == 0);
    CHECK(match.out == "MATCH\n  {g,b,r}: 1\n");
    const Run none = run({"match", e, "--left", "u", "--right", "sbar", "--label", "a", "--partition", kFine});
    CHECK(none.code == 1);
    CHECK(none.out == "NO MATCH\n");
    const Run split = run({"match", e, "--left", "t", "--left-label", "tau", "--right", "sbar", "--right-label", "tau",
                           "--right-allowed", "", "--partition", "{sbar,t,u,v|g,b,r}"});
    CHECK(split.code == 0);
}

TEST_CASE("input errors exit with 2") {
    const std::string e = data_path("example_e.pa");
    CHECK(run({}).code == 2);
    CHECK(run({"bogus"}).code == 2);
    CHECK(run({"check", e}).code == 2);
    CHECK(run({"check", e, "missing.pa"}).code == 2);
    const Run unknown = run({"weaktrans", e, "--from", "zz", "--label", "a", "--target", kTarget});
    CHECK(unknown.code == 2);
    CHECK(unknown.err.find("unknown state 'zz'") != std::string::npos);
    CHECK(run({"weaktrans", e, "--from", "sbar", "--label", "b", "--target", kTarget}).code == 2);
    CHECK(run({"weaktrans", e, "--from", "sbar", "--label", "a", "--target", "g:1/2"}).code == 2);
    CHECK(run({"weaktrans", e, "--label", "a", "--target", kTarget}).code == 2);
    CHECK(run({"weaktrans", e, "--from", "sbar", "--label", "a", "--target", kTarget, "--allowed", "9"}).code == 2);
    CHECK(run({"weaktrans", e, "--from", "sbar", "--label", "a", "--target", kTarget, "--partition", "{sbar}"}).code == 2);
    CHECK(run({"--help"}).code == 0);
}

TEST_CASE("selftest") {
    const Run r = run({"selftest", "--instances", "5", "--seed", "77"});
    CHECK(r.code == 0);
    CHECK(r.out.find("seeds 77..81: PASS") != std::string::npos);
}
