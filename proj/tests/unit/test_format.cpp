#include <doctest.h>

#include "support.hpp"
#include "wpbisim/errors.hpp"
#include "wpbisim/generator.hpp"

using namespace wpb;
using namespace wpb::test;

namespace {

const char* kHeader = "pa P\nstates: x y z\nstart: x\nexternal: a\ntransitions:\n";

/// Line and column of the ParseError raised by parsing `text`.
std::pair<std::size_t, std::size_t> error_at(const std::string& text, const std::string& message) {
    try {
        parse_pa(text);
    } catch (const ParseError& e) {
        CHECK(std::string(e.what()).find(message) != std::string::npos);
        return {e.line(), e.column()};
    }
    FAIL("expected a parse error: " << message);
    return {0, 0};
}

}  // namespace

TEST_CASE("the example automaton parses") {
    const ProbAutomaton e = example_e();
    CHECK(e.name() == "ExampleE");
    CHECK(e.num_states() == 7);
    CHECK(e.num_transitions() == 5);
    CHECK(e.state_name(e.start()) == "sbar");
    CHECK(e.num_actions() == 2);
    const Transition& tr0 = e.transition(0);
    CHECK(tr0.action == kTau);
    CHECK(tr0.target == dist(e, "t:1/4,u:1/4,v:1/2"));
    CHECK(e.transition(4).source == st(e, "t"));
    CHECK(e.transition(4).target == Distribution::dirac(st(e, "sbar")));
}

TEST_CASE("parse errors carry positions") {
    const std::string h = kHeader;
    CHECK(error_at(h + "  x a -> w:1\n", "unknown state 'w'") == std::pair<std::size_t, std::size_t>{6, 10});
    CHECK(error_at(h + "  x a -> y:1/2, z:2/5\n", "distribution sums to 9/10, expected 1").first == 6);
    CHECK(error_at("pa P\nstates: x y x\n", "duplicate state 'x'") == std::pair<std::size_t, std::size_t>{2, 13});
    CHECK(error_at("pa P\nstates: x\nstart: x\nexternal: a tau\n", "'tau' cannot be declared external") ==
          std::pair<std::size_t, std::size_t>{4, 13});
    CHECK(error_at(h + "  x c -> y:1\n", "unknown action 'c'").second == 5);
    CHECK(error_at(h + "  x a -> y:0, z:1\n", "probability must be positive").first == 6);
    CHECK(error_at(h + "  x a -> y:1/2, y:1/2\n", "duplicate target state 'y'").first == 6);
    CHECK(error_at(h + "  x a -> y:1/0\n", "zero denominator").first == 6);
    CHECK(error_at("states: x\n", "expected 'pa <name>'").first == 1);
    CHECK(error_at("pa P\nstates: x\n", "missing 'start:'").first > 0);
    CHECK(error_at("pa P\nstates: x\nstart: y\n", "unknown state 'y'").first == 3);
}

TEST_CASE("comments and blank lines are ignored") {
    const auto pa = parse_pa("# leading\npa P   # name\n\nstates: x y\nstart: y\nexternal:\ntransitions:\n  x tau -> y:1 # c\n");
    CHECK(pa.num_states() == 2);
    CHECK(pa.num_actions() == 1);
    CHECK(pa.start() == 1);
    CHECK(pa.num_transitions() == 1);
}

TEST_CASE("printing round-trips") {
    const auto e = example_e();
    const std::string text = print_pa(e);
    CHECK(print_pa(parse_pa(text)) == text);
    CHECK(text.find("  sbar tau -> t:1/4, u:1/4, v:1/2\n") != std::string::npos);
    CHECK(text.find("  v a -> r:1\n") != std::string::npos);
}

TEST_CASE("property: random automata round-trip") {
    for (std::uint64_t seed = 1; seed <= 80; ++seed) {
        GenConfig cfg;
        cfg.seed = seed;
        const ProbAutomaton pa = gen_pa(cfg);
        const std::string text = print_pa(pa);
        const ProbAutomaton back = parse_pa(text);
        CHECK(print_pa(back) == text);
        REQUIRE(back.num_transitions() == pa.num_transitions());
        for (TransitionId i = 0; i < pa.num_transitions(); ++i) {
            CHECK(back.transition(i).source == pa.transition(i).source);
            CHECK(back.transition(i).action == pa.transition(i).action);
            CHECK(back.transition(i).target == pa.transition(i).target);
        }
    }
}

TEST_CASE("partitions") {
    const auto e = example_e();
    const Partition r = parse_partition("{sbar,t,u,v | g | b | r}", e);
    CHECK(r.size() == 4);
    CHECK(r.block(0).size() == 4);
    CHECK(r.block_of(st(e, "r")) == 3);
    CHECK(print_partition(r, e) == "{sbar,t,u,v | g | b | r}");
    CHECK(parse_partition(" { b | sbar , t,u,v|g|r } ", e).block_of(st(e, "b")) == 0);

    ProbAutomaton one("one");
    one.add_state("s");
    CHECK(parse_partition("{s}", one).size() == 1);

    CHECK_THROWS_WITH_AS(parse_partition("{sbar,t,u,v | g | b}", e), doctest::Contains("misses states: r"), FormatError);
    CHECK_THROWS_WITH_AS(parse_partition("{sbar,t,u,v,g | g | b | r}", e), doctest::Contains("repeats states: g"),
                         FormatError);
    CHECK_THROWS_AS(parse_partition("{sbar,t,u,v,w | g | b | r}", e), FormatError);
    CHECK_THROWS_AS(parse_partition("sbar,t,u,v,g,b,r", e), FormatError);
    CHECK_THROWS_AS(parse_partition("{sbar,t,u,v | | g,b,r}", e), FormatError);
}

TEST_CASE("distributions") {
    const auto e = example_e();
    const Distribution mu = parse_distribution("g:1/16, b:5/16,r:10/16", e);
    CHECK(mu(st(e, "r")) == Rational(5, 8));
    CHECK(parse_distribution("g:0.5,b:0.5", e)(st(e, "g")) == Rational(1, 2));
    CHECK_THROWS_WITH(parse_distribution("g:1/2", e), doctest::Contains("distribution sums to 1/2, expected 1"));
    CHECK_THROWS_AS(parse_distribution("g:1/2,g:1/2", e), FormatError);
    CHECK_THROWS_AS(parse_distribution("q:1", e), FormatError);
    CHECK_THROWS_AS(parse_distribution("g", e), FormatError);
}
