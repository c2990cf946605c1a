#include <doctest.h>

#include "support.hpp"
#include "wpbisim/errors.hpp"
#include "wpbisim/suites.hpp"
#include "wpbisim/validate.hpp"

using namespace wpb;
using namespace wpb::test;

namespace {

Choice pick(std::vector<std::pair<TransitionId, Rational>> transitions) { return Choice{std::move(transitions)}; }

/// The scheduler that answers the example query: at t pick tr1 with 1/5 and
/// tr4 with 4/5, elsewhere the only enabled transition, then stop after a.
DeterminateScheduler example_scheduler(const ProbAutomaton& e) {
    DeterminateScheduler s;
    s.set(st(e, "sbar"), Stage::PreA, pick({{0, Rational(1)}}));
    s.set(st(e, "t"), Stage::PreA, pick({{1, Rational(1, 5)}, {4, Rational(4, 5)}}));
    s.set(st(e, "u"), Stage::PreA, pick({{2, Rational(1)}}));
    s.set(st(e, "v"), Stage::PreA, pick({{3, Rational(1)}}));
    return s;
}

}  // namespace

TEST_CASE("the example scheduler induces the target exactly") {
    const auto e = example_e();
    const InducedOutcome out = induced_distribution(e, example_scheduler(e), st(e, "sbar"), act(e, "a"));
    REQUIRE(std::holds_alternative<Distribution>(out));
    CHECK(std::get<Distribution>(out) == dist(e, "g:1/16,b:5/16,r:10/16"));
}

TEST_CASE("stopping at once gives the Dirac distribution") {
    const auto e = example_e();
    for (State t = 0; t < e.num_states(); ++t) {
        const InducedOutcome out = induced_distribution(e, DeterminateScheduler{}, t, kTau);
        REQUIRE(std::holds_alternative<Distribution>(out));
        CHECK(std::get<Distribution>(out) == Distribution::dirac(t));
    }
}

TEST_CASE("divergence and trace violations") {
    ProbAutomaton loop("loop");
    const State x = loop.add_state("x");
    const State y = loop.add_state("y");
    const Action a = loop.add_action("a");
    const Action c = loop.add_action("c");
    loop.add_transition(x, kTau, Distribution::dirac(x));  // tr0
    loop.add_transition(x, a, Distribution::dirac(y));     // tr1
    loop.add_transition(y, a, Distribution::dirac(y));     // tr2
    loop.add_transition(x, c, Distribution::dirac(y));     // tr3

    DeterminateScheduler forever;
    forever.set(x, Stage::PreA, pick({{0, Rational(1)}}));
    const InducedOutcome spin = induced_distribution(loop, forever, x, kTau);
    REQUIRE(std::holds_alternative<Divergent>(spin));
    CHECK(std::get<Divergent>(spin).absorbed.is_zero());

    // Half the mass loops forever.
    DeterminateScheduler half;
    half.set(x, Stage::PreA, pick({{0, Rational(1, 2)}}));
    CHECK(std::holds_alternative<Distribution>(induced_distribution(loop, half, x, kTau)));

    // Stopping before the visible action is misplaced mass.
    const InducedOutcome early = induced_distribution(loop, DeterminateScheduler{}, x, a);
    REQUIRE(std::holds_alternative<Divergent>(early));
    CHECK(std::get<Divergent>(early).misplaced == Rational(1));

    // A second a, or a different visible action, breaks the trace.
    DeterminateScheduler twice;
    twice.set(x, Stage::PreA, pick({{1, Rational(1)}}));
    twice.set(y, Stage::PostA, pick({{2, Rational(1, 3)}}));
    const InducedOutcome again = induced_distribution(loop, twice, x, a);
    REQUIRE(std::holds_alternative<Divergent>(again));
    CHECK(std::get<Divergent>(again).misplaced == Rational(1, 3));
    DeterminateScheduler other;
    other.set(x, Stage::PreA, pick({{3, Rational(1)}}));
    CHECK(std::holds_alternative<Divergent>(induced_distribution(loop, other, x, a)));

    DeterminateScheduler once;
    once.set(x, Stage::PreA, pick({{0, Rational(1, 2)}, {1, Rational(1, 2)}}));
    const InducedOutcome good = induced_distribution(loop, once, x, a);
    REQUIRE(std::holds_alternative<Distribution>(good));
    CHECK(std::get<Distribution>(good) == Distribution::dirac(y));

    DeterminateScheduler wrong;
    wrong.set(y, Stage::PreA, pick({{0, Rational(1)}}));
    CHECK_THROWS_AS(induced_distribution(loop, wrong, x, kTau), StructuralError);
}

TEST_CASE("acyclic chains agree with path enumeration") {
    const auto e = example_e();
    DeterminateScheduler s = example_scheduler(e);
    s.set(st(e, "t"), Stage::PreA, pick({{1, Rational(1)}}));
    const StagedChain chain = build_staged_chain(e, s, st(e, "sbar"), act(e, "a"));
    const auto paths = enumerate_paths(chain);
    REQUIRE(paths.has_value());
    CHECK(paths->misplaced.is_zero());
    const InducedOutcome out = induced_distribution(e, s, st(e, "sbar"), act(e, "a"));
    CHECK(std::get<Distribution>(out) == Distribution(paths->absorbed));
    CHECK(Distribution(paths->absorbed) == dist(e, "g:1/4,b:1/4,r:1/2"));
    // The looping scheduler is cyclic.
    CHECK_FALSE(enumerate_paths(build_staged_chain(e, example_scheduler(e), st(e, "sbar"), act(e, "a"))).has_value());
}

TEST_CASE("certificates") {
    const auto e = example_e();
    const Partition r = part(e, "{sbar,t,u,v | g | b | r}");
    const Distribution mu = dist(e, "g:1/16,b:5/16,r:10/16");
    const Certificate yes = certify(e, st(e, "sbar"), act(e, "a"), mu, std::nullopt, r);
    REQUIRE(yes.answer);
    CHECK(*yes.induced == mu);
    CHECK(yes.scheduler->find(st(e, "t"), Stage::PreA)->transitions ==
          example_scheduler(e).find(st(e, "t"), Stage::PreA)->transitions);
    const std::string text = print_certificate(yes, e);
    CHECK(text.rfind("FEASIBLE\n", 0) == 0);
    CHECK(text.find("induced: g:1/16,b:5/16,r:5/8\n") != std::string::npos);

    const Certificate no = certify(e, st(e, "sbar"), act(e, "a"), mu, std::vector<TransitionId>{0, 1, 2, 3}, r);
    CHECK_FALSE(no.answer);
    CHECK_FALSE(no.scheduler.has_value());
    CHECK_FALSE(no.induced.has_value());
    CHECK(print_certificate(no, e) == "INFEASIBLE\n");

    const Certificate stop = certify(e, st(e, "t"), kTau, Distribution::dirac(st(e, "t")), std::nullopt, r);
    REQUIRE(stop.answer);
    CHECK(stop.scheduler->entries().size() == 1);
    CHECK(stop.scheduler->find(st(e, "t"), Stage::PreA)->stop() == Rational(1));

    const Certificate hyper = certify(e, dist(e, "u:1/2,v:1/2"), act(e, "a"), dist(e, "b:1/2,r:1/2"), std::nullopt, r);
    REQUIRE(hyper.answer);
    REQUIRE(hyper.extension.has_value());
    CHECK(print_certificate(hyper, e).find("#h PreA -> tr#5:1") != std::string::npos);
}
