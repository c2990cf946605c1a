#include <doctest.h>

#include "support.hpp"
#include "wpbisim/decide.hpp"
#include "wpbisim/errors.hpp"
#include "wpbisim/generator.hpp"

using namespace wpb;
using namespace wpb::test;

namespace {

ProbAutomaton emitter() {
    return parse_pa("pa A1\nstates: s0 s1\nstart: s0\nexternal: a\ntransitions:\n  s0 a -> s1:1\n");
}
ProbAutomaton dead() { return parse_pa("pa A2\nstates: t0\nstart: t0\nexternal: a\n"); }
ProbAutomaton spinner() {
    return parse_pa("pa L\nstates: x\nstart: x\nexternal:\ntransitions:\n  x tau -> x:1\n");
}
ProbAutomaton idle() { return parse_pa("pa I\nstates: y\nstart: y\nexternal:\n"); }

/// Merges blocks i < j of `p`.
Partition merged(const Partition& p, std::size_t i, std::size_t j) {
    std::vector<std::vector<State>> blocks;
    for (std::size_t k = 0; k < p.size(); ++k) {
        if (k == j) continue;
        blocks.push_back(p.block(k));
        if (k == i) blocks.back().insert(blocks.back().end(), p.block(j).begin(), p.block(j).end());
    }
    return Partition(std::move(blocks), p.carrier_size());
}

}  // namespace

TEST_CASE("a state that cannot emit a is split off") {
    const UnionResult u = disjoint_union(emitter(), dead());
    const auto& pa = u.automaton;
    const Partition all = Partition::single_block(3);
    const SplitInfo split = find_split(pa, all);
    REQUIRE_FALSE(split.is_sentinel());
    CHECK(split.block == std::vector<State>{0, 1, 2});
    CHECK(split.action == act(pa, "a"));
    CHECK(split.target == Distribution::dirac(st(pa, "1.s1")));
    CHECK(*split.witness == st(pa, "1.s1"));

    const Partition next = refine(pa, all, split);
    CHECK(next.size() == 2);
    CHECK(next.block(0) == std::vector<State>{st(pa, "1.s0")});
    CHECK(next.block(1) == std::vector<State>{st(pa, "1.s1"), st(pa, "2.t0")});
    CHECK(find_split(pa, next).is_sentinel());
}

TEST_CASE("sentinel cases") {
    const auto e = example_e();
    const SplitInfo none = find_split(e, part(e, "{sbar,t,u,v | g,b,r}"));
    CHECK(none.is_sentinel());
    CHECK(none.action == kTau);
    CHECK(none.target == Distribution::dirac(e.start()));
    CHECK(find_split(e, Partition::discrete(e.num_states())).is_sentinel());
    CHECK_THROWS_AS(refine(e, Partition::discrete(7), none), DomainError);
}

TEST_CASE("an internal challenger in a single block splits nothing") {
    const auto e = example_e();
    SplitInfo tau_split;
    tau_split.block_index = 0;
    tau_split.block = Partition::single_block(7).block(0);
    tau_split.action = kTau;
    tau_split.target = e.transition(0).target;
    // Every member matches by stopping, so the split would be degenerate.
    CHECK_THROWS_AS(refine(e, Partition::single_block(7), tau_split), SoundnessError);
}

TEST_CASE("quotient of the example with itself") {
    const auto e = example_e();
    const QuotientResult q = quotient(e, e);
    const auto& u = q.combined.automaton;
    CHECK(print_partition(q.partition(), u) == "{1.sbar,1.t,1.u,1.v,2.sbar,2.t,2.u,2.v | 1.g,1.b,1.r,2.g,2.b,2.r}");
    CHECK(q.starts_related());
    CHECK(q.refinement.iterations == 1);
    REQUIRE(q.refinement.trace.size() == 1);
    CHECK(q.refinement.trace[0] == "split C#0 on (1.t -a-> 1.g:1) -> C#0, C#1");
    CHECK(bisimilar(e, e));
}

TEST_CASE("bisimilarity examples") {
    CHECK(bisimilar(spinner(), idle()));
    CHECK(bisimilar(idle(), spinner()));
    const QuotientResult q = quotient(spinner(), idle());
    CHECK(q.partition().size() == 1);
    CHECK_FALSE(bisimilar(emitter(), dead()));
    CHECK_FALSE(bisimilar(dead(), emitter()));
}

TEST_CASE("minimizing the example") {
    const auto e = example_e();
    const Minimized m = minimize(e);
    const auto& pa = m.automaton;
    REQUIRE(pa.num_states() == 2);
    CHECK(pa.state_name(0) == "B0");
    CHECK(m.members[0] == std::vector<State>{0, 1, 2, 3});
    CHECK(m.members[1] == std::vector<State>{4, 5, 6});
    CHECK(pa.start() == 0);
    REQUIRE(pa.num_transitions() == 2);
    CHECK(pa.transition(0).source == 0);
    CHECK(pa.transition(0).action == kTau);
    CHECK(pa.transition(0).target == Distribution::dirac(0));
    CHECK(pa.transition(1).source == 0);
    CHECK(pa.action_name(pa.transition(1).action) == "a");
    CHECK(pa.transition(1).target == Distribution::dirac(1));
    CHECK(bisimilar(e, pa));
    // Already minimal: identity up to renaming.
    const Minimized again = minimize(pa);
    REQUIRE(again.automaton.num_states() == 2);
    REQUIRE(again.automaton.num_transitions() == 2);
    for (TransitionId i = 0; i < 2; ++i) {
        CHECK(again.automaton.transition(i).source == pa.transition(i).source);
        CHECK(again.automaton.transition(i).action == pa.transition(i).action);
        CHECK(again.automaton.transition(i).target == pa.transition(i).target);
    }
}

TEST_CASE("property: refinement invariants on random automata") {
    for (std::uint64_t seed = 1; seed <= 60; ++seed) {
        CAPTURE(seed);
        GenConfig cfg;
        cfg.seed = seed;
        const ProbAutomaton a = gen_pa(cfg);
        cfg.seed = seed + 5000;
        const ProbAutomaton b = gen_pa(cfg);

        const QuotientResult q = quotient(a, b);
        const auto& u = q.combined.automaton;
        const Partition& p = q.partition();
        CHECK(q.refinement.iterations <= u.num_states());
        CHECK(p.size() == q.refinement.iterations + 1);
        CHECK(find_split(u, p).is_sentinel());
        CHECK(q.starts_related() == bisimilar(b, a));

        // Coarsest: merging any two classes breaks the bisimulation.
        for (std::size_t i = 0; i < p.size(); ++i)
            for (std::size_t j = i + 1; j < p.size(); ++j) CHECK_FALSE(find_split(u, merged(p, i, j)).is_sentinel());

        // Each challenger matches itself under any relation.
        Rng rng(seed);
        const Partition random = gen_partition(rng, a.num_states(), 3);
        for (const Transition& tr : a.transitions())
            CHECK(has_weak_combined(a, tr.source, tr.action, tr.target, random));

        const QuotientResult self = quotient(a, a);
        for (State s = 0; s < a.num_states(); ++s)
            CHECK(self.partition().block_of(self.combined.left_states[s]) ==
                  self.partition().block_of(self.combined.right_states[s]));

        const Minimized m = minimize(a);
        CHECK(bisimilar(a, m.automaton));
        CHECK(minimize(m.automaton).automaton.num_states() == m.automaton.num_states());
    }
}
