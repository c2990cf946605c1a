#include <doctest.h>

#include "support.hpp"
#include "wpbisim/errors.hpp"
#include "wpbisim/generator.hpp"
#include "wpbisim/lp.hpp"
#include "wpbisim/simplex.hpp"

using namespace wpb;
using namespace wpb::test;

namespace {

struct ExampleQuery {
    ProbAutomaton e = example_e();
    Partition r = part(e, "{sbar,t,u,v | g | b | r}");
    FlowNetwork net = build_network(e, st(e, "sbar"), act(e, "a"), dist(e, "g:1/16,b:5/16,r:10/16"),
                                    e.all_transition_ids(), r);

    Rational flow(const Solution& sol, std::size_t from, std::size_t to) const {
        return sol.values.at(*net.arc_index(from, to));
    }
};

}  // namespace

TEST_CASE("example LP shape") {
    ExampleQuery q;
    const LinearProgram lp = build_lp(q.net, &q.e);
    CHECK(lp.num_vars() == 30);
    CHECK(lp.nonneg_count() == 30);
    std::size_t class_rows = 0, balance = 0, conservation = 0, unit = 0;
    for (const Constraint& row : lp.rows) {
        CHECK(row.relation == Relation::Equal);
        class_rows += row.kind == RowKind::ClassMass;
        unit += row.kind == RowKind::SourceUnit;
        conservation += row.kind == RowKind::Conservation;
        balance += row.kind == RowKind::BalancePlain || row.kind == RowKind::BalanceAfter ||
                   row.kind == RowKind::BalanceCrossing;
    }
    CHECK(unit == 1);
    // One row per class, including the zero-mass class of sbar.
    CHECK(class_rows == 4);
    // tr0: 3 targets, tr4: 1, each in two copies, plus 3 crossing rows.
    CHECK(balance == 2 * 4 + 3);
    // Inner vertices minus the isolated ones: the plain copies of tr1..tr3 and
    // of the dead states g, b, r.
    CHECK(conservation == 28 - 6);
    CHECK(lp.var_name(*q.net.arc_index(q.net.source(), q.net.state_vertex(0))) == "f[src,S(sbar)]");
    const std::string dump = dump_lp(lp);
    CHECK(dump.rfind("min: ", 0) == 0);
    CHECK(dump.find("+1*f[C(#1),snk] = 1/16") != std::string::npos);
}

TEST_CASE("min-flow optimum of the example") {
    ExampleQuery q;
    for (bool optimized : {false, true}) {
        CAPTURE(optimized);
        LinearProgram lp = build_lp(q.net);
        if (optimized) lp = apply_optimizations(lp, q.net);
        const Solution sol = solve(lp, SolveMode::MinimizeObjective);
        REQUIRE(sol.status == SolveStatus::OptimalFound);
        CHECK(sol.objective == Rational(8));
        const auto& n = q.net;
        const State sbar = st(q.e, "sbar"), t = st(q.e, "t"), u = st(q.e, "u"), v = st(q.e, "v");
        CHECK(q.flow(sol, n.source(), n.state_vertex(sbar)) == Rational(1));
        CHECK(q.flow(sol, n.state_vertex(sbar), *n.transition_vertex(0)) == Rational(20, 16));
        CHECK(q.flow(sol, *n.transition_vertex(0), n.state_vertex(t)) == Rational(5, 16));
        CHECK(q.flow(sol, *n.transition_vertex(0), n.state_vertex(u)) == Rational(5, 16));
        CHECK(q.flow(sol, *n.transition_vertex(0), n.state_vertex(v)) == Rational(10, 16));
        CHECK(q.flow(sol, n.state_vertex(t), *n.transition_after_vertex(1)) == Rational(1, 16));
        CHECK(q.flow(sol, n.state_vertex(t), *n.transition_vertex(4)) == Rational(4, 16));
        CHECK(q.flow(sol, *n.transition_vertex(4), n.state_vertex(sbar)) == Rational(4, 16));
        CHECK(q.flow(sol, n.state_vertex(u), *n.transition_after_vertex(2)) == Rational(5, 16));
        CHECK(q.flow(sol, n.state_vertex(v), *n.transition_after_vertex(3)) == Rational(10, 16));
        for (std::size_t c = 1; c <= 3; ++c)
            CHECK(q.flow(sol, n.class_vertex(c), n.sink()) == q.net.class_mass()[c]);
        CHECK(q.flow(sol, n.class_vertex(1), n.sink()) == Rational(1, 16));
        CHECK(q.flow(sol, n.class_vertex(3), n.sink()) == Rational(10, 16));
        // Exactly the nineteen listed arcs carry flow.
        std::size_t nonzero = 0;
        for (const Rational& x : sol.values) nonzero += !x.is_zero();
        CHECK(nonzero == 19);
        CHECK(satisfies(build_lp(q.net), sol.values));
    }
}

TEST_CASE("optimizations drop rows and bounds but keep the variables") {
    ExampleQuery q;
    const LinearProgram full = build_lp(q.net);
    const LinearProgram opt = apply_optimizations(full, q.net);
    CHECK(opt.num_vars() == full.num_vars());
    CHECK(opt.rows.size() < full.rows.size());
    CHECK(opt.nonneg_count() < full.nonneg_count());
    for (const Constraint& row : opt.rows)
        if (row.kind == RowKind::Conservation) {
            const auto kind = q.net.vertices()[row.tag].kind;
            CHECK(kind != VertexKind::TrState);
            CHECK(kind != VertexKind::TrStateAfter);
        }
}

TEST_CASE("property: constraint counts stay within the accounting bound") {
    for (std::uint64_t seed = 1; seed <= 80; ++seed) {
        GenConfig cfg;
        cfg.seed = seed;
        const ProbAutomaton pa = gen_pa(cfg);
        Rng rng(seed + 1000);
        const Partition r = gen_partition(rng, pa.num_states(), 4);
        const auto all = pa.all_transition_ids();
        const Action a = rng.below(pa.num_actions());
        const FlowNetwork net = build_network(pa, rng.below(pa.num_states()), a, gen_distribution(rng, pa, 3, 12), all, r);
        const LinearProgram lp = build_lp(net);
        const std::size_t ns = pa.num_states(), na = all.size();
        CHECK(lp.num_vars() == net.arcs().size());
        CHECK(lp.constraint_count() <= net.arcs().size() + 1 + ns + 3 * ns * na + net.vertices().size() - 2);
        CHECK(apply_optimizations(lp, net).constraint_count() <= lp.constraint_count());
    }
}

TEST_CASE("joint problem layout") {
    ExampleQuery q;
    const LinearProgram l1 = build_lp(q.net, &q.e);
    const FlowNetwork other = build_network(q.e, st(q.e, "t"), act(q.e, "a"), dist(q.e, "g:1"), q.e.all_transition_ids(), q.r);
    const LinearProgram l2 = build_lp(other, &q.e);
    const LinearProgram joint = build_joint_lp(l1, l2, q.r);
    CHECK(joint.num_vars() == l1.num_vars() + l2.num_vars() + q.r.size());
    REQUIRE(joint.mass_vars.size() == q.r.size());
    CHECK(joint.mass_vars[0] == l1.num_vars() + l2.num_vars());
    CHECK(joint.var_name(joint.mass_vars[2]) == "p[C(#2)]");
    CHECK(joint.var_name(0).rfind("l.", 0) == 0);
    CHECK(joint.var_name(l1.num_vars()).rfind("r.", 0) == 0);
    std::size_t joint_class = 0, sums = 0;
    for (const Constraint& row : joint.rows) {
        CHECK(row.kind != RowKind::ClassMass);
        joint_class += row.kind == RowKind::JointClass;
        sums += row.kind == RowKind::JointSum;
    }
    CHECK(joint_class == 2 * q.r.size());
    CHECK(sums == 1);
    CHECK_THROWS_AS(build_joint_lp(l1, l2, part(q.e, "{sbar,t,u,v | g,b,r}")), DomainError);
}
