#include "wpbisim/weak_transition.hpp"

#include <algorithm>
#include <sstream>

#include "wpbisim/errors.hpp"

namespace wpb {

const char* stage_name(Stage stage) { return stage == Stage::PreA ? "PreA" : "PostA"; }

Rational Choice::stop() const {
    Rational rest(1);
    for (const auto& [tr, p] : transitions) rest -= p;
    return rest;
}

void DeterminateScheduler::set(State s, Stage stage, Choice choice) {
    std::sort(choice.transitions.begin(), choice.transitions.end());
    choices_[{s, stage}] = std::move(choice);
}

const Choice* DeterminateScheduler::find(State s, Stage stage) const {
    auto it = choices_.find({s, stage});
    return it == choices_.end() ? nullptr : &it->second;
}

std::string serialize_scheduler(const DeterminateScheduler& sched, const ProbAutomaton& pa) {
    std::ostringstream os;
    for (const auto& [key, choice] : sched.entries()) {
        os << pa.state_name(key.first) << ' ' << stage_name(key.second) << " ->";
        for (std::size_t i = 0; i < choice.transitions.size(); ++i)
            os << (i ? ", " : " ") << "tr#" << choice.transitions[i].first << ':'
               << choice.transitions[i].second;
        os << " | stop:" << choice.stop() << '\n';
    }
    return os.str();
}

QueryResult solve_weak_query(const ProbAutomaton& pa, State t, Action a, const Distribution& mu,
                             const std::vector<TransitionId>& allowed, const Partition& part,
                             SolveMode mode, const EngineOptions& opts) {
    FlowNetwork net = build_network(pa, t, a, mu, allowed, part);
    LinearProgram lp = build_lp(net);
    if (opts.optimize_lp) lp = apply_optimizations(lp, net);
    Solution sol = solve(lp, mode, opts.fault);
    if (opts.stats) opts.stats->record(net, lp, sol);
    return QueryResult{std::move(net), std::move(lp), std::move(sol)};
}

bool has_weak_combined(const ProbAutomaton& pa, State t, Action a, const Distribution& mu,
                       const Partition& part, const EngineOptions& opts) {
    if (t >= pa.num_states()) throw DomainError("query state out of range");
    const auto allowed = opts.restrict_relevant ? restrict_relevant(pa, t, a) : pa.all_transition_ids();
    return has_allowed_weak(pa, t, a, mu, allowed, part, opts);
}

bool has_allowed_weak(const ProbAutomaton& pa, State t, Action a, const Distribution& mu,
                      const std::vector<TransitionId>& allowed, const Partition& part,
                      const EngineOptions& opts) {
    return solve_weak_query(pa, t, a, mu, allowed, part, SolveMode::FeasibilityOnly, opts).feasible();
}

HyperExtension extend_for_hyper(const ProbAutomaton& pa, const Distribution& gamma,
                                const std::vector<TransitionId>& allowed, const Partition& part) {
    if (!gamma.is_full()) throw DomainError("hyper-transition source must be a full distribution");
    for (const auto& [s, p] : gamma.entries())
        if (s >= pa.num_states()) throw DomainError("source distribution mentions an unknown state");
    if (part.carrier_size() != pa.num_states())
        throw DomainError("partition does not cover the states of the automaton");

    HyperExtension ext{pa, 0, 0, allowed, part.with_fresh_singleton()};
    std::string name = kFreshStateName;
    for (int k = 1; pa.find_state(name); ++k) name = std::string(kFreshStateName) + std::to_string(k);
    ext.fresh = ext.automaton.add_state(name);
    ext.fresh_transition = ext.automaton.add_transition(ext.fresh, kTau, gamma);
    ext.allowed.push_back(ext.fresh_transition);
    return ext;
}

bool has_hyper(const ProbAutomaton& pa, const Distribution& gamma, Action a, const Distribution& mu,
               const std::vector<TransitionId>& allowed, const Partition& part,
               const EngineOptions& opts) {
    const auto ext = extend_for_hyper(pa, gamma, allowed, part);
    return has_allowed_weak(ext.automaton, ext.fresh, a, mu, ext.allowed, ext.partition, opts);
}

DeterminateScheduler extract_scheduler(const FlowNetwork& net, const Solution& sol) {
    if (!sol.feasible()) throw ConsistencyError("cannot extract a scheduler from an infeasible answer");
    if (!satisfies(build_lp(net), sol.values))
        throw ConsistencyError("solution does not satisfy the network's linear program");

    const auto& f = sol.values;
    DeterminateScheduler sched;
    auto read_vertex = [&](std::size_t vertex, State v, Stage stage) {
        Rational inflow;
        for (std::size_t arc : net.in_arcs(vertex)) inflow += f[arc];
        if (inflow.is_zero()) return;
        Choice choice;
        for (std::size_t arc : net.out_arcs(vertex)) {
            const Vertex& to = net.vertices()[net.arcs()[arc].to];
            if (to.kind != VertexKind::TrState && to.kind != VertexKind::TrStateAfter) continue;
            if (f[arc].is_zero()) continue;
            choice.transitions.emplace_back(to.transition, f[arc] / inflow);
        }
        sched.set(v, stage, std::move(choice));
    };
    for (State v = 0; v < net.num_states(); ++v) {
        read_vertex(net.state_vertex(v), v, Stage::PreA);
        if (!net.is_tau()) read_vertex(net.after_vertex(v), v, Stage::PostA);
    }
    return sched;
}

std::optional<std::vector<Rational>> match_equiv(const ProbAutomaton& pa, const MatchSide& left,
                                                 const MatchSide& right, const Partition& part,
                                                 const EngineOptions& opts) {
    // Both sides go through the fresh-state extension so that they share one
    // carrier (S plus #h) and therefore one set of class vertices.
    auto side_lp = [&](const MatchSide& side) {
        const Distribution gamma = std::holds_alternative<State>(side.source)
                                       ? Distribution::dirac(std::get<State>(side.source))
                                       : std::get<Distribution>(side.source);
        std::vector<TransitionId> allowed;
        if (side.allowed) {
            allowed = *side.allowed;
        } else {
            allowed = pa.all_transition_ids();
        }
        auto ext = extend_for_hyper(pa, gamma, allowed, part);
        if (!side.allowed && opts.restrict_relevant)
            ext.allowed = restrict_relevant(ext.automaton, ext.fresh, side.action);
        FlowNetwork net = build_network(ext.automaton, ext.fresh, side.action, Distribution::dirac(ext.fresh),
                                        ext.allowed, ext.partition);
        LinearProgram lp = build_lp(net);
        if (opts.optimize_lp) lp = apply_optimizations(lp, net);
        return std::pair(std::move(ext), std::move(lp));
    };
    auto [ext1, lp1] = side_lp(left);
    auto [ext2, lp2] = side_lp(right);

    LinearProgram joint = build_joint_lp(lp1, lp2, ext1.partition);
    // The fresh state is not a real state: no mass may stop there.
    const std::size_t fresh_block = ext1.partition.block_of(ext1.fresh);
    joint.rows.push_back(Constraint{{{joint.mass_vars[fresh_block], 1}}, Relation::Equal, 0, RowKind::Other, 0});

    Solution sol = solve(joint, SolveMode::FeasibilityOnly, opts.fault);
    if (opts.stats) {
        ++opts.stats->problems;
        opts.stats->variables += joint.num_vars();
        opts.stats->rows += joint.constraint_count();
        opts.stats->pivots += sol.pivots;
    }
    if (!sol.feasible()) return std::nullopt;
    std::vector<Rational> p;
    for (std::size_t c = 0; c < part.size(); ++c) p.push_back(sol.values[joint.mass_vars[c]]);
    return p;
}

}  // namespace wpb
