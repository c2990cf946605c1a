#pragma once

#include <map>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "wpbisim/weak_transition.hpp"

namespace wpb {

/// Finite chain induced by a determinate scheduler: transient nodes are
/// (state, stage) pairs reachable from the start node (index 0). Each node moves
/// to other nodes, absorbs at a state (stopping in the final stage), or is lost
/// as misplaced mass (stopping too early, or a second/foreign visible action).
struct StagedChain {
    struct Node {
        State state = 0;
        Stage stage = Stage::PreA;
    };
    std::vector<Node> nodes;
    std::vector<std::map<std::size_t, Rational>> step;
    std::vector<std::map<State, Rational>> absorb;
    std::vector<Rational> misplaced;
};

StagedChain build_staged_chain(const ProbAutomaton& pa, const DeterminateScheduler& sched, State t,
                               Action a);

/// The scheduler does not induce a weak transition: some mass never stops, or
/// stops with the wrong trace.
struct Divergent {
    Rational absorbed;
    Rational misplaced;
};

using InducedOutcome = std::variant<Distribution, Divergent>;

/// Exact final-state distribution of the scheduler from (t, PreA), obtained by
/// solving the chain's linear visit equations.
InducedOutcome induced_distribution(const ProbAutomaton& pa, const DeterminateScheduler& sched,
                                    State t, Action a);

struct Certificate {
    bool answer = false;
    std::optional<DeterminateScheduler> scheduler;
    std::optional<Distribution> induced;
    /// Set for distribution sources: the automaton the scheduler refers to.
    std::optional<HyperExtension> extension;
};

/// Decides the query and, when positive, extracts the min-flow scheduler and
/// re-derives its induced distribution, which must lift-match `mu`. A mismatch
/// raises SoundnessError.
Certificate certify(const ProbAutomaton& pa, const WeakSource& source, Action a, const Distribution& mu,
                    const std::optional<std::vector<TransitionId>>& allowed, const Partition& part,
                    const EngineOptions& opts = {});

/// `FEASIBLE` / `INFEASIBLE`, then the scheduler and `induced: s:p,...`.
std::string print_certificate(const Certificate& cert, const ProbAutomaton& pa);

}  // namespace wpb
