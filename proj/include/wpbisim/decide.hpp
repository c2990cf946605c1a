#pragma once

#include <optional>
#include <string>
#include <vector>

#include "wpbisim/weak_transition.hpp"

namespace wpb {

/// Discriminating evidence (C, a, mu). An empty block is the "no split" sentinel.
struct SplitInfo {
    std::size_t block_index = 0;
    std::vector<State> block;
    Action action = kTau;
    Distribution target;
    /// The challenging transition, and the first member that cannot match it.
    std::optional<TransitionId> transition;
    std::optional<State> witness;

    bool is_sentinel() const { return block.empty(); }
};

/// First (transition, member) pair in id order whose weak query is infeasible.
SplitInfo find_split(const ProbAutomaton& pa, const Partition& part, const EngineOptions& opts = {});

/// Splits the evidence block by feasibility of the evidence query: the
/// feasible members keep the slot, the others form a new last block.
Partition refine(const ProbAutomaton& pa, const Partition& part, const SplitInfo& split,
                 const EngineOptions& opts = {});

struct Refinement {
    Partition partition;
    std::size_t iterations = 0;
    /// One `split C#k on (s -a-> mu) -> C#k1, C#k2` line per iteration.
    std::vector<std::string> trace;
};

/// Refines `initial` until find_split returns the sentinel.
Refinement refine_to_fixpoint(const ProbAutomaton& pa, Partition initial, const EngineOptions& opts = {});

struct QuotientResult {
    UnionResult combined;
    Refinement refinement;
    /// Start states of the two inputs inside the union.
    State left_start = 0;
    State right_start = 0;

    const Partition& partition() const { return refinement.partition; }
    bool starts_related() const;
};

/// Coarsest weak probabilistic bisimulation on the disjoint union.
QuotientResult quotient(const ProbAutomaton& left, const ProbAutomaton& right, const EngineOptions& opts = {});

bool bisimilar(const ProbAutomaton& left, const ProbAutomaton& right, const EngineOptions& opts = {});

struct Minimized {
    ProbAutomaton automaton;
    /// Original members of state Bi, ascending.
    std::vector<std::vector<State>> members;
};

/// Quotient automaton over the bisimilarity classes of `pa`. Classes are named
/// B0, B1, ... by smallest member; projected transitions are deduplicated.
Minimized minimize(const ProbAutomaton& pa, const EngineOptions& opts = {});

/// `s:p,t:q` with state names.
std::string distribution_string(const Distribution& mu, const ProbAutomaton& pa);

}  // namespace wpb
