#pragma once

#include <cstddef>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <unordered_map>
#include <vector>

#include "wpbisim/rational.hpp"

namespace wpb {

using State = std::size_t;
using TransitionId = std::size_t;
using Action = std::size_t;

/// The internal action. External actions are numbered from 1.
inline constexpr Action kTau = 0;
inline constexpr const char* kTauName = "tau";

/// Finite (sub-)distribution over states. Only positive masses are stored, so
/// the key set is the support; the stop mass is 1 minus the total.
class Distribution {
public:
    Distribution() = default;
    explicit Distribution(std::map<State, Rational> entries);

    static Distribution dirac(State s);

    Rational operator()(State s) const;
    Rational mass() const;
    bool is_full() const { return mass() == Rational(1); }

    const std::map<State, Rational>& entries() const { return entries_; }
    std::vector<State> support() const;
    bool empty() const { return entries_.empty(); }

    friend bool operator==(const Distribution&, const Distribution&) = default;

private:
    std::map<State, Rational> entries_;
};

struct Transition {
    TransitionId id = 0;
    State source = 0;
    Action action = kTau;
    Distribution target;
};

/// A probabilistic automaton (S, start, external actions, D). States, actions and
/// transitions are dense indices in declaration order.
class ProbAutomaton {
public:
    explicit ProbAutomaton(std::string name = "pa");

    State add_state(std::string name);
    /// Declares an external action; returns the existing id if already declared.
    Action add_action(std::string name);
    TransitionId add_transition(State source, Action action, Distribution target);
    void set_start(State s);

    const std::string& name() const { return name_; }
    std::size_t num_states() const { return state_names_.size(); }
    State start() const { return start_; }
    const std::string& state_name(State s) const { return state_names_.at(s); }
    std::optional<State> find_state(const std::string& name) const;

    /// Includes tau at index 0.
    std::size_t num_actions() const { return action_names_.size(); }
    const std::string& action_name(Action a) const { return action_names_.at(a); }
    std::optional<Action> find_action(const std::string& name) const;

    std::size_t num_transitions() const { return transitions_.size(); }
    const std::vector<Transition>& transitions() const { return transitions_; }
    const Transition& transition(TransitionId id) const { return transitions_.at(id); }
    std::span<const TransitionId> outgoing(State s) const { return outgoing_.at(s); }

    std::vector<TransitionId> all_transition_ids() const;

private:
    std::string name_;
    std::vector<std::string> state_names_;
    std::unordered_map<std::string, State> state_index_;
    std::vector<std::string> action_names_;
    std::unordered_map<std::string, Action> action_index_;
    std::vector<Transition> transitions_;
    std::vector<std::vector<TransitionId>> outgoing_;
    State start_ = 0;
};

/// Disjoint blocks covering states 0..carrier_size-1; also read as the
/// equivalence relation whose classes are the blocks.
class Partition {
public:
    Partition() = default;
    Partition(std::vector<std::vector<State>> blocks, std::size_t carrier_size);

    static Partition single_block(std::size_t carrier_size);
    static Partition discrete(std::size_t carrier_size);

    std::size_t size() const { return blocks_.size(); }
    std::size_t carrier_size() const { return block_of_.size(); }
    const std::vector<State>& block(std::size_t index) const { return blocks_.at(index); }
    const std::vector<std::vector<State>>& blocks() const { return blocks_; }
    std::size_t block_of(State s) const;
    const std::vector<std::size_t>& block_map() const { return block_of_; }

    /// Mass of `mu` on every block, in block order.
    std::vector<Rational> masses(const Distribution& mu) const;

    /// Block `index` keeps `stay`; `leave` becomes a new last block.
    Partition split(std::size_t index, std::vector<State> stay, std::vector<State> leave) const;

    /// Adds state `carrier_size()` as a new singleton block at the end.
    Partition with_fresh_singleton() const;

    friend bool operator==(const Partition&, const Partition&) = default;

private:
    std::vector<std::vector<State>> blocks_;
    std::vector<std::size_t> block_of_;
};

/// mu1 L(R) mu2 for the equivalence relation R given by `part`.
bool lift_equiv(const Distribution& mu1, const Distribution& mu2, const Partition& part);

struct UnionResult {
    ProbAutomaton automaton;
    std::vector<State> left_states;
    std::vector<State> right_states;
    std::vector<TransitionId> left_transitions;
    std::vector<TransitionId> right_transitions;
    std::vector<Action> left_actions;
    std::vector<Action> right_actions;
};

/// States of `right` follow those of `left`; union states are named `1.x` / `2.x`.
/// The start state of the result is the start of `left`.
UnionResult disjoint_union(const ProbAutomaton& left, const ProbAutomaton& right);

/// Transitions labelled tau or `a` enabled by states reachable from `t` through
/// such transitions. Ascending ids.
std::vector<TransitionId> restrict_relevant(const ProbAutomaton& pa, State t, Action a);

/// As above, but only transitions in `allowed` are followed and returned.
std::vector<TransitionId> restrict_relevant(const ProbAutomaton& pa, State t, Action a,
                                            std::span<const TransitionId> allowed);

}  // namespace wpb
