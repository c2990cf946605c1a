#include "wpbisim/automaton.hpp"

#include <algorithm>
#include <deque>

#include "wpbisim/errors.hpp"

namespace wpb {

// ---------------------------------------------------------------------------
// Distribution

Distribution::Distribution(std::map<State, Rational> entries) : entries_(std::move(entries)) {
    for (const auto& [s, p] : entries_)
        if (p.sign() <= 0)
            throw DomainError("distribution entry for state " + std::to_string(s) +
                              " is not positive: " + p.str());
    if (mass() > Rational(1)) throw DomainError("distribution mass exceeds 1: " + mass().str());
}

Distribution Distribution::dirac(State s) { return Distribution({{s, Rational(1)}}); }

Rational Distribution::operator()(State s) const {
    auto it = entries_.find(s);
    return it == entries_.end() ? Rational(0) : it->second;
}

Rational Distribution::mass() const {
    Rational total;
    for (const auto& [s, p] : entries_) total += p;
    return total;
}

std::vector<State> Distribution::support() const {
    std::vector<State> out;
    out.reserve(entries_.size());
    for (const auto& [s, p] : entries_) out.push_back(s);
    return out;
}

// ---------------------------------------------------------------------------
// ProbAutomaton

ProbAutomaton::ProbAutomaton(std::string name) : name_(std::move(name)) {
    action_names_.push_back(kTauName);
    action_index_.emplace(kTauName, kTau);
}

State ProbAutomaton::add_state(std::string name) {
    if (state_index_.contains(name)) throw DomainError("duplicate state '" + name + "'");
    const State id = state_names_.size();
    state_index_.emplace(name, id);
    state_names_.push_back(std::move(name));
    outgoing_.emplace_back();
    return id;
}

Action ProbAutomaton::add_action(std::string name) {
    if (name == kTauName) throw DomainError("'tau' cannot be declared as an external action");
    if (auto it = action_index_.find(name); it != action_index_.end()) return it->second;
    const Action id = action_names_.size();
    action_index_.emplace(name, id);
    action_names_.push_back(std::move(name));
    return id;
}

TransitionId ProbAutomaton::add_transition(State source, Action action, Distribution target) {
    if (source >= num_states()) throw DomainError("transition source out of range");
    if (action >= num_actions()) throw DomainError("transition action out of range");
    for (const auto& [s, p] : target.entries())
        if (s >= num_states()) throw DomainError("transition target out of range");
    if (!target.is_full())
        throw DomainError("distribution sums to " + target.mass().str() + ", expected 1");
    const TransitionId id = transitions_.size();
    transitions_.push_back(Transition{id, source, action, std::move(target)});
    outgoing_[source].push_back(id);
    return id;
}

void ProbAutomaton::set_start(State s) {
    if (s >= num_states()) throw DomainError("start state out of range");
    start_ = s;
}

std::optional<State> ProbAutomaton::find_state(const std::string& name) const {
    auto it = state_index_.find(name);
    if (it == state_index_.end()) return std::nullopt;
    return it->second;
}

std::optional<Action> ProbAutomaton::find_action(const std::string& name) const {
    auto it = action_index_.find(name);
    if (it == action_index_.end()) return std::nullopt;
    return it->second;
}

std::vector<TransitionId> ProbAutomaton::all_transition_ids() const {
    std::vector<TransitionId> ids(transitions_.size());
    for (TransitionId i = 0; i < ids.size(); ++i) ids[i] = i;
    return ids;
}

// ---------------------------------------------------------------------------
// Partition

Partition::Partition(std::vector<std::vector<State>> blocks, std::size_t carrier_size)
    : blocks_(std::move(blocks)) {
    constexpr std::size_t unset = static_cast<std::size_t>(-1);
    block_of_.assign(carrier_size, unset);
    for (std::size_t b = 0; b < blocks_.size(); ++b) {
        auto& block = blocks_[b];
        if (block.empty()) throw DomainError("partition has an empty block");
        std::sort(block.begin(), block.end());
        for (State s : block) {
            if (s >= carrier_size) throw DomainError("partition block mentions an unknown state");
            if (block_of_[s] != unset)
                throw DomainError("state " + std::to_string(s) + " occurs in two blocks");
            block_of_[s] = b;
        }
    }
    for (State s = 0; s < carrier_size; ++s)
        if (block_of_[s] == unset)
            throw DomainError("state " + std::to_string(s) + " is not covered by the partition");
}

Partition Partition::single_block(std::size_t carrier_size) {
    if (carrier_size == 0) return Partition({}, 0);
    std::vector<State> all(carrier_size);
    for (State s = 0; s < carrier_size; ++s) all[s] = s;
    return Partition({std::move(all)}, carrier_size);
}

Partition Partition::discrete(std::size_t carrier_size) {
    std::vector<std::vector<State>> blocks(carrier_size);
    for (State s = 0; s < carrier_size; ++s) blocks[s] = {s};
    return Partition(std::move(blocks), carrier_size);
}

std::size_t Partition::block_of(State s) const {
    if (s >= block_of_.size())
        throw DomainError("state " + std::to_string(s) + " is outside the partition carrier");
    return block_of_[s];
}

std::vector<Rational> Partition::masses(const Distribution& mu) const {
    std::vector<Rational> out(blocks_.size());
    for (const auto& [s, p] : mu.entries()) out[block_of(s)] += p;
    return out;
}

Partition Partition::split(std::size_t index, std::vector<State> stay,
                           std::vector<State> leave) const {
    auto blocks = blocks_;
    blocks.at(index) = std::move(stay);
    blocks.push_back(std::move(leave));
    return Partition(std::move(blocks), carrier_size());
}

Partition Partition::with_fresh_singleton() const {
    auto blocks = blocks_;
    blocks.push_back({carrier_size()});
    return Partition(std::move(blocks), carrier_size() + 1);
}

bool lift_equiv(const Distribution& mu1, const Distribution& mu2, const Partition& part) {
    return part.masses(mu1) == part.masses(mu2);
}

// ---------------------------------------------------------------------------
// Disjoint union

namespace {

void append_copy(const ProbAutomaton& src, const std::string& prefix, ProbAutomaton& dst,
                 std::vector<State>& states, std::vector<TransitionId>& transitions,
                 std::vector<Action>& actions) {
    actions.assign(src.num_actions(), kTau);
    for (Action a = 1; a < src.num_actions(); ++a) {
        const auto& name = src.action_name(a);
        if (name == kTauName)
            throw FormatError("action 'tau' declared external in '" + src.name() + "'");
        actions[a] = dst.add_action(name);
    }
    for (State s = 0; s < src.num_states(); ++s)
        states.push_back(dst.add_state(prefix + src.state_name(s)));
    for (const auto& tr : src.transitions()) {
        std::map<State, Rational> target;
        for (const auto& [s, p] : tr.target.entries()) target.emplace(states[s], p);
        transitions.push_back(
            dst.add_transition(states[tr.source], actions[tr.action], Distribution(std::move(target))));
    }
}

}  // namespace

UnionResult disjoint_union(const ProbAutomaton& left, const ProbAutomaton& right) {
    UnionResult out{ProbAutomaton(left.name() + "+" + right.name()), {}, {}, {}, {}, {}, {}};
    append_copy(left, "1.", out.automaton, out.left_states, out.left_transitions, out.left_actions);
    append_copy(right, "2.", out.automaton, out.right_states, out.right_transitions,
                out.right_actions);
    if (left.num_states() > 0) out.automaton.set_start(out.left_states[left.start()]);
    return out;
}

// ---------------------------------------------------------------------------
// Relevant-transition restriction

namespace {

std::vector<TransitionId> reachable_transitions(const ProbAutomaton& pa, State t, Action a,
                                                const std::vector<bool>* allowed) {
    if (t >= pa.num_states()) throw DomainError("state out of range");
    std::vector<bool> seen(pa.num_states(), false);
    std::vector<bool> used(pa.num_transitions(), false);
    std::deque<State> queue{t};
    seen[t] = true;
    while (!queue.empty()) {
        const State v = queue.front();
        queue.pop_front();
        for (TransitionId id : pa.outgoing(v)) {
            const auto& tr = pa.transition(id);
            if (tr.action != kTau && tr.action != a) continue;
            if (allowed && !(*allowed)[id]) continue;
            used[id] = true;
            for (const auto& [succ, p] : tr.target.entries()) {
                if (!seen[succ]) {
                    seen[succ] = true;
                    queue.push_back(succ);
                }
            }
        }
    }
    std::vector<TransitionId> out;
    for (TransitionId id = 0; id < used.size(); ++id)
        if (used[id]) out.push_back(id);
    return out;
}

}  // namespace

std::vector<TransitionId> restrict_relevant(const ProbAutomaton& pa, State t, Action a) {
    return reachable_transitions(pa, t, a, nullptr);
}

std::vector<TransitionId> restrict_relevant(const ProbAutomaton& pa, State t, Action a,
                                            std::span<const TransitionId> allowed) {
    std::vector<bool> mask(pa.num_transitions(), false);
    for (TransitionId id : allowed) {
        if (id >= pa.num_transitions()) throw DomainError("allowed transition out of range");
        mask[id] = true;
    }
    return reachable_transitions(pa, t, a, &mask);
}

}  // namespace wpb
