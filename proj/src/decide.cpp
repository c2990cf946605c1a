#include "wpbisim/decide.hpp"

#include <algorithm>
#include <map>
#include <set>
#include <tuple>
#include <sstream>

#include "wpbisim/errors.hpp"

namespace wpb {


std::string distribution_string(const Distribution& mu, const ProbAutomaton& pa) {
    std::ostringstream os;
    bool first = true;
    for (const auto& [s, p] : mu.entries()) {
        os << (first ? "" : ",") << pa.state_name(s) << ':' << p;
        first = false;
    }
    return os.str();
}

SplitInfo find_split(const ProbAutomaton& pa, const Partition& part, const EngineOptions& opts) {
    if (part.carrier_size() != pa.num_states()) throw DomainError("partition does not cover the automaton");
    // A verdict only depends on the class masses of the target, so duplicate
    // challenges within one sweep are answered once.
    std::map<std::tuple<State, Action, std::vector<Rational>>, bool> verdicts;
    for (const Transition& tr : pa.transitions()) {
        const std::size_t c = part.block_of(tr.source);
        const std::vector<Rational> masses = part.masses(tr.target);
        for (State t : part.block(c)) {
            // The challenger always matches itself with the one-step scheduler.
            if (t == tr.source) continue;
            auto [it, fresh] = verdicts.try_emplace({t, tr.action, masses}, false);
            if (fresh) it->second = has_weak_combined(pa, t, tr.action, tr.target, part, opts);
            if (!it->second) {
                SplitInfo info;
                info.block_index = c;
                info.block = part.block(c);
                info.action = tr.action;
                info.target = tr.target;
                info.transition = tr.id;
                info.witness = t;
                return info;
            }
        }
    }
    SplitInfo sentinel;
    sentinel.action = kTau;
    sentinel.target = Distribution::dirac(pa.start());
    return sentinel;
}

Partition refine(const ProbAutomaton& pa, const Partition& part, const SplitInfo& split,
                 const EngineOptions& opts) {
    if (split.is_sentinel()) throw DomainError("cannot refine on the sentinel split");
    if (split.block_index >= part.size() || part.block(split.block_index) != split.block)
        throw DomainError("split class is not a block of the partition");
    std::vector<State> stay;
    std::vector<State> leave;
    for (State t : split.block) {
        if (has_weak_combined(pa, t, split.action, split.target, part, opts)) stay.push_back(t);
        else leave.push_back(t);
    }
    if (stay.empty() || leave.empty())
        throw SoundnessError("degenerate split of C#" + std::to_string(split.block_index));
    return part.split(split.block_index, std::move(stay), std::move(leave));
}

Refinement refine_to_fixpoint(const ProbAutomaton& pa, Partition initial, const EngineOptions& opts) {
    Refinement result{std::move(initial), 0, {}};
    for (;;) {
        SplitInfo split = find_split(pa, result.partition, opts);
        if (split.is_sentinel()) break;
        Partition next = refine(pa, result.partition, split, opts);
        if (next.size() != result.partition.size() + 1) throw SoundnessError("refinement did not add a block");
        ++result.iterations;
        if (result.iterations > pa.num_states()) throw SoundnessError("refinement exceeded the state-count bound");

        std::ostringstream line;
        const Transition& tr = pa.transition(*split.transition);
        line << "split C#" << split.block_index << " on (" << pa.state_name(tr.source) << " -"
             << pa.action_name(tr.action) << "-> " << distribution_string(tr.target, pa) << ") -> C#"
             << split.block_index << ", C#" << next.size() - 1;
        result.trace.push_back(line.str());
        result.partition = std::move(next);
    }
    return result;
}

bool QuotientResult::starts_related() const {
    return partition().block_of(left_start) == partition().block_of(right_start);
}

QuotientResult quotient(const ProbAutomaton& left, const ProbAutomaton& right, const EngineOptions& opts) {
    QuotientResult res{disjoint_union(left, right), {}, 0, 0};
    res.left_start = res.combined.left_states.at(left.start());
    res.right_start = res.combined.right_states.at(right.start());
    res.refinement = refine_to_fixpoint(res.combined.automaton,
                                        Partition::single_block(res.combined.automaton.num_states()), opts);
    return res;
}

bool bisimilar(const ProbAutomaton& left, const ProbAutomaton& right, const EngineOptions& opts) {
    return quotient(left, right, opts).starts_related();
}

Minimized minimize(const ProbAutomaton& pa, const EngineOptions& opts) {
    const Partition part = refine_to_fixpoint(pa, Partition::single_block(pa.num_states()), opts).partition;

    // Blocks are sorted internally, so front() is the smallest member.
    std::vector<std::size_t> order(part.size());
    for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
    std::sort(order.begin(), order.end(),
              [&](std::size_t x, std::size_t y) { return part.block(x).front() < part.block(y).front(); });
    std::vector<State> renamed(part.size());
    for (std::size_t i = 0; i < order.size(); ++i) renamed[order[i]] = i;

    Minimized out{ProbAutomaton(pa.name() + "_min"), {}};
    for (std::size_t i = 0; i < order.size(); ++i) {
        out.automaton.add_state("B" + std::to_string(i));
        out.members.push_back(part.block(order[i]));
    }
    for (Action a = 1; a < pa.num_actions(); ++a) out.automaton.add_action(pa.action_name(a));
    out.automaton.set_start(renamed[part.block_of(pa.start())]);

    std::set<std::tuple<State, Action, std::map<State, Rational>>> seen;
    for (const Transition& tr : pa.transitions()) {
        std::map<State, Rational> projected;
        for (const auto& [s, p] : tr.target.entries()) projected[renamed[part.block_of(s)]] += p;
        const State src = renamed[part.block_of(tr.source)];
        if (!seen.emplace(src, tr.action, projected).second) continue;
        out.automaton.add_transition(src, tr.action, Distribution(std::move(projected)));
    }
    return out;
}

}  // namespace wpb
