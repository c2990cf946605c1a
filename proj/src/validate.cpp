#include "wpbisim/validate.hpp"

#include <algorithm>
#include <deque>
#include <sstream>

#include "wpbisim/errors.hpp"

namespace wpb {

StagedChain build_staged_chain(const ProbAutomaton& pa, const DeterminateScheduler& sched, State t,
                               Action a) {
    if (t >= pa.num_states()) throw DomainError("start state out of range");
    for (const auto& [key, choice] : sched.entries()) {
        if (key.first >= pa.num_states()) throw StructuralError("scheduler keyed on an unknown state");
        for (const auto& [tr, p] : choice.transitions) {
            if (tr >= pa.num_transitions() || pa.transition(tr).source != key.first)
                throw StructuralError("scheduler picks tr#" + std::to_string(tr) + " at state '" +
                                      pa.state_name(key.first) + "' where it is not enabled");
        }
        if (choice.stop().sign() < 0) throw StructuralError("scheduler choice exceeds mass 1");
    }

    const Stage final_stage = a == kTau ? Stage::PreA : Stage::PostA;
    StagedChain chain;
    std::map<std::pair<State, Stage>, std::size_t> index;
    std::deque<std::size_t> queue;
    auto node = [&](State s, Stage stage) {
        auto [it, fresh] = index.emplace(std::pair(s, stage), chain.nodes.size());
        if (fresh) {
            chain.nodes.push_back({s, stage});
            chain.step.emplace_back();
            chain.absorb.emplace_back();
            chain.misplaced.emplace_back();
            queue.push_back(it->second);
        }
        return it->second;
    };
    node(t, Stage::PreA);

    while (!queue.empty()) {
        const std::size_t i = queue.front();
        queue.pop_front();
        const auto [s, stage] = chain.nodes[i];
        const Choice* choice = sched.find(s, stage);
        const Rational stop = choice ? choice->stop() : Rational(1);
        if (!stop.is_zero()) {
            if (stage == final_stage) chain.absorb[i][s] += stop;
            else chain.misplaced[i] += stop;
        }
        if (!choice) continue;
        for (const auto& [tr_id, p] : choice->transitions) {
            const Transition& tr = pa.transition(tr_id);
            std::optional<Stage> next;
            if (tr.action == kTau) next = stage;
            else if (tr.action == a && stage == Stage::PreA) next = Stage::PostA;
            if (!next) {
                chain.misplaced[i] += p;
                continue;
            }
            for (const auto& [succ, q] : tr.target.entries()) {
                const std::size_t j = node(succ, *next);
                chain.step[i][j] += p * q;
            }
        }
    }
    return chain;
}

namespace {

/// Solves the square system `m x = b` exactly (Gaussian elimination, first
/// nonzero pivot). The matrix must be nonsingular.
std::vector<Rational> solve_linear(std::vector<std::vector<Rational>> m, std::vector<Rational> b) {
    const std::size_t n = b.size();
    for (std::size_t col = 0; col < n; ++col) {
        std::size_t piv = col;
        while (piv < n && m[piv][col].is_zero()) ++piv;
        if (piv == n) throw SoundnessError("absorption system is singular");
        std::swap(m[piv], m[col]);
        std::swap(b[piv], b[col]);
        for (std::size_t r = 0; r < n; ++r) {
            if (r == col || m[r][col].is_zero()) continue;
            const Rational factor = m[r][col] / m[col][col];
            for (std::size_t k = col; k < n; ++k)
                if (!m[col][k].is_zero()) m[r][k] -= factor * m[col][k];
            b[r] -= factor * b[col];
        }
    }
    std::vector<Rational> x(n);
    for (std::size_t i = 0; i < n; ++i) x[i] = b[i] / m[i][i];
    return x;
}

}  // namespace

InducedOutcome induced_distribution(const ProbAutomaton& pa, const DeterminateScheduler& sched,
                                    State t, Action a) {
    const StagedChain chain = build_staged_chain(pa, sched, t, a);
    const std::size_t n = chain.nodes.size();

    // Nodes that cannot reach any exit keep their mass forever; they are left
    // out, which makes the remaining system nonsingular.
    std::vector<std::vector<std::size_t>> preds(n);
    for (std::size_t i = 0; i < n; ++i)
        for (const auto& [j, p] : chain.step[i]) preds[j].push_back(i);
    std::vector<bool> live(n, false);
    std::deque<std::size_t> queue;
    for (std::size_t i = 0; i < n; ++i) {
        if (!chain.absorb[i].empty() || !chain.misplaced[i].is_zero()) {
            live[i] = true;
            queue.push_back(i);
        }
    }
    while (!queue.empty()) {
        const std::size_t j = queue.front();
        queue.pop_front();
        for (std::size_t i : preds[j]) {
            if (!live[i]) {
                live[i] = true;
                queue.push_back(i);
            }
        }
    }
    std::vector<std::size_t> pos(n, static_cast<std::size_t>(-1));
    std::vector<std::size_t> members;
    for (std::size_t i = 0; i < n; ++i) {
        if (live[i]) {
            pos[i] = members.size();
            members.push_back(i);
        }
    }

    // Expected visits y: y_j = [j = start] + sum_i y_i step(i, j).
    const std::size_t k = members.size();
    std::vector<std::vector<Rational>> m(k, std::vector<Rational>(k));
    std::vector<Rational> rhs(k);
    for (std::size_t r = 0; r < k; ++r) m[r][r] = 1;
    for (std::size_t i : members)
        for (const auto& [j, p] : chain.step[i])
            if (live[j]) m[pos[j]][pos[i]] -= p;
    if (live[0]) rhs[pos[0]] = 1;

    std::vector<Rational> visits;
    if (k > 0) {
        visits = solve_linear(m, rhs);
        for (std::size_t r = 0; r < k; ++r) {
            Rational lhs;
            for (std::size_t c = 0; c < k; ++c)
                if (!m[r][c].is_zero()) lhs += m[r][c] * visits[c];
            if (lhs != rhs[r]) throw SoundnessError("absorption solve failed re-substitution");
        }
    }

    std::map<State, Rational> final_mass;
    Rational absorbed;
    Rational misplaced;
    for (std::size_t r = 0; r < k; ++r) {
        const std::size_t i = members[r];
        for (const auto& [s, p] : chain.absorb[i]) {
            const Rational mass = visits[r] * p;
            if (mass.is_zero()) continue;
            final_mass[s] += mass;
            absorbed += mass;
        }
        misplaced += visits[r] * chain.misplaced[i];
    }
    if (absorbed != Rational(1) || !misplaced.is_zero()) return Divergent{absorbed, misplaced};
    return Distribution(std::move(final_mass));
}

Certificate certify(const ProbAutomaton& pa, const WeakSource& source, Action a, const Distribution& mu,
                    const std::optional<std::vector<TransitionId>>& allowed, const Partition& part,
                    const EngineOptions& opts) {
    Certificate cert;
    const ProbAutomaton* automaton = &pa;
    const Partition* partition = &part;
    State start = 0;
    std::vector<TransitionId> allowed_ids;
    if (std::holds_alternative<State>(source)) {
        start = std::get<State>(source);
        if (start >= pa.num_states()) throw DomainError("query state out of range");
        if (allowed) allowed_ids = *allowed;
        else if (opts.restrict_relevant) allowed_ids = restrict_relevant(pa, start, a);
        else allowed_ids = pa.all_transition_ids();
    } else {
        cert.extension = extend_for_hyper(pa, std::get<Distribution>(source),
                                          allowed ? *allowed : pa.all_transition_ids(), part);
        automaton = &cert.extension->automaton;
        partition = &cert.extension->partition;
        start = cert.extension->fresh;
        allowed_ids = cert.extension->allowed;
    }

    const QueryResult res = solve_weak_query(*automaton, start, a, mu, allowed_ids, *partition,
                                             SolveMode::MinimizeObjective, opts);
    if (!res.feasible()) return cert;

    DeterminateScheduler sched = extract_scheduler(res.network, res.solution);
    const InducedOutcome outcome = induced_distribution(*automaton, sched, start, a);
    if (const auto* div = std::get_if<Divergent>(&outcome))
        throw SoundnessError("extracted scheduler does not induce a weak transition (absorbed " +
                             div->absorbed.str() + ", misplaced " + div->misplaced.str() + ")");
    const auto& induced = std::get<Distribution>(outcome);
    if (!lift_equiv(induced, mu, *partition))
        throw SoundnessError("extracted scheduler induces a distribution not matching the target");
    for (const auto& [key, choice] : sched.entries())
        for (const auto& [tr, p] : choice.transitions)
            if (!std::binary_search(res.network.allowed().begin(), res.network.allowed().end(), tr))
                throw SoundnessError("extracted scheduler uses a transition outside the allowed set");

    cert.answer = true;
    cert.scheduler = std::move(sched);
    cert.induced = induced;
    return cert;
}

std::string print_certificate(const Certificate& cert, const ProbAutomaton& pa) {
    std::ostringstream os;
    os << (cert.answer ? "FEASIBLE" : "INFEASIBLE") << '\n';
    if (!cert.answer) return os.str();
    const ProbAutomaton& names = cert.extension ? cert.extension->automaton : pa;
    if (cert.scheduler) os << serialize_scheduler(*cert.scheduler, names);
    if (cert.induced) {
        os << "induced:";
        bool first = true;
        for (const auto& [s, p] : cert.induced->entries()) {
            os << (first ? " " : ",") << names.state_name(s) << ':' << p;
            first = false;
        }
        os << '\n';
    }
    return os.str();
}

}  // namespace wpb
