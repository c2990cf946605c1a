#include "wpbisim/suites.hpp"

#include <functional>
#include <sstream>

#include "wpbisim/decide.hpp"
#include "wpbisim/errors.hpp"

namespace wpb {

bool HarnessReport::ok() const {
    for (const auto& s : suites)
        if (!s.failures.empty()) return false;
    return true;
}

std::string HarnessReport::str() const {
    std::ostringstream os;
    for (const auto& s : suites) {
        os << "suite " << s.name << ": instances=" << s.instances << " checks=" << s.checks
           << " counterexamples=" << s.failures.size() << '\n';
        for (const auto& f : s.failures) os << "  seed " << f.seed << ": " << f.message << '\n';
    }
    os << "seeds " << first_seed << ".." << last_seed << ": " << (ok() ? "PASS" : "FAIL") << '\n';
    return os.str();
}

std::optional<PathSum> enumerate_paths(const StagedChain& chain) {
    PathSum sum;
    std::vector<bool> on_path(chain.nodes.size(), false);
    bool cyclic = false;
    std::function<void(std::size_t, const Rational&)> walk = [&](std::size_t i, const Rational& weight) {
        if (cyclic) return;
        if (on_path[i]) {
            cyclic = true;
            return;
        }
        on_path[i] = true;
        for (const auto& [s, p] : chain.absorb[i]) sum.absorbed[s] += weight * p;
        sum.misplaced += weight * chain.misplaced[i];
        for (const auto& [j, p] : chain.step[i]) walk(j, weight * p);
        on_path[i] = false;
    };
    if (!chain.nodes.empty()) walk(0, Rational(1));
    if (cyclic) return std::nullopt;
    return sum;
}

bool hyper_by_composition(const ProbAutomaton& pa, const Distribution& gamma, Action a, const Distribution& mu,
                          const std::vector<TransitionId>& allowed, const Partition& part) {
    std::vector<LinearProgram> parts;
    std::size_t flows = 0;
    for (const auto& [s, w] : gamma.entries()) {
        parts.push_back(build_lp(build_network(pa, s, a, mu, allowed, part)));
        flows += parts.back().num_vars();
    }
    const std::size_t blocks = part.size();
    LinearProgram joint;
    joint.nonneg.assign(flows + parts.size() * blocks, true);
    std::size_t offset = 0;
    std::size_t k = 0;
    for (const LinearProgram& lp : parts) {
        const std::size_t q_base = flows + k * blocks;
        for (Constraint row : lp.rows) {
            for (Term& t : row.terms) t.var += offset;
            if (row.kind == RowKind::ClassMass) {
                row.terms.push_back({q_base + row.tag, Rational(-1)});
                row.rhs = 0;
                row.kind = RowKind::Other;
            }
            joint.rows.push_back(std::move(row));
        }
        offset += lp.num_vars();
        ++k;
    }
    for (std::size_t c = 0; c < blocks; ++c) {
        Constraint row;
        k = 0;
        for (const auto& [s, w] : gamma.entries()) row.terms.push_back({flows + k++ * blocks + c, w});
        row.rhs = part.masses(mu)[c];
        joint.rows.push_back(std::move(row));
    }
    return solve(joint, SolveMode::FeasibilityOnly).feasible();
}

namespace {

/// One full distribution per class-mass vector: the mass of C sits on C's
/// smallest member.
Distribution representative(const std::vector<Rational>& masses, const Partition& part) {
    std::map<State, Rational> entries;
    for (std::size_t c = 0; c < masses.size(); ++c)
        if (!masses[c].is_zero()) entries[part.block(c).front()] = masses[c];
    return Distribution(std::move(entries));
}

struct Instance {
    std::uint64_t seed;
    ProbAutomaton pa;
    ProbAutomaton other;
    Partition part;
    std::vector<std::tuple<State, Action, Distribution>> queries;
    std::vector<Distribution> sources;
};

Instance make_instance(const SuiteConfig& cfg, std::uint64_t seed) {
    GenConfig gen = cfg.gen;
    gen.seed = seed;
    ProbAutomaton pa = gen_pa(gen);
    gen.seed = seed ^ 0x9e3779b97f4a7c15ULL;
    ProbAutomaton other = gen_pa(gen);

    Rng rng(seed * 31 + 7);
    Partition part = gen_partition(rng, pa.num_states(), 3);
    Instance inst{seed, std::move(pa), std::move(other), std::move(part), {}, {}};
    const auto& p = inst.pa;
    for (std::size_t q = 0; q < cfg.queries; ++q) {
        const State t = rng.below(p.num_states());
        // Mostly challenge with an existing transition so that both answers occur.
        if (p.num_transitions() > 0 && rng.below(3) != 0) {
            const Transition& tr = p.transition(rng.below(p.num_transitions()));
            inst.queries.emplace_back(t, tr.action, tr.target);
        } else {
            inst.queries.emplace_back(t, rng.below(p.num_actions()),
                                      gen_distribution(rng, p, gen.max_support, gen.max_weight));
        }
        inst.sources.push_back(gen_distribution(rng, p, 2, gen.max_weight));
    }
    return inst;
}

class Runner {
public:
    explicit Runner(const SuiteConfig& cfg) : cfg_(cfg) {
        for (const char* name : {"(a) certify round-trip", "(b) lp optimization invariance",
                                 "(c) relevant-transition restriction invariance", "(d) allowed=all agreement",
                                 "(e) hyper-transition agreement", "(f) quotient soundness"})
            report_.suites.push_back({name, 0, 0, {}});
        opts_.fault = cfg.fault;
    }

    HarnessReport run() {
        report_.first_seed = cfg_.seed;
        report_.last_seed = cfg_.seed + (cfg_.instances == 0 ? 0 : cfg_.instances - 1);
        for (std::size_t i = 0; i < cfg_.instances; ++i) {
            const Instance inst = make_instance(cfg_, cfg_.seed + i);
            const std::function<void(const Instance&)> suites[] = {
                [&](const Instance& x) { certify_suite(x); },   [&](const Instance& x) { optimization_suite(x); },
                [&](const Instance& x) { restriction_suite(x); }, [&](const Instance& x) { allowed_suite(x); },
                [&](const Instance& x) { hyper_suite(x); },     [&](const Instance& x) { quotient_suite(x); },
            };
            for (std::size_t s = 0; s < 6; ++s) {
                current_ = s;
                ++report_.suites[s].instances;
                try {
                    suites[s](inst);
                } catch (const std::exception& e) {
                    fail(inst, std::string("exception: ") + e.what());
                }
            }
        }
        return report_;
    }

private:
    void check(const Instance& inst, bool cond, const std::string& what) {
        ++report_.suites[current_].checks;
        if (!cond) fail(inst, what);
    }
    void fail(const Instance& inst, const std::string& what) {
        report_.suites[current_].failures.push_back({inst.seed, what});
    }

    static std::string describe(const Instance& inst, State t, Action a, const Distribution& mu) {
        return "query " + inst.pa.state_name(t) + " -" + inst.pa.action_name(a) + "-> " +
               distribution_string(mu, inst.pa);
    }

    void certify_suite(const Instance& inst) {
        for (const auto& [t, a, mu] : inst.queries) {
            const Certificate cert = certify(inst.pa, t, a, mu, std::nullopt, inst.part, opts_);
            check(inst, cert.answer == has_weak_combined(inst.pa, t, a, mu, inst.part, opts_),
                  describe(inst, t, a, mu) + ": certificate answer disagrees with the decision");
            if (!cert.answer) continue;
            const auto paths = enumerate_paths(build_staged_chain(inst.pa, *cert.scheduler, t, a));
            if (!paths) continue;
            check(inst, paths->misplaced.is_zero() && Distribution(paths->absorbed) == *cert.induced,
                  describe(inst, t, a, mu) + ": path enumeration disagrees with the absorption solve");
        }
    }

    void optimization_suite(const Instance& inst) {
        EngineOptions plain = opts_;
        plain.optimize_lp = false;
        EngineOptions optimized = opts_;
        optimized.optimize_lp = true;
        const auto all = inst.pa.all_transition_ids();
        for (const auto& [t, a, mu] : inst.queries) {
            const auto x = solve_weak_query(inst.pa, t, a, mu, all, inst.part, SolveMode::MinimizeObjective, plain);
            const auto y = solve_weak_query(inst.pa, t, a, mu, all, inst.part, SolveMode::MinimizeObjective, optimized);
            check(inst, x.feasible() == y.feasible() && (!x.feasible() || x.solution.objective == y.solution.objective),
                  describe(inst, t, a, mu) + ": optimized problem disagrees");
        }
    }

    void restriction_suite(const Instance& inst) {
        EngineOptions off = opts_;
        off.restrict_relevant = false;
        EngineOptions on = opts_;
        on.restrict_relevant = true;
        const auto x = quotient(inst.pa, inst.other, off);
        const auto y = quotient(inst.pa, inst.other, on);
        check(inst, x.partition() == y.partition(), "quotient changes with the relevant-transition restriction");
        for (const auto& [t, a, mu] : inst.queries)
            check(inst, has_weak_combined(inst.pa, t, a, mu, inst.part, off) ==
                            has_weak_combined(inst.pa, t, a, mu, inst.part, on),
                  describe(inst, t, a, mu) + ": restriction changes the answer");
    }

    void allowed_suite(const Instance& inst) {
        const auto all = inst.pa.all_transition_ids();
        for (const auto& [t, a, mu] : inst.queries)
            check(inst, has_allowed_weak(inst.pa, t, a, mu, all, inst.part, opts_) ==
                            has_weak_combined(inst.pa, t, a, mu, inst.part, opts_),
                  describe(inst, t, a, mu) + ": allowed=all disagrees with the plain query");
    }

    void hyper_suite(const Instance& inst) {
        const auto all = inst.pa.all_transition_ids();
        for (std::size_t q = 0; q < inst.queries.size(); ++q) {
            const auto& [t, a, mu] = inst.queries[q];
            const Distribution& gamma = inst.sources[q];
            const std::string where = describe(inst, t, a, mu) + " from " + distribution_string(gamma, inst.pa);
            const bool fresh = has_hyper(inst.pa, gamma, a, mu, all, inst.part, opts_);
            check(inst, fresh == hyper_by_composition(inst.pa, gamma, a, mu, all, inst.part),
                  where + ": fresh-state construction disagrees with composition");
            check(inst, has_hyper(inst.pa, Distribution::dirac(t), a, mu, all, inst.part, opts_) ==
                            has_weak_combined(inst.pa, t, a, mu, inst.part, opts_),
                  describe(inst, t, a, mu) + ": Dirac hyper-transition disagrees with the plain query");
            if (fresh) {
                const Certificate cert = certify(inst.pa, gamma, a, mu, std::nullopt, inst.part, opts_);
                check(inst, cert.answer, where + ": hyper certificate missing");
            }

            // A common class-mass vector must be reachable by each side on its own.
            const auto p = match_equiv(inst.pa, {t, a, std::nullopt}, {gamma, a, std::nullopt}, inst.part, opts_);
            const bool left = has_weak_combined(inst.pa, t, a, mu, inst.part, opts_);
            if (p) {
                const Distribution rep = representative(*p, inst.part);
                check(inst, has_weak_combined(inst.pa, t, a, rep, inst.part, opts_) &&
                                has_hyper(inst.pa, gamma, a, rep, all, inst.part, opts_),
                      where + ": matched class masses are not reachable");
            } else {
                check(inst, !(left && fresh), where + ": no match although mu is reachable by both sides");
            }
        }
    }

    void quotient_suite(const Instance& inst) {
        const auto q = quotient(inst.pa, inst.other, opts_);
        const auto& u = q.combined.automaton;
        check(inst, find_split(u, q.partition(), opts_).is_sentinel(), "final partition still splits");
        check(inst, q.refinement.iterations <= u.num_states(), "refinement loop exceeded |S|");
        check(inst, q.starts_related() == bisimilar(inst.other, inst.pa, opts_), "bisimilarity is not symmetric");

        const auto self = quotient(inst.pa, inst.pa, opts_);
        bool mirrored = true;
        for (State s = 0; s < inst.pa.num_states(); ++s)
            mirrored = mirrored && self.partition().block_of(self.combined.left_states[s]) ==
                                       self.partition().block_of(self.combined.right_states[s]);
        check(inst, mirrored, "a state is separated from its mirror copy");

        const Minimized m = minimize(inst.pa, opts_);
        check(inst, bisimilar(inst.pa, m.automaton, opts_), "minimized automaton is not bisimilar");
    }

    const SuiteConfig& cfg_;
    EngineOptions opts_;
    HarnessReport report_;
    std::size_t current_ = 0;
};

}  // namespace

HarnessReport run_suites(const SuiteConfig& cfg) { return Runner(cfg).run(); }

}  // namespace wpb
