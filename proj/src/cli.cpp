#include "wpbisim/cli.hpp"

#include <CLI11.hpp>

#include <algorithm>
#include <fstream>
#include <optional>
#include <sstream>

#include "wpbisim/decide.hpp"
#include "wpbisim/errors.hpp"
#include "wpbisim/format.hpp"
#include "wpbisim/suites.hpp"
#include "wpbisim/validate.hpp"

namespace wpb {

namespace {

constexpr int kPositive = 0;
constexpr int kNegative = 1;
constexpr int kInputError = 2;
constexpr int kInternalError = 3;

Action resolve_action(const ProbAutomaton& pa, const std::string& name) {
    auto a = pa.find_action(name);
    if (!a) throw FormatError("unknown action '" + name + "'");
    return *a;
}

State resolve_state(const ProbAutomaton& pa, const std::string& name) {
    auto s = pa.find_state(name);
    if (!s) throw FormatError("unknown state '" + name + "'");
    return *s;
}

/// Comma-separated declaration indices.
std::vector<TransitionId> parse_ids(const std::string& text, const ProbAutomaton& pa) {
    std::vector<TransitionId> ids;
    std::stringstream in(text);
    std::string item;
    while (std::getline(in, item, ',')) {
        const auto first = item.find_first_not_of(" \t");
        if (first == std::string::npos) continue;
        item = item.substr(first, item.find_last_not_of(" \t") - first + 1);
        if (item.find_first_not_of("0123456789") != std::string::npos)
            throw FormatError("transition id '" + item + "' is not a number");
        const TransitionId id = std::stoull(item);
        if (id >= pa.num_transitions()) throw FormatError("no transition with id " + item);
        ids.push_back(id);
    }
    std::sort(ids.begin(), ids.end());
    ids.erase(std::unique(ids.begin(), ids.end()), ids.end());
    return ids;
}

/// A state name, or a distribution when the text contains ':'.
WeakSource parse_source(const std::string& text, const ProbAutomaton& pa) {
    if (text.find(':') != std::string::npos) return parse_distribution(text, pa);
    return resolve_state(pa, text);
}

Partition partition_or_discrete(const std::string& text, const ProbAutomaton& pa) {
    return text.empty() ? Partition::discrete(pa.num_states()) : parse_partition(text, pa);
}

void print_stats(const Stats& s, std::ostream& err) {
    err << "stats: problems=" << s.problems << " vertices=" << s.vertices << " arcs=" << s.arcs
        << " variables=" << s.variables << " rows=" << s.rows << " pivots=" << s.pivots << '\n';
}

}  // namespace

int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
    CLI::App app{"Decide weak probabilistic bisimilarity of probabilistic automata.", "wpbisim"};
    app.require_subcommand(1);
    app.fallthrough();
    bool no_dprime = false;
    bool no_lp_opt = false;
    bool want_stats = false;
    app.add_flag("--no-dprime", no_dprime, "Query with all transitions instead of the relevant ones");
    app.add_flag("--no-lp-opt", no_lp_opt, "Keep redundant rows and bounds in every LP");
    app.add_flag("--stats", want_stats, "Print LP size and pivot totals to stderr");

    std::string file_a;
    std::string file_b;

    auto* check = app.add_subcommand("check", "Decide whether the start states are bisimilar");
    bool trace = false;
    check->add_option("A", file_a)->required();
    check->add_option("B", file_b)->required();
    check->add_flag("--trace", trace, "Print one line per refinement step");

    auto* quot = app.add_subcommand("quotient", "Print the bisimilarity classes of the disjoint union");
    quot->add_option("A", file_a)->required();
    quot->add_option("B", file_b)->required();

    auto* mini = app.add_subcommand("minimize", "Print the quotient automaton");
    std::string out_path;
    mini->add_option("A", file_a)->required();
    mini->add_option("-o,--output", out_path, "Write to a file instead of stdout");

    auto* weak = app.add_subcommand("weaktrans", "Decide a weak combined transition");
    std::string from;
    std::string from_dist;
    std::string label;
    std::string target;
    std::string allowed_text;
    std::string partition_text;
    bool show_scheduler = false;
    bool hyper = false;
    weak->add_option("A", file_a)->required();
    auto* from_opt = weak->add_option("--from", from, "Source state");
    auto* dist_opt = weak->add_option("--from-dist", from_dist, "Source distribution s:p,...");
    from_opt->excludes(dist_opt);
    weak->add_option("--label", label, "tau or an external action")->required();
    weak->add_option("--target", target, "Target distribution s:p,...")->required();
    auto* allowed_opt = weak->add_option("--allowed", allowed_text, "Allowed transition ids i,j,...");
    weak->add_option("--partition", partition_text, "Relation as {s,t | u}; discrete by default");
    weak->add_flag("--scheduler", show_scheduler, "Print the witness scheduler and its induced distribution");
    weak->add_flag("--hyper", hyper, "Treat --from as a Dirac hyper-transition source");

    auto* match = app.add_subcommand("match", "Find class masses reachable from both sides");
    std::string left;
    std::string right;
    std::string left_label;
    std::string right_label;
    std::string left_allowed;
    std::string right_allowed;
    std::string match_label = kTauName;
    match->add_option("A", file_a)->required();
    match->add_option("--left", left, "State or distribution s:p,...")->required();
    match->add_option("--right", right, "State or distribution s:p,...")->required();
    match->add_option("--label", match_label, "Action for both sides");
    auto* ll_opt = match->add_option("--left-label", left_label);
    auto* rl_opt = match->add_option("--right-label", right_label);
    auto* la_opt = match->add_option("--left-allowed", left_allowed);
    auto* ra_opt = match->add_option("--right-allowed", right_allowed);
    match->add_option("--partition", partition_text, "Relation as {s,t | u}; discrete by default");

    auto* self = app.add_subcommand("selftest", "Run the randomized cross-check suites");
    SuiteConfig suite;
    self->add_option("--instances", suite.instances, "Random automata to generate");
    self->add_option("--seed", suite.seed, "Seed of the first instance");
    self->add_option("--queries", suite.queries, "Weak-transition queries per instance");
    self->add_option("--max-states", suite.gen.max_states);
    self->add_option("--max-transitions", suite.gen.max_transitions);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        return app.exit(e, out, err) == 0 ? kPositive : kInputError;
    }

    Stats stats;
    EngineOptions opts;
    opts.restrict_relevant = !no_dprime;
    opts.optimize_lp = !no_lp_opt;
    if (want_stats) opts.stats = &stats;

    int code = kPositive;
    try {
        if (*check) {
            const auto q = quotient(load_pa(file_a), load_pa(file_b), opts);
            if (trace)
                for (const auto& line : q.refinement.trace) out << line << '\n';
            out << (q.starts_related() ? "BISIMILAR" : "NOT BISIMILAR") << '\n';
            code = q.starts_related() ? kPositive : kNegative;
        } else if (*quot) {
            const auto q = quotient(load_pa(file_a), load_pa(file_b), opts);
            out << print_partition(q.partition(), q.combined.automaton) << '\n';
        } else if (*mini) {
            const ProbAutomaton pa = load_pa(file_a);
            const Minimized m = minimize(pa, opts);
            std::ostringstream text;
            for (std::size_t i = 0; i < m.members.size(); ++i) {
                text << "# " << m.automaton.state_name(i) << " =";
                for (State s : m.members[i]) text << ' ' << pa.state_name(s);
                text << '\n';
            }
            text << print_pa(m.automaton);
            if (out_path.empty()) {
                out << text.str();
            } else {
                std::ofstream file(out_path);
                if (!file) throw FormatError("cannot write '" + out_path + "'");
                file << text.str();
            }
        } else if (*weak) {
            const ProbAutomaton pa = load_pa(file_a);
            if (from.empty() == from_dist.empty()) throw FormatError("exactly one of --from and --from-dist is required");
            WeakSource source;
            if (!from.empty()) {
                source = resolve_state(pa, from);
                if (hyper) source = Distribution::dirac(resolve_state(pa, from));
            } else {
                source = parse_distribution(from_dist, pa);
            }
            std::optional<std::vector<TransitionId>> allowed;
            if (allowed_opt->count() > 0) allowed = parse_ids(allowed_text, pa);
            const Certificate cert = certify(pa, source, resolve_action(pa, label), parse_distribution(target, pa),
                                             allowed, partition_or_discrete(partition_text, pa), opts);
            if (show_scheduler) out << print_certificate(cert, pa);
            else out << (cert.answer ? "FEASIBLE" : "INFEASIBLE") << '\n';
            code = cert.answer ? kPositive : kNegative;
        } else if (*match) {
            const ProbAutomaton pa = load_pa(file_a);
            const Partition part = partition_or_discrete(partition_text, pa);
            MatchSide l{parse_source(left, pa), resolve_action(pa, ll_opt->count() ? left_label : match_label), {}};
            MatchSide r{parse_source(right, pa), resolve_action(pa, rl_opt->count() ? right_label : match_label), {}};
            if (la_opt->count() > 0) l.allowed = parse_ids(left_allowed, pa);
            if (ra_opt->count() > 0) r.allowed = parse_ids(right_allowed, pa);
            const auto p = match_equiv(pa, l, r, part, opts);
            if (p) {
                out << "MATCH\n";
                for (std::size_t c = 0; c < p->size(); ++c) {
                    if ((*p)[c].is_zero()) continue;
                    out << "  {";
                    for (std::size_t i = 0; i < part.block(c).size(); ++i)
                        out << (i ? "," : "") << pa.state_name(part.block(c)[i]);
                    out << "}: " << (*p)[c] << '\n';
                }
            } else {
                out << "NO MATCH\n";
            }
            code = p ? kPositive : kNegative;
        } else if (*self) {
            const HarnessReport report = run_suites(suite);
            out << report.str();
            code = report.ok() ? kPositive : kNegative;
        }
    } catch (const SoundnessError& e) {
        err << "internal error: " << e.what() << '\n';
        return kInternalError;
    } catch (const ConsistencyError& e) {
        err << "internal error: " << e.what() << '\n';
        return kInternalError;
    } catch (const Error& e) {
        err << "error: " << e.what() << '\n';
        return kInputError;
    } catch (const std::exception& e) {
        err << "internal error: " << e.what() << '\n';
        return kInternalError;
    }
    if (want_stats) print_stats(stats, err);
    return code;
}

}  // namespace wpb
