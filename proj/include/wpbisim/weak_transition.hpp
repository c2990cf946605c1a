#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <variant>
#include <vector>

#include "wpbisim/lp.hpp"
#include "wpbisim/options.hpp"
#include "wpbisim/simplex.hpp"

namespace wpb {

/// Trace abstraction of a determinate scheduler: before or after the visible action.
enum class Stage : std::uint8_t { PreA, PostA };

const char* stage_name(Stage stage);

/// Sub-distribution over transitions; the missing mass is the stop probability.
struct Choice {
    std::vector<std::pair<TransitionId, Rational>> transitions;

    Rational stop() const;
    friend bool operator==(const Choice&, const Choice&) = default;
};

/// A scheduler whose decision depends only on (last state, trace stage).
/// Keys without an entry stop immediately.
class DeterminateScheduler {
public:
    void set(State s, Stage stage, Choice choice);
    const Choice* find(State s, Stage stage) const;
    const std::map<std::pair<State, Stage>, Choice>& entries() const { return choices_; }

private:
    std::map<std::pair<State, Stage>, Choice> choices_;
};

/// `state stage -> tr#i:p, tr#j:q | stop:r`, one line per keyed entry.
std::string serialize_scheduler(const DeterminateScheduler& sched, const ProbAutomaton& pa);

/// Either a single start state or a start distribution (hyper-transition).
using WeakSource = std::variant<State, Distribution>;

struct QueryResult {
    FlowNetwork network;
    LinearProgram lp;
    Solution solution;

    bool feasible() const { return solution.feasible(); }
};

/// Builds and solves L(t, a, mu, A, R) exactly as given (no relevant-transition restriction).
QueryResult solve_weak_query(const ProbAutomaton& pa, State t, Action a, const Distribution& mu,
                             const std::vector<TransitionId>& allowed, const Partition& part,
                             SolveMode mode, const EngineOptions& opts = {});

/// t =a=>_c mu_t with mu L(R) mu_t, over all transitions.
bool has_weak_combined(const ProbAutomaton& pa, State t, Action a, const Distribution& mu,
                       const Partition& part, const EngineOptions& opts = {});

/// As above, but the scheduler may only pick transitions from `allowed`.
bool has_allowed_weak(const ProbAutomaton& pa, State t, Action a, const Distribution& mu,
                      const std::vector<TransitionId>& allowed, const Partition& part,
                      const EngineOptions& opts = {});

/// The automaton extended with a fresh state `#h` and the transition h -tau-> gamma.
struct HyperExtension {
    ProbAutomaton automaton;
    State fresh = 0;
    TransitionId fresh_transition = 0;
    std::vector<TransitionId> allowed;
    Partition partition;
};

inline constexpr const char* kFreshStateName = "#h";

HyperExtension extend_for_hyper(const ProbAutomaton& pa, const Distribution& gamma,
                                const std::vector<TransitionId>& allowed, const Partition& part);

/// gamma =a=>_c mu_t (allowed hyper-transition) with mu L(R) mu_t.
bool has_hyper(const ProbAutomaton& pa, const Distribution& gamma, Action a, const Distribution& mu,
               const std::vector<TransitionId>& allowed, const Partition& part,
               const EngineOptions& opts = {});

/// Reads the determinate scheduler off a solution: at every (state, stage) with
/// positive inflow, each transition gets its gadget entry flow over the inflow
/// and stopping gets the class-arc flow over the inflow.
DeterminateScheduler extract_scheduler(const FlowNetwork& net, const Solution& sol);

struct MatchSide {
    WeakSource source;
    Action action = kTau;
    std::optional<std::vector<TransitionId>> allowed;  ///< all transitions when absent
};

/// Common class-mass vector p (one entry per block of `part`) reachable by both
/// sides, if any.
std::optional<std::vector<Rational>> match_equiv(const ProbAutomaton& pa, const MatchSide& left,
                                                 const MatchSide& right, const Partition& part,
                                                 const EngineOptions& opts = {});

}  // namespace wpb
