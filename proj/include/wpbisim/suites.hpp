#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "wpbisim/generator.hpp"
#include "wpbisim/validate.hpp"

namespace wpb {

struct SuiteConfig {
    /// Instance i uses seed + i.
    std::uint64_t seed = 1;
    std::size_t instances = 200;
    /// Weak-transition queries drawn per instance.
    std::size_t queries = 8;
    GenConfig gen;
    SolverFault fault = SolverFault::None;
};

struct Counterexample {
    std::uint64_t seed = 0;
    std::string message;
};

struct SuiteReport {
    std::string name;
    std::size_t instances = 0;
    std::size_t checks = 0;
    std::vector<Counterexample> failures;
};

struct HarnessReport {
    std::vector<SuiteReport> suites;
    std::uint64_t first_seed = 0;
    std::uint64_t last_seed = 0;

    bool ok() const;
    std::string str() const;
};

/// Runs the cross-check suites:
///   (a) certify round-trip and path enumeration of acyclic witnesses,
///   (b) LP optimizations on/off give the same status and optimum,
///   (c) relevant-transition restriction on/off gives the same quotient,
///   (d) allowed set = all transitions agrees with the plain query,
///   (e) hyper-transition via a fresh state agrees with per-state composition,
///   (f) the final quotient admits no split and is symmetric and reflexive.
HarnessReport run_suites(const SuiteConfig& cfg);

/// Final-state masses and misplaced mass collected by following every finite
/// path of an acyclic chain; nullopt if the chain has a cycle.
struct PathSum {
    std::map<State, Rational> absorbed;
    Rational misplaced;
};
std::optional<PathSum> enumerate_paths(const StagedChain& chain);

/// gamma =a=>_c mu up to `part`, decided by one LP that joins an independent
/// weak-transition network per support state with free class masses q^s and
/// rows sum_s gamma(s) q^s_C = mu(C).
bool hyper_by_composition(const ProbAutomaton& pa, const Distribution& gamma, Action a, const Distribution& mu,
                          const std::vector<TransitionId>& allowed, const Partition& part);

}  // namespace wpb
