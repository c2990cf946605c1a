#pragma once

#include <cstdint>
#include <random>

#include "wpbisim/automaton.hpp"

namespace wpb {

struct GenConfig {
    std::uint64_t seed = 1;
    std::size_t max_states = 6;
    std::size_t min_transitions = 0;
    std::size_t max_transitions = 8;
    std::size_t max_support = 3;
    std::size_t external_actions = 2;
    /// Probabilities are normalized integer weights in 1..max_weight.
    std::size_t max_weight = 12;
    /// Use exactly max_states states instead of a random count.
    bool exact_states = false;
};

/// Small deterministic PRNG front end. Draws use plain modulo reduction so a
/// seed produces the same automaton on every platform.
class Rng {
public:
    explicit Rng(std::uint64_t seed) : engine_(seed) {}
    /// Uniform-ish integer in [0, bound).
    std::size_t below(std::size_t bound) { return bound == 0 ? 0 : engine_() % bound; }
    std::size_t between(std::size_t lo, std::size_t hi) { return lo + below(hi - lo + 1); }

private:
    std::mt19937_64 engine_;
};

/// Random automaton with states s0.., external actions a, b, ...; every
/// target distribution is built from random positive weights normalized exactly.
ProbAutomaton gen_pa(const GenConfig& cfg);

/// Random full distribution over at most `max_support` states of `pa`.
Distribution gen_distribution(Rng& rng, const ProbAutomaton& pa, std::size_t max_support, std::size_t max_weight);

/// Random partition of `n` states into at most `max_blocks` blocks.
Partition gen_partition(Rng& rng, std::size_t n, std::size_t max_blocks);

}  // namespace wpb
