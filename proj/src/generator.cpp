#include "wpbisim/generator.hpp"

#include <algorithm>
#include <string>

namespace wpb {

Distribution gen_distribution(Rng& rng, const ProbAutomaton& pa, std::size_t max_support, std::size_t max_weight) {
    const std::size_t n = pa.num_states();
    const std::size_t k = rng.between(1, std::min(std::max<std::size_t>(max_support, 1), n));
    std::vector<State> pool(n);
    for (State s = 0; s < n; ++s) pool[s] = s;
    // Partial Fisher-Yates for k distinct states.
    for (std::size_t i = 0; i < k; ++i) std::swap(pool[i], pool[i + rng.below(n - i)]);

    std::vector<long long> weights(k);
    long long total = 0;
    for (auto& w : weights) {
        w = static_cast<long long>(rng.between(1, std::max<std::size_t>(max_weight, 1)));
        total += w;
    }
    std::map<State, Rational> entries;
    for (std::size_t i = 0; i < k; ++i) entries[pool[i]] = Rational(weights[i], total);
    return Distribution(std::move(entries));
}

ProbAutomaton gen_pa(const GenConfig& cfg) {
    Rng rng(cfg.seed);
    ProbAutomaton pa("gen" + std::to_string(cfg.seed));
    const std::size_t n = cfg.exact_states ? std::max<std::size_t>(cfg.max_states, 1)
                                           : rng.between(1, std::max<std::size_t>(cfg.max_states, 1));
    for (std::size_t i = 0; i < n; ++i) pa.add_state("s" + std::to_string(i));
    for (std::size_t i = 0; i < cfg.external_actions; ++i)
        pa.add_action(i < 26 ? std::string(1, static_cast<char>('a' + i)) : "x" + std::to_string(i));
    pa.set_start(0);

    const std::size_t m = rng.between(std::min(cfg.min_transitions, cfg.max_transitions), cfg.max_transitions);
    for (std::size_t i = 0; i < m; ++i) {
        const State source = rng.below(n);
        const Action action = rng.below(pa.num_actions());
        pa.add_transition(source, action, gen_distribution(rng, pa, cfg.max_support, cfg.max_weight));
    }
    return pa;
}

Partition gen_partition(Rng& rng, std::size_t n, std::size_t max_blocks) {
    const std::size_t k = rng.between(1, std::min(std::max<std::size_t>(max_blocks, 1), n));
    std::vector<std::vector<State>> blocks(k);
    // The first k states seed one block each so none is empty.
    std::vector<State> order(n);
    for (State s = 0; s < n; ++s) order[s] = s;
    for (std::size_t i = 0; i + 1 < n; ++i) std::swap(order[i], order[i + rng.below(n - i)]);
    for (std::size_t i = 0; i < n; ++i) blocks[i < k ? i : rng.below(k)].push_back(order[i]);
    return Partition(std::move(blocks), n);
}

}  // namespace wpb
