#pragma once

#include <cstddef>

#include "wpbisim/simplex.hpp"

namespace wpb {

/// Running totals over every LP generated while answering a request.
struct Stats {
    std::size_t problems = 0;
    std::size_t vertices = 0;
    std::size_t arcs = 0;
    std::size_t variables = 0;
    std::size_t rows = 0;
    std::size_t pivots = 0;

    void record(const FlowNetwork& net, const LinearProgram& lp, const Solution& sol) {
        ++problems;
        vertices += net.vertices().size();
        arcs += net.arcs().size();
        variables += lp.num_vars();
        rows += lp.constraint_count();
        pivots += sol.pivots;
    }
};

struct EngineOptions {
    /// Restrict plain weak-transition queries to transitions reachable from the
    /// query state through tau and the query action.
    bool restrict_relevant = true;
    /// Apply the redundant-row/bound removal to every generated LP.
    bool optimize_lp = true;
    SolverFault fault = SolverFault::None;
    Stats* stats = nullptr;
};

}  // namespace wpb
