#pragma once

#include <cstdint>
#include <vector>

#include "wpbisim/lp.hpp"

namespace wpb {

enum class SolveMode : std::uint8_t { FeasibilityOnly, MinimizeObjective };
enum class SolveStatus : std::uint8_t { Feasible, Infeasible, OptimalFound };

/// Test hook simulating a broken solver. `DropLastRow` ignores the final row and
/// skips the self-check, so wrong answers escape to the caller.
enum class SolverFault : std::uint8_t { None, DropLastRow };

struct Solution {
    SolveStatus status = SolveStatus::Infeasible;
    std::vector<Rational> values;  ///< one per variable; empty when infeasible
    Rational objective;
    std::size_t pivots = 0;

    bool feasible() const { return status != SolveStatus::Infeasible; }
};

/// Exact two-phase simplex with Bland's rule, after a presolve that fixes forced
/// variables and eliminates free ones. Every non-infeasible answer is re-checked
/// against all rows; a violation raises SoundnessError.
Solution solve(const LinearProgram& lp, SolveMode mode, SolverFault fault = SolverFault::None);

/// True iff `values` satisfies every row and bound of `lp` exactly.
bool satisfies(const LinearProgram& lp, const std::vector<Rational>& values);

Rational objective_value(const LinearProgram& lp, const std::vector<Rational>& values);

}  // namespace wpb
