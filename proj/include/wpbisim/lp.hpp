#pragma once

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "wpbisim/network.hpp"

namespace wpb {

enum class Relation : std::uint8_t { Equal, GreaterEqual };

/// Origin of a row; used by the optimizer, the joint construction and diagnostics.
enum class RowKind : std::uint8_t {
    SourceUnit,       ///< f(src, t) = 1
    ClassMass,        ///< f(C, snk) = mu(C); `tag` is the block
    Conservation,     ///< inflow - outflow = 0; `tag` is the vertex
    BalancePlain,     ///< tau gadget before the action; `tag` is the gadget
    BalanceAfter,     ///< tau gadget after the action
    BalanceCrossing,  ///< the visible transition
    JointClass,       ///< f(C, snk) - p_C = 0 in a joint problem; `tag` is the block
    JointSum,         ///< sum of p_C = 1
    Other,
};

struct Term {
    std::size_t var = 0;
    Rational coef;
};

struct Constraint {
    std::vector<Term> terms;  ///< sorted by variable, no zero coefficients
    Relation relation = Relation::Equal;
    Rational rhs;
    RowKind kind = RowKind::Other;
    std::size_t tag = 0;
};

/// min objective . x subject to the rows; variables flagged `nonneg` are >= 0,
/// the others are free.
struct LinearProgram {
    std::vector<bool> nonneg;
    std::vector<Constraint> rows;
    std::vector<Term> objective;
    std::vector<std::string> var_names;  ///< empty unless names were requested
    std::vector<std::size_t> class_signature;  ///< block map of the partition behind ClassMass rows
    std::vector<std::size_t> mass_vars;  ///< p_C variables of a joint problem

    std::size_t num_vars() const { return nonneg.size(); }
    std::size_t nonneg_count() const;
    /// Equality/inequality rows plus one per nonnegativity bound.
    std::size_t constraint_count() const { return rows.size() + nonneg_count(); }
    std::string var_name(std::size_t var) const;
};

/// L(t, a, mu, A, R): one variable per arc (same index), conservation at every
/// non-isolated inner vertex, the balancing families and min sum of all flows.
/// Passing `pa` names the variables after their arcs.
LinearProgram build_lp(const FlowNetwork& net, const ProbAutomaton* pa = nullptr);

/// Drops bounds implied by balancing rows and class rows, and conservation rows
/// at transition vertices. The feasible region is unchanged.
LinearProgram apply_optimizations(const LinearProgram& lp, const FlowNetwork& net);

/// Joint problem: the two problems side by side (variables of `lp2` shifted), plus
/// p_C >= 0 with sum 1 replacing every class mass.
LinearProgram build_joint_lp(const LinearProgram& lp1, const LinearProgram& lp2,
                             const Partition& part);

/// `min: ...` first, then one `+c*var ... = rhs` row per line, then bounds.
std::string dump_lp(const LinearProgram& lp);

}  // namespace wpb
