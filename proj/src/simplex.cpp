#include "wpbisim/simplex.hpp"

#include <algorithm>
#include <deque>
#include <map>
#include <optional>

#include "wpbisim/errors.hpp"

namespace wpb {

bool satisfies(const LinearProgram& lp, const std::vector<Rational>& values) {
    if (values.size() != lp.num_vars()) return false;
    for (std::size_t v = 0; v < lp.num_vars(); ++v)
        if (lp.nonneg[v] && values[v].sign() < 0) return false;
    for (const Constraint& row : lp.rows) {
        Rational lhs;
        for (const Term& t : row.terms) lhs += t.coef * values[t.var];
        if (row.relation == Relation::Equal ? lhs != row.rhs : lhs < row.rhs) return false;
    }
    return true;
}

Rational objective_value(const LinearProgram& lp, const std::vector<Rational>& values) {
    Rational total;
    for (const Term& t : lp.objective) total += t.coef * values.at(t.var);
    return total;
}

namespace {

using SparseRow = std::map<std::size_t, Rational>;

struct Infeasible {};

/// Reductions applied before the tableau is built: rows with one variable fix
/// it, zero rows of same-signed nonnegative terms fix all of them to 0, and free
/// variables are solved for and substituted away. Each step is exact.
class Presolver {
public:
    Presolver(const LinearProgram& lp, std::size_t row_limit) : nonneg_(lp.nonneg) {
        const std::size_t n = lp.num_vars();
        fixed_.assign(n, std::nullopt);
        eliminated_.assign(n, false);
        rows_of_.assign(n, {});
        for (std::size_t r = 0; r < row_limit; ++r) {
            const Constraint& c = lp.rows[r];
            SparseRow row;
            for (const Term& t : c.terms) row[t.var] += t.coef;
            std::erase_if(row, [](const auto& kv) { return kv.second.is_zero(); });
            for (const auto& [v, coef] : row) rows_of_[v].push_back(rows_.size());
            rows_.push_back(std::move(row));
            rhs_.push_back(c.rhs);
            equal_.push_back(c.relation == Relation::Equal);
            active_.push_back(true);
        }
        for (const Term& t : lp.objective) objective_[t.var] += t.coef;
    }

    /// Returns false when the presolve proves infeasibility.
    bool run() {
        try {
            for (std::size_t r = 0; r < rows_.size(); ++r) queue_.push_back(r);
            propagate();
            for (std::size_t v = 0; v < nonneg_.size(); ++v) {
                if (nonneg_[v] || fixed_[v] || eliminated_[v]) continue;
                if (eliminate_free(v)) propagate();
            }
        } catch (const Infeasible&) {
            return false;
        }
        return true;
    }

    std::vector<std::size_t> active_rows() const {
        std::vector<std::size_t> out;
        for (std::size_t r = 0; r < rows_.size(); ++r)
            if (active_[r]) out.push_back(r);
        return out;
    }

    const SparseRow& row(std::size_t r) const { return rows_[r]; }
    const Rational& rhs(std::size_t r) const { return rhs_[r]; }
    bool equal(std::size_t r) const { return equal_[r]; }
    bool nonneg(std::size_t v) const { return nonneg_[v]; }
    bool settled(std::size_t v) const { return fixed_[v].has_value() || eliminated_[v]; }
    const SparseRow& objective() const { return objective_; }

    /// Fills fixed values and back-substitutes eliminated variables.
    void complete(std::vector<Rational>& values) const {
        for (std::size_t v = 0; v < values.size(); ++v)
            if (fixed_[v]) values[v] = *fixed_[v];
        for (auto it = eliminations_.rbegin(); it != eliminations_.rend(); ++it) {
            Rational value = it->rhs;
            for (const auto& [v, coef] : it->others) value -= coef * values[v];
            values[it->var] = value / it->coef;
        }
    }

private:
    struct Elimination {
        std::size_t var;
        Rational coef;
        SparseRow others;
        Rational rhs;
    };

    void fix(std::size_t v, const Rational& value) {
        if (nonneg_[v] && value.sign() < 0) throw Infeasible{};
        fixed_[v] = value;
        for (std::size_t r : rows_of_[v]) {
            auto it = rows_[r].find(v);
            if (!active_[r] || it == rows_[r].end()) continue;
            rhs_[r] -= it->second * value;
            rows_[r].erase(it);
            queue_.push_back(r);
        }
        objective_.erase(v);
    }

    void propagate() {
        while (!queue_.empty()) {
            const std::size_t r = queue_.front();
            queue_.pop_front();
            if (!active_[r]) continue;
            SparseRow& row = rows_[r];
            if (row.empty()) {
                if (equal_[r] ? !rhs_[r].is_zero() : rhs_[r].sign() > 0) throw Infeasible{};
                active_[r] = false;
                continue;
            }
            if (!equal_[r]) continue;
            if (row.size() == 1) {
                const auto [v, coef] = *row.begin();
                active_[r] = false;
                fix(v, rhs_[r] / coef);
                continue;
            }
            const int sign = row.begin()->second.sign();
            const bool uniform = std::all_of(row.begin(), row.end(), [&](const auto& kv) {
                return nonneg_[kv.first] && kv.second.sign() == sign;
            });
            if (!uniform) continue;
            if (rhs_[r].is_zero()) {
                active_[r] = false;
                std::vector<std::size_t> vars;
                for (const auto& [v, coef] : row) vars.push_back(v);
                for (std::size_t v : vars) fix(v, Rational(0));
            } else if (rhs_[r].sign() != sign) {
                throw Infeasible{};
            }
        }
    }

    /// Solves one equality row for the free variable `v` and substitutes it
    /// everywhere else. Returns false when `v` occurs in no equality row.
    bool eliminate_free(std::size_t v) {
        std::optional<std::size_t> pick;
        for (std::size_t r : rows_of_[v]) {
            if (!active_[r] || !equal_[r] || !rows_[r].contains(v)) continue;
            if (!pick || rows_[r].size() < rows_[*pick].size()) pick = r;
        }
        if (!pick) return false;
        const std::size_t r = *pick;
        active_[r] = false;
        Elimination e{v, rows_[r].at(v), rows_[r], rhs_[r]};
        e.others.erase(v);
        eliminated_[v] = true;

        // x_v = (rhs - sum others) / coef
        auto substitute = [&](SparseRow& target, Rational* target_rhs, std::size_t target_row) {
            auto it = target.find(v);
            if (it == target.end()) return;
            const Rational factor = it->second / e.coef;
            target.erase(it);
            for (const auto& [w, c] : e.others) {
                Rational& slot = target[w];
                const bool was_zero = slot.is_zero();
                slot -= factor * c;
                if (slot.is_zero()) {
                    target.erase(w);
                } else if (was_zero && target_row != static_cast<std::size_t>(-1)) {
                    rows_of_[w].push_back(target_row);
                }
            }
            if (target_rhs) *target_rhs -= factor * e.rhs;
        };
        for (std::size_t other : rows_of_[v]) {
            if (!active_[other]) continue;
            substitute(rows_[other], &rhs_[other], other);
            queue_.push_back(other);
        }
        substitute(objective_, nullptr, static_cast<std::size_t>(-1));
        eliminations_.push_back(std::move(e));
        return true;
    }

    std::vector<bool> nonneg_;
    std::vector<SparseRow> rows_;
    std::vector<Rational> rhs_;
    std::vector<bool> equal_;
    std::vector<bool> active_;
    std::vector<std::vector<std::size_t>> rows_of_;
    std::vector<std::optional<Rational>> fixed_;
    std::vector<bool> eliminated_;
    std::vector<Elimination> eliminations_;
    SparseRow objective_;
    std::deque<std::size_t> queue_;
};

/// Dense tableau over exact rationals. Columns: structural, then artificials;
/// the last entry of every row is the right-hand side.
class Tableau {
public:
    Tableau(std::vector<std::vector<Rational>> rows, std::size_t structural)
        : rows_(std::move(rows)), structural_(structural) {
        const std::size_t m = rows_.size();
        width_ = structural_ + m + 1;
        for (std::size_t i = 0; i < m; ++i) {
            rows_[i].resize(width_);
            rows_[i][width_ - 1] = rows_[i][structural_];
            rows_[i][structural_] = Rational(0);
            rows_[i][structural_ + i] = Rational(1);
            basis_.push_back(structural_ + i);
        }
    }

    std::size_t pivots() const { return pivots_; }

    /// Phase 1; returns false if the artificial sum cannot reach zero.
    bool find_feasible() {
        std::vector<Rational> cost(width_ - 1);
        for (std::size_t i = 0; i < rows_.size(); ++i) cost[structural_ + i] = 1;
        optimize(cost, width_ - 1);
        for (std::size_t i = 0; i < rows_.size(); ++i)
            if (basis_[i] >= structural_ && !rows_[i][width_ - 1].is_zero()) return false;
        drive_out_artificials();
        return true;
    }

    /// Phase 2 over the structural columns only.
    void minimize(const std::vector<Rational>& structural_cost) {
        std::vector<Rational> cost(width_ - 1);
        std::copy(structural_cost.begin(), structural_cost.end(), cost.begin());
        if (!optimize(cost, structural_)) throw SoundnessError("linear program is unbounded");
    }

    std::vector<Rational> structural_values() const {
        std::vector<Rational> x(structural_);
        for (std::size_t i = 0; i < rows_.size(); ++i)
            if (basis_[i] < structural_) x[basis_[i]] = rows_[i][width_ - 1];
        return x;
    }

private:
    /// Bland's rule over columns [0, limit). Returns false on unboundedness.
    bool optimize(const std::vector<Rational>& cost, std::size_t limit) {
        std::vector<Rational> reduced = cost;
        reduced.push_back(Rational(0));
        for (std::size_t i = 0; i < rows_.size(); ++i) {
            const Rational& cb = cost[basis_[i]];
            if (cb.is_zero()) continue;
            for (std::size_t j = 0; j < width_; ++j)
                if (!rows_[i][j].is_zero()) reduced[j] -= cb * rows_[i][j];
        }
        for (;;) {
            std::optional<std::size_t> entering;
            for (std::size_t j = 0; j < limit; ++j) {
                if (reduced[j].sign() < 0) {
                    entering = j;
                    break;
                }
            }
            if (!entering) return true;
            const std::size_t col = *entering;
            std::optional<std::size_t> leaving;
            Rational best;
            for (std::size_t i = 0; i < rows_.size(); ++i) {
                if (rows_[i][col].sign() <= 0) continue;
                Rational ratio = rows_[i][width_ - 1] / rows_[i][col];
                if (!leaving || ratio < best || (ratio == best && basis_[i] < basis_[*leaving])) {
                    leaving = i;
                    best = std::move(ratio);
                }
            }
            if (!leaving) return false;
            pivot(*leaving, col, &reduced);
        }
    }

    void pivot(std::size_t r, std::size_t c, std::vector<Rational>* reduced) {
        ++pivots_;
        std::vector<Rational>& prow = rows_[r];
        const Rational inv = Rational(1) / prow[c];
        std::vector<std::size_t> nz;
        for (std::size_t j = 0; j < width_; ++j) {
            if (prow[j].is_zero()) continue;
            prow[j] *= inv;
            nz.push_back(j);
        }
        auto eliminate = [&](std::vector<Rational>& row) {
            if (row[c].is_zero()) return;
            const Rational factor = row[c];
            for (std::size_t j : nz) row[j] -= factor * prow[j];
        };
        for (std::size_t i = 0; i < rows_.size(); ++i)
            if (i != r) eliminate(rows_[i]);
        if (reduced) eliminate(*reduced);
        basis_[r] = c;
    }

    void drive_out_artificials() {
        for (std::size_t i = 0; i < rows_.size();) {
            if (basis_[i] < structural_) {
                ++i;
                continue;
            }
            std::optional<std::size_t> col;
            for (std::size_t j = 0; j < structural_; ++j) {
                if (!rows_[i][j].is_zero()) {
                    col = j;
                    break;
                }
            }
            if (col) {
                pivot(i, *col, nullptr);
                ++i;
            } else {
                // Redundant row: every structural coefficient vanished.
                rows_.erase(rows_.begin() + static_cast<std::ptrdiff_t>(i));
                basis_.erase(basis_.begin() + static_cast<std::ptrdiff_t>(i));
            }
        }
    }

    std::vector<std::vector<Rational>> rows_;
    std::vector<std::size_t> basis_;
    std::size_t structural_;
    std::size_t width_ = 0;
    std::size_t pivots_ = 0;
};

}  // namespace

Solution solve(const LinearProgram& lp, SolveMode mode, SolverFault fault) {
    const bool drop_last = fault == SolverFault::DropLastRow && !lp.rows.empty();
    const std::size_t row_limit = drop_last ? lp.rows.size() - 1 : lp.rows.size();

    Solution sol;
    Presolver pre(lp, row_limit);
    if (!pre.run()) return sol;

    // Column layout: each unsettled variable gets one column, free ones a second
    // (negated) column; inequality rows get a surplus column.
    const auto active = pre.active_rows();
    std::vector<std::size_t> col_var;
    std::vector<int> col_sign;
    std::vector<std::optional<std::size_t>> pos_col(lp.num_vars()), neg_col(lp.num_vars());
    for (std::size_t r : active) {
        for (const auto& [v, coef] : pre.row(r)) {
            if (pos_col[v]) continue;
            pos_col[v] = col_var.size();
            col_var.push_back(v);
            col_sign.push_back(1);
            if (!pre.nonneg(v)) {
                neg_col[v] = col_var.size();
                col_var.push_back(v);
                col_sign.push_back(-1);
            }
        }
    }
    std::vector<std::size_t> surplus_col(active.size(), static_cast<std::size_t>(-1));
    std::size_t structural = col_var.size();
    for (std::size_t k = 0; k < active.size(); ++k)
        if (!pre.equal(active[k])) surplus_col[k] = structural++;

    // Variables no row constrains any more sit at 0, which is optimal unless
    // the objective pulls them downwards.
    for (const auto& [v, coef] : pre.objective()) {
        if (pos_col[v] || pre.settled(v) || coef.is_zero()) continue;
        if (mode == SolveMode::MinimizeObjective && (coef.sign() < 0 || !pre.nonneg(v)))
            throw SoundnessError("linear program is unbounded");
    }

    std::vector<std::vector<Rational>> rows;
    rows.reserve(active.size());
    for (std::size_t k = 0; k < active.size(); ++k) {
        const std::size_t r = active[k];
        std::vector<Rational> dense(structural + 1);
        for (const auto& [v, coef] : pre.row(r)) {
            dense[*pos_col[v]] = coef;
            if (neg_col[v]) dense[*neg_col[v]] = -coef;
        }
        if (surplus_col[k] != static_cast<std::size_t>(-1)) dense[surplus_col[k]] = -1;
        dense[structural] = pre.rhs(r);
        if (pre.rhs(r).sign() < 0)
            for (auto& x : dense) x = -x;
        rows.push_back(std::move(dense));
    }

    Tableau tab(std::move(rows), structural);
    if (!tab.find_feasible()) {
        sol.pivots = tab.pivots();
        return sol;
    }
    if (mode == SolveMode::MinimizeObjective) {
        std::vector<Rational> cost(structural);
        for (const auto& [v, coef] : pre.objective()) {
            if (pos_col[v]) cost[*pos_col[v]] = coef;
            if (neg_col[v]) cost[*neg_col[v]] = -coef;
        }
        tab.minimize(cost);
    }

    const auto x = tab.structural_values();
    sol.values.assign(lp.num_vars(), Rational(0));
    for (std::size_t j = 0; j < col_var.size(); ++j) {
        if (x[j].is_zero()) continue;
        if (col_sign[j] > 0) sol.values[col_var[j]] += x[j];
        else sol.values[col_var[j]] -= x[j];
    }
    pre.complete(sol.values);
    sol.pivots = tab.pivots();
    sol.status = mode == SolveMode::MinimizeObjective ? SolveStatus::OptimalFound : SolveStatus::Feasible;
    sol.objective = objective_value(lp, sol.values);

    if (fault == SolverFault::None && !satisfies(lp, sol.values))
        throw SoundnessError("simplex returned a point violating the linear program");
    return sol;
}

}  // namespace wpb
