#include "wpbisim/lp.hpp"

#include <algorithm>
#include <sstream>

#include "wpbisim/errors.hpp"

namespace wpb {

std::size_t LinearProgram::nonneg_count() const {
    return static_cast<std::size_t>(std::count(nonneg.begin(), nonneg.end(), true));
}

std::string LinearProgram::var_name(std::size_t var) const {
    if (var < var_names.size() && !var_names[var].empty()) return var_names[var];
    return "x" + std::to_string(var);
}

namespace {

Constraint make_row(std::vector<Term> terms, Rational rhs, RowKind kind, std::size_t tag) {
    std::sort(terms.begin(), terms.end(), [](const Term& a, const Term& b) { return a.var < b.var; });
    std::vector<Term> merged;
    for (auto& t : terms) {
        if (!merged.empty() && merged.back().var == t.var)
            merged.back().coef += t.coef;
        else
            merged.push_back(std::move(t));
    }
    std::erase_if(merged, [](const Term& t) { return t.coef.is_zero(); });
    return Constraint{std::move(merged), Relation::Equal, std::move(rhs), kind, tag};
}

RowKind balance_kind(GadgetStage stage) {
    switch (stage) {
        case GadgetStage::Plain: return RowKind::BalancePlain;
        case GadgetStage::After: return RowKind::BalanceAfter;
        case GadgetStage::Crossing: return RowKind::BalanceCrossing;
    }
    return RowKind::Other;
}

}  // namespace

LinearProgram build_lp(const FlowNetwork& net, const ProbAutomaton* pa) {
    LinearProgram lp;
    const std::size_t m = net.arcs().size();
    lp.nonneg.assign(m, true);
    lp.class_signature = net.partition().block_map();
    if (pa) {
        lp.var_names.reserve(m);
        for (const Arc& arc : net.arcs())
            lp.var_names.push_back("f[" + vertex_label(net, *pa, arc.from) + "," +
                                   vertex_label(net, *pa, arc.to) + "]");
    }

    const auto arc = [&](std::size_t from, std::size_t to) {
        auto idx = net.arc_index(from, to);
        if (!idx) throw SoundnessError("expected arc missing from network");
        return *idx;
    };

    lp.rows.push_back(make_row({{arc(FlowNetwork::source(), net.state_vertex(net.query_state())), 1}},
                               1, RowKind::SourceUnit, 0));

    for (std::size_t c = 0; c < net.partition().size(); ++c)
        lp.rows.push_back(make_row({{arc(net.class_vertex(c), FlowNetwork::sink()), 1}},
                                   net.class_mass()[c], RowKind::ClassMass, c));

    for (std::size_t v = 2; v < net.vertices().size(); ++v) {
        if (net.isolated(v)) continue;
        std::vector<Term> terms;
        for (std::size_t a : net.in_arcs(v)) terms.push_back({a, 1});
        for (std::size_t a : net.out_arcs(v)) terms.push_back({a, -1});
        lp.rows.push_back(make_row(std::move(terms), 0, RowKind::Conservation, v));
    }

    for (std::size_t g = 0; g < net.gadgets().size(); ++g) {
        const Gadget& gadget = net.gadgets()[g];
        for (const auto& [exit, p] : gadget.exits)
            lp.rows.push_back(make_row({{exit, 1}, {gadget.entry_arc, -p}}, 0,
                                       balance_kind(gadget.stage), g));
    }

    lp.objective.reserve(m);
    for (std::size_t i = 0; i < m; ++i) lp.objective.push_back({i, 1});
    return lp;
}

LinearProgram apply_optimizations(const LinearProgram& lp, const FlowNetwork& net) {
    if (lp.num_vars() != net.arcs().size())
        throw DomainError("linear program does not belong to this network");
    LinearProgram out = lp;
    for (const Gadget& g : net.gadgets())
        for (const auto& [exit, p] : g.exits) out.nonneg[exit] = false;
    for (std::size_t c = 0; c < net.partition().size(); ++c)
        if (auto idx = net.arc_index(net.class_vertex(c), FlowNetwork::sink())) out.nonneg[*idx] = false;
    std::erase_if(out.rows, [&](const Constraint& row) {
        if (row.kind != RowKind::Conservation) return false;
        const auto kind = net.vertices().at(row.tag).kind;
        return kind == VertexKind::TrState || kind == VertexKind::TrStateAfter;
    });
    return out;
}

LinearProgram build_joint_lp(const LinearProgram& lp1, const LinearProgram& lp2,
                             const Partition& part) {
    if (lp1.class_signature != part.block_map() || lp2.class_signature != part.block_map())
        throw DomainError("joint problem requires both problems over the same partition");

    LinearProgram out;
    const std::size_t shift = lp1.num_vars();
    const std::size_t base = shift + lp2.num_vars();
    out.nonneg = lp1.nonneg;
    out.nonneg.insert(out.nonneg.end(), lp2.nonneg.begin(), lp2.nonneg.end());
    out.nonneg.resize(base + part.size(), true);
    out.class_signature = part.block_map();

    const bool named = !lp1.var_names.empty() || !lp2.var_names.empty();
    if (named) {
        for (std::size_t i = 0; i < lp1.num_vars(); ++i) out.var_names.push_back("l." + lp1.var_name(i));
        for (std::size_t i = 0; i < lp2.num_vars(); ++i) out.var_names.push_back("r." + lp2.var_name(i));
        for (std::size_t c = 0; c < part.size(); ++c) out.var_names.push_back("p[C(#" + std::to_string(c) + ")]");
    }
    for (std::size_t c = 0; c < part.size(); ++c) out.mass_vars.push_back(base + c);

    auto absorb = [&](const LinearProgram& lp, std::size_t offset) {
        std::vector<bool> seen(part.size(), false);
        for (const Constraint& row : lp.rows) {
            Constraint copy = row;
            for (Term& t : copy.terms) t.var += offset;
            if (row.kind == RowKind::ClassMass) {
                if (row.tag >= part.size()) throw DomainError("class row outside the partition");
                seen[row.tag] = true;
                copy.terms.push_back({base + row.tag, -1});
                copy.rhs = 0;
                copy.kind = RowKind::JointClass;
            }
            out.rows.push_back(std::move(copy));
        }
        if (std::find(seen.begin(), seen.end(), false) != seen.end())
            throw DomainError("problem lacks a class row for some block");
        for (const Term& t : lp.objective) out.objective.push_back({t.var + offset, t.coef});
    };
    absorb(lp1, 0);
    absorb(lp2, shift);

    Constraint sum;
    for (std::size_t c = 0; c < part.size(); ++c) sum.terms.push_back({base + c, 1});
    sum.rhs = 1;
    sum.kind = RowKind::JointSum;
    out.rows.push_back(std::move(sum));
    return out;
}

std::string dump_lp(const LinearProgram& lp) {
    std::ostringstream os;
    auto terms = [&](const std::vector<Term>& ts) {
        for (std::size_t i = 0; i < ts.size(); ++i) {
            if (i) os << ' ';
            os << (ts[i].coef.sign() < 0 ? "-" : "+");
            const Rational mag = ts[i].coef.sign() < 0 ? -ts[i].coef : ts[i].coef;
            os << mag << '*' << lp.var_name(ts[i].var);
        }
    };
    os << "min: ";
    terms(lp.objective);
    os << '\n';
    for (const Constraint& row : lp.rows) {
        terms(row.terms);
        os << (row.relation == Relation::Equal ? " = " : " >= ") << row.rhs << '\n';
    }
    for (std::size_t v = 0; v < lp.num_vars(); ++v)
        if (lp.nonneg[v]) os << "+1*" << lp.var_name(v) << " >= 0\n";
    return os.str();
}

}  // namespace wpb
