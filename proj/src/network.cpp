#include "wpbisim/network.hpp"

#include <algorithm>
#include <sstream>

#include "wpbisim/errors.hpp"

namespace wpb {

std::optional<std::size_t> FlowNetwork::arc_index(std::size_t from, std::size_t to) const {
    const Arc key{from, to};
    auto it = std::lower_bound(arcs_.begin(), arcs_.end(), key, [](const Arc& x, const Arc& y) {
        return std::pair(x.from, x.to) < std::pair(y.from, y.to);
    });
    if (it == arcs_.end() || !(*it == key)) return std::nullopt;
    return static_cast<std::size_t>(it - arcs_.begin());
}

std::optional<std::size_t> FlowNetwork::transition_vertex(TransitionId tr) const {
    if (tr >= tr_vertex_.size()) return std::nullopt;
    return tr_vertex_[tr];
}

std::size_t FlowNetwork::after_vertex(State v) const {
    if (is_tau()) throw DomainError("no subscripted copy in a tau network");
    return after_offset_ + v;
}

std::optional<std::size_t> FlowNetwork::transition_after_vertex(TransitionId tr) const {
    if (tr >= tr_after_vertex_.size()) return std::nullopt;
    return tr_after_vertex_[tr];
}

FlowNetwork build_network(const ProbAutomaton& pa, State t, Action a, const Distribution& mu,
                          const std::vector<TransitionId>& allowed, const Partition& part) {
    const std::size_t n = pa.num_states();
    if (t >= n) throw DomainError("query state out of range");
    if (a >= pa.num_actions()) throw DomainError("query action out of range");
    for (const auto& [s, p] : mu.entries())
        if (s >= n) throw DomainError("target distribution mentions an unknown state");
    if (part.carrier_size() != n)
        throw DomainError("partition does not cover the states of the automaton");

    FlowNetwork net;
    net.state_ = t;
    net.action_ = a;
    net.target_ = mu;
    net.partition_ = part;
    net.num_states_ = n;
    net.class_mass_ = part.masses(mu);

    std::vector<bool> mask(pa.num_transitions(), false);
    for (TransitionId id : allowed) {
        if (id >= pa.num_transitions()) throw DomainError("allowed transition out of range");
        if (mask[id]) throw DomainError("allowed transition listed twice");
        mask[id] = true;
    }
    net.allowed_ = allowed;
    std::sort(net.allowed_.begin(), net.allowed_.end());

    // S^tr: allowed transitions labelled tau or a, ordered by (source, id).
    std::vector<TransitionId> gadget_trs;
    for (TransitionId id : net.allowed_) {
        const auto& tr = pa.transition(id);
        if (tr.action == kTau || tr.action == a) gadget_trs.push_back(id);
    }
    std::stable_sort(gadget_trs.begin(), gadget_trs.end(), [&](TransitionId x, TransitionId y) {
        return pa.transition(x).source < pa.transition(y).source;
    });

    const bool tau = a == kTau;
    auto& V = net.vertices_;
    V.push_back({VertexKind::Source});
    V.push_back({VertexKind::Sink});
    for (State v = 0; v < n; ++v) V.push_back({VertexKind::State, v});
    net.tr_vertex_.assign(pa.num_transitions(), std::nullopt);
    net.tr_after_vertex_.assign(pa.num_transitions(), std::nullopt);
    for (TransitionId id : gadget_trs) {
        net.tr_vertex_[id] = V.size();
        V.push_back({VertexKind::TrState, pa.transition(id).source, id});
    }
    if (!tau) {
        net.after_offset_ = V.size();
        for (State v = 0; v < n; ++v) V.push_back({VertexKind::StateAfter, v});
        for (TransitionId id : gadget_trs) {
            net.tr_after_vertex_[id] = V.size();
            V.push_back({VertexKind::TrStateAfter, pa.transition(id).source, id});
        }
    }
    net.class_offset_ = V.size();
    for (std::size_t c = 0; c < part.size(); ++c) V.push_back({VertexKind::Class, 0, 0, c});

    // Arcs are collected unsorted; gadgets refer to them by (from, to) until the
    // final order is known.
    std::vector<Arc> arcs;
    struct PendingGadget {
        TransitionId tr;
        GadgetStage stage;
        Arc entry;
        std::vector<std::pair<Arc, Rational>> exits;
    };
    std::vector<PendingGadget> pending;

    arcs.push_back({FlowNetwork::source(), net.state_vertex(t)});
    for (State v = 0; v < n; ++v) {
        const std::size_t from = tau ? net.state_vertex(v) : net.after_vertex(v);
        arcs.push_back({from, net.class_vertex(part.block_of(v))});
    }
    for (std::size_t c = 0; c < part.size(); ++c) arcs.push_back({net.class_vertex(c), FlowNetwork::sink()});

    auto add_gadget = [&](TransitionId id, GadgetStage stage, std::size_t from, std::size_t mid,
                          bool exits_after) {
        const auto& tr = pa.transition(id);
        PendingGadget g{id, stage, {from, mid}, {}};
        arcs.push_back(g.entry);
        for (const auto& [succ, p] : tr.target.entries()) {
            const Arc exit{mid, exits_after ? net.after_vertex(succ) : net.state_vertex(succ)};
            arcs.push_back(exit);
            g.exits.emplace_back(exit, p);
        }
        pending.push_back(std::move(g));
    };

    for (TransitionId id : gadget_trs) {
        const auto& tr = pa.transition(id);
        const State v = tr.source;
        if (tr.action == kTau) {
            add_gadget(id, GadgetStage::Plain, net.state_vertex(v), *net.tr_vertex_[id], false);
            if (!tau)
                add_gadget(id, GadgetStage::After, net.after_vertex(v), *net.tr_after_vertex_[id], true);
        } else {
            add_gadget(id, GadgetStage::Crossing, net.state_vertex(v), *net.tr_after_vertex_[id], true);
        }
    }

    std::sort(arcs.begin(), arcs.end(), [](const Arc& x, const Arc& y) {
        return std::pair(x.from, x.to) < std::pair(y.from, y.to);
    });
    if (std::adjacent_find(arcs.begin(), arcs.end()) != arcs.end())
        throw SoundnessError("network construction produced a duplicate arc");
    net.arcs_ = std::move(arcs);

    net.in_arcs_.assign(V.size(), {});
    net.out_arcs_.assign(V.size(), {});
    for (std::size_t i = 0; i < net.arcs_.size(); ++i) {
        net.out_arcs_[net.arcs_[i].from].push_back(i);
        net.in_arcs_[net.arcs_[i].to].push_back(i);
    }

    for (auto& g : pending) {
        Gadget out{g.tr, g.stage, *net.arc_index(g.entry.from, g.entry.to), {}};
        for (auto& [arc, p] : g.exits) out.exits.emplace_back(*net.arc_index(arc.from, arc.to), p);
        net.gadgets_.push_back(std::move(out));
    }
    return net;
}

std::string vertex_label(const FlowNetwork& net, const ProbAutomaton& pa, std::size_t vertex) {
    const Vertex& v = net.vertices().at(vertex);
    switch (v.kind) {
        case VertexKind::Source: return "src";
        case VertexKind::Sink: return "snk";
        case VertexKind::State: return "S(" + pa.state_name(v.state) + ")";
        case VertexKind::TrState:
            return "T(" + pa.state_name(v.state) + ",#" + std::to_string(v.transition) + ")";
        case VertexKind::StateAfter: return "Sa(" + pa.state_name(v.state) + ")";
        case VertexKind::TrStateAfter:
            return "Ta(" + pa.state_name(v.state) + ",#" + std::to_string(v.transition) + ")";
        case VertexKind::Class: return "C(#" + std::to_string(v.block) + ")";
    }
    return "?";
}

std::string dump_network(const FlowNetwork& net, const ProbAutomaton& pa) {
    std::ostringstream os;
    for (const Arc& arc : net.arcs())
        os << vertex_label(net, pa, arc.from) << " -> " << vertex_label(net, pa, arc.to) << '\n';
    return os.str();
}

}  // namespace wpb
