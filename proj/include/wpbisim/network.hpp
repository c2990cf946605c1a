#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "wpbisim/automaton.hpp"

namespace wpb {

/// Vertex families of the network graph, in the order they are numbered.
/// TrState/TrStateAfter stand for v^tr and v^tr_a, StateAfter for v_a.
enum class VertexKind : std::uint8_t { Source, Sink, State, TrState, StateAfter, TrStateAfter, Class };

struct Vertex {
    VertexKind kind = VertexKind::Source;
    State state = 0;
    TransitionId transition = 0;
    std::size_t block = 0;
};

struct Arc {
    std::size_t from = 0;
    std::size_t to = 0;
    friend bool operator==(const Arc&, const Arc&) = default;
};

/// Which copy of the graph a transition gadget lives in.
enum class GadgetStage : std::uint8_t {
    Plain,     ///< tau transition before the visible action (v -> v^tr -> v')
    After,     ///< tau transition after the visible action (v_a -> v^tr_a -> v'_a)
    Crossing,  ///< the visible transition itself (v -> v^tr_a -> v'_a)
};

/// One probabilistic choice: an entry arc into the transition vertex and one exit
/// arc per support state, each weighted by the target probability.
struct Gadget {
    TransitionId transition = 0;
    GadgetStage stage = GadgetStage::Plain;
    std::size_t entry_arc = 0;
    std::vector<std::pair<std::size_t, Rational>> exits;
};

/// The network graph N(t, a, mu, A, R). Vertices are numbered family by family
/// (source, sink, S, S^tr, S_a, S^tr_a, classes) so that sorting arcs by vertex
/// index is the lexicographic (kind, ids) order.
class FlowNetwork {
public:
    State query_state() const { return state_; }
    Action query_action() const { return action_; }
    bool is_tau() const { return action_ == kTau; }
    const Distribution& query_target() const { return target_; }
    const std::vector<TransitionId>& allowed() const { return allowed_; }
    const Partition& partition() const { return partition_; }

    const std::vector<Vertex>& vertices() const { return vertices_; }
    const std::vector<Arc>& arcs() const { return arcs_; }
    const std::vector<Gadget>& gadgets() const { return gadgets_; }
    const std::vector<Rational>& class_mass() const { return class_mass_; }

    std::optional<std::size_t> arc_index(std::size_t from, std::size_t to) const;
    const std::vector<std::size_t>& in_arcs(std::size_t vertex) const { return in_arcs_.at(vertex); }
    const std::vector<std::size_t>& out_arcs(std::size_t vertex) const { return out_arcs_.at(vertex); }
    bool isolated(std::size_t vertex) const { return in_arcs_.at(vertex).empty() && out_arcs_.at(vertex).empty(); }

    static constexpr std::size_t source() { return 0; }
    static constexpr std::size_t sink() { return 1; }
    std::size_t state_vertex(State v) const { return 2 + v; }
    std::optional<std::size_t> transition_vertex(TransitionId tr) const;
    /// Only for a != tau.
    std::size_t after_vertex(State v) const;
    std::optional<std::size_t> transition_after_vertex(TransitionId tr) const;
    std::size_t class_vertex(std::size_t block) const { return class_offset_ + block; }

    std::size_t num_states() const { return num_states_; }

private:
    friend FlowNetwork build_network(const ProbAutomaton&, State, Action, const Distribution&,
                                     const std::vector<TransitionId>&, const Partition&);

    State state_ = 0;
    Action action_ = kTau;
    Distribution target_;
    std::vector<TransitionId> allowed_;
    Partition partition_;

    std::size_t num_states_ = 0;
    std::vector<Vertex> vertices_;
    std::vector<Arc> arcs_;
    std::vector<Gadget> gadgets_;
    std::vector<Rational> class_mass_;
    std::vector<std::vector<std::size_t>> in_arcs_;
    std::vector<std::vector<std::size_t>> out_arcs_;
    std::vector<std::optional<std::size_t>> tr_vertex_;
    std::vector<std::optional<std::size_t>> tr_after_vertex_;
    std::size_t after_offset_ = 0;
    std::size_t class_offset_ = 0;
};

/// Builds N(t, a, mu, A, R). `allowed` lists transition ids (any order, no
/// duplicates); `part` must cover exactly the states of `pa`.
FlowNetwork build_network(const ProbAutomaton& pa, State t, Action a, const Distribution& mu,
                          const std::vector<TransitionId>& allowed, const Partition& part);

/// `src`, `snk`, `S(name)`, `T(name,#id)`, `Sa(name)`, `Ta(name,#id)`, `C(#block)`.
std::string vertex_label(const FlowNetwork& net, const ProbAutomaton& pa, std::size_t vertex);

/// One `FROM -> TO` line per arc, in arc order.
std::string dump_network(const FlowNetwork& net, const ProbAutomaton& pa);

}  // namespace wpb
