#pragma once

#include <utility>
#include <vector>

#include "cks/graph.hpp"
#include "cks/rational.hpp"

namespace cks {

/// One directed arc.  `infinite` marks an uncapacitated arc; such arcs are
/// given a stand-in capacity larger than any feasible flow value, so they can
/// never lie on a minimum cut.
struct FlowArc {
    int tail = 0;
    int head = 0;
    Rat capacity;
    Rat cost;
    bool infinite = false;
};

/// Directed network with rational capacities and costs plus integer node
/// demands (negative = supply, positive = demand; must sum to zero).
struct FlowNetwork {
    int node_count = 0;
    std::vector<FlowArc> arcs;
    std::vector<long long> demand;

    explicit FlowNetwork(int nodes);
    int add_arc(int tail, int head, const Rat& capacity, const Rat& cost = Rat(0));
    int add_infinite_arc(int tail, int head, const Rat& cost = Rat(0));
    void set_demand(int node, long long amount);
};

/// Flow assignment indexed like FlowNetwork::arcs.  `min_cut` (max-flow mode
/// only) lists the arcs leaving the set of nodes reachable from the source in
/// the final residual graph; their capacities sum to `value`.
struct FlowResult {
    std::vector<Rat> flow;
    Rat value;
    Rat cost;
    std::vector<int> min_cut;
};

/// Maximum s-t flow (Dinic) together with a minimum cut.  Costs are ignored.
FlowResult max_flow(const FlowNetwork& net, int s, int t);

/// Minimum-cost flow meeting the node demands, by successive shortest paths
/// with node potentials.  Finite capacities must be integral and costs
/// non-negative; the returned flow is then integral.  Throws when the demands
/// cannot be met.
FlowResult min_cost_flow(const FlowNetwork& net);

/// Minimum total-weight vertex set Z (disjoint from {u, v}) whose removal
/// disconnects the nonadjacent vertices u and v.  Solved as a max-flow problem
/// on the split graph: entry->exit arc per vertex carrying its weight, edges
/// as uncapacitated arcs both ways.
std::pair<Rat, VertexSet> min_vertex_cut(const Graph& g, int u, int v,
                                         const std::vector<Rat>& weight);

/// Minimum-weight vertex set whose removal disconnects g: the best
/// min_vertex_cut over all nonadjacent pairs.  Throws on complete graphs.
std::pair<Rat, VertexSet> min_weight_separating_set(const Graph& g,
                                                    const std::vector<Rat>& weight);

/// Minimum-weight vertex cover of a bipartite graph, via the max-flow dual
/// (source->left and right->sink arcs carry the weights, edges are
/// uncapacitated).  The cover is pruned so that every kept vertex has at least
/// one neighbor outside the cover.
VertexSet bipartite_min_vertex_cover(const Graph& g, const VertexSet& left,
                                     const VertexSet& right,
                                     const std::vector<Rat>& weight);

}  // namespace cks
