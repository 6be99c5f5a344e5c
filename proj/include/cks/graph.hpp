#pragma once

#include <utility>
#include <vector>

namespace cks {

/// Sorted list of distinct vertex ids (0-based).
using VertexSet = std::vector<int>;

/// Simple undirected graph with a fixed vertex set {0, ..., n-1}.
/// Edges are stored canonically as (u, v) with u < v, sorted lexicographically.
class Graph {
public:
    Graph(int n, std::vector<std::pair<int, int>> edges);

    int n() const { return n_; }
    int m() const { return static_cast<int>(edges_.size()); }
    const std::vector<std::pair<int, int>>& edges() const { return edges_; }
    const std::vector<int>& neighbors(int v) const { return adj_[v]; }
    int degree(int v) const { return static_cast<int>(adj_[v].size()); }
    bool has_edge(int u, int v) const;
    bool is_complete() const { return 2 * m() == n_ * (n_ - 1); }

private:
    int n_;
    std::vector<std::pair<int, int>> edges_;
    std::vector<std::vector<int>> adj_;
};

/// Ordered list of disjoint nonempty vertex blocks covering a subset of V.
struct VertexPartition {
    std::vector<VertexSet> blocks;
};

/// One arc (tail, head) per oriented edge.
struct Orientation {
    std::vector<std::pair<int, int>> arcs;
};

/// Connected components, each sorted, ordered by smallest member.
std::vector<VertexSet> components(const Graph& g);

/// Components of the subgraph induced by `sub` (which must be sorted).
std::vector<VertexSet> components_within(const Graph& g, const VertexSet& sub);

/// True for the empty set and for any set inducing a connected subgraph.
bool is_connected_subset(const Graph& g, const VertexSet& vs);

/// True when u and v end up in different components after deleting z.
/// z must not contain u or v.
bool separates(const Graph& g, int u, int v, const VertexSet& z);

/// Greedy minimal separator: scan z ascending, drop each vertex whose removal
/// keeps z a u,v-separator.  Input z must separate u from v.
VertexSet minimalize_separator(const Graph& g, int u, int v, VertexSet z);

/// True when no proper subset of z separates u from v.
bool is_minimal_separator(const Graph& g, int u, int v, const VertexSet& z);

/// Edges with endpoints in two different blocks, canonical order.
std::vector<std::pair<int, int>> crossing_edges(const Graph& g, const VertexPartition& w);

/// Sorted union of neighbors of `vs` that are outside `vs`.
VertexSet neighborhood(const Graph& g, const VertexSet& vs);

bool is_sorted_unique(const VertexSet& vs);
bool contains(const VertexSet& vs, int v);

}  // namespace cks
