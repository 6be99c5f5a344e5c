#include "cks/graph.hpp"

#include <algorithm>
#include <stdexcept>
#include <string>

namespace cks {

Graph::Graph(int n, std::vector<std::pair<int, int>> edges) : n_(n) {
    if (n < 1) throw std::invalid_argument("Graph: need at least one vertex");
    for (auto& [u, v] : edges) {
        if (u == v) throw std::invalid_argument("Graph: self-loop at " + std::to_string(u));
        if (u < 0 || v < 0 || u >= n || v >= n)
            throw std::invalid_argument("Graph: endpoint out of range");
        if (u > v) std::swap(u, v);
    }
    std::sort(edges.begin(), edges.end());
    if (std::adjacent_find(edges.begin(), edges.end()) != edges.end())
        throw std::invalid_argument("Graph: duplicate edge");
    edges_ = std::move(edges);
    adj_.assign(n_, {});
    for (auto [u, v] : edges_) {
        adj_[u].push_back(v);
        adj_[v].push_back(u);
    }
    for (auto& a : adj_) std::sort(a.begin(), a.end());
}

bool Graph::has_edge(int u, int v) const {
    if (u == v) return false;
    const auto& a = adj_[u];
    return std::binary_search(a.begin(), a.end(), v);
}

bool is_sorted_unique(const VertexSet& vs) {
    for (size_t i = 1; i < vs.size(); ++i)
        if (vs[i - 1] >= vs[i]) return false;
    return true;
}

bool contains(const VertexSet& vs, int v) {
    return std::binary_search(vs.begin(), vs.end(), v);
}

namespace {

/// Flood fill over `alive` vertices starting at s; marks comp ids in `comp`.
void flood(const Graph& g, int s, const std::vector<char>& alive, std::vector<int>& comp,
           int id) {
    std::vector<int> stack{s};
    comp[s] = id;
    while (!stack.empty()) {
        int v = stack.back();
        stack.pop_back();
        for (int w : g.neighbors(v))
            if (alive[w] && comp[w] < 0) {
                comp[w] = id;
                stack.push_back(w);
            }
    }
}

std::vector<VertexSet> collect_components(const Graph& g, const std::vector<char>& alive) {
    std::vector<int> comp(g.n(), -1);
    int next = 0;
    for (int v = 0; v < g.n(); ++v)
        if (alive[v] && comp[v] < 0) flood(g, v, alive, comp, next++);
    std::vector<VertexSet> out(next);
    for (int v = 0; v < g.n(); ++v)
        if (comp[v] >= 0) out[comp[v]].push_back(v);
    return out;  // ids assigned by ascending first vertex, so order is canonical
}

}  // namespace

std::vector<VertexSet> components(const Graph& g) {
    return collect_components(g, std::vector<char>(g.n(), 1));
}

std::vector<VertexSet> components_within(const Graph& g, const VertexSet& sub) {
    if (!is_sorted_unique(sub)) throw std::invalid_argument("components_within: set not sorted");
    std::vector<char> alive(g.n(), 0);
    for (int v : sub) {
        if (v < 0 || v >= g.n()) throw std::invalid_argument("components_within: out of range");
        alive[v] = 1;
    }
    return collect_components(g, alive);
}

bool is_connected_subset(const Graph& g, const VertexSet& vs) {
    if (vs.empty()) return true;
    return components_within(g, vs).size() == 1;
}

bool separates(const Graph& g, int u, int v, const VertexSet& z) {
    if (u == v) throw std::invalid_argument("separates: u == v");
    if (contains(z, u) || contains(z, v))
        throw std::invalid_argument("separates: z contains a terminal");
    std::vector<char> alive(g.n(), 1);
    for (int x : z) alive[x] = 0;
    std::vector<int> comp(g.n(), -1);
    flood(g, u, alive, comp, 0);
    return comp[v] < 0;
}

VertexSet minimalize_separator(const Graph& g, int u, int v, VertexSet z) {
    if (!is_sorted_unique(z)) throw std::invalid_argument("minimalize_separator: z not sorted");
    if (!separates(g, u, v, z))
        throw std::invalid_argument("minimalize_separator: z does not separate");
    for (size_t i = 0; i < z.size();) {
        VertexSet trial = z;
        trial.erase(trial.begin() + i);
        if (separates(g, u, v, trial))
            z = std::move(trial);
        else
            ++i;
    }
    return z;
}

bool is_minimal_separator(const Graph& g, int u, int v, const VertexSet& z) {
    if (!separates(g, u, v, z)) return false;
    for (size_t i = 0; i < z.size(); ++i) {
        VertexSet trial = z;
        trial.erase(trial.begin() + i);
        if (separates(g, u, v, trial)) return false;
    }
    return true;
}

std::vector<std::pair<int, int>> crossing_edges(const Graph& g, const VertexPartition& w) {
    std::vector<int> block(g.n(), -1);
    for (size_t b = 0; b < w.blocks.size(); ++b)
        for (int v : w.blocks[b]) {
            if (v < 0 || v >= g.n()) throw std::invalid_argument("crossing_edges: out of range");
            if (block[v] >= 0) throw std::invalid_argument("crossing_edges: blocks overlap");
            block[v] = static_cast<int>(b);
        }
    std::vector<std::pair<int, int>> out;
    for (auto [a, b] : g.edges())
        if (block[a] >= 0 && block[b] >= 0 && block[a] != block[b]) out.emplace_back(a, b);
    return out;
}

VertexSet neighborhood(const Graph& g, const VertexSet& vs) {
    std::vector<char> in(g.n(), 0), seen(g.n(), 0);
    for (int v : vs) in[v] = 1;
    VertexSet out;
    for (int v : vs)
        for (int w : g.neighbors(v))
            if (!in[w] && !seen[w]) {
                seen[w] = 1;
                out.push_back(w);
            }
    std::sort(out.begin(), out.end());
    return out;
}

}  // namespace cks
