#include "cks/flow.hpp"

#include <algorithm>
#include <queue>
#include <stdexcept>

namespace cks {

FlowNetwork::FlowNetwork(int nodes) : node_count(nodes), demand(nodes, 0) {
    if (nodes < 1) throw std::invalid_argument("FlowNetwork: need at least one node");
}

int FlowNetwork::add_arc(int tail, int head, const Rat& capacity, const Rat& cost) {
    if (tail < 0 || tail >= node_count || head < 0 || head >= node_count)
        throw std::invalid_argument("FlowNetwork: arc endpoint out of range");
    if (tail == head) throw std::invalid_argument("FlowNetwork: arc endpoints must differ");
    if (capacity.is_negative()) throw std::invalid_argument("FlowNetwork: negative capacity");
    arcs.push_back({tail, head, capacity, cost, false});
    return static_cast<int>(arcs.size()) - 1;
}

int FlowNetwork::add_infinite_arc(int tail, int head, const Rat& cost) {
    int id = add_arc(tail, head, Rat(0), cost);
    arcs[id].infinite = true;
    return id;
}

void FlowNetwork::set_demand(int node, long long amount) {
    if (node < 0 || node >= node_count)
        throw std::invalid_argument("FlowNetwork: demand node out of range");
    demand[node] = amount;
}

namespace {

/// Residual graph shared by both solvers.  Every arc gets a paired reverse
/// edge; `orig` points back into FlowNetwork::arcs (-1 for reverse edges).
struct Residual {
    struct Edge {
        int head;
        int rev;
        Rat cap;
        Rat cost;
        int orig;
    };
    std::vector<std::vector<Edge>> adj;

    explicit Residual(int nodes) : adj(nodes) {}

    void add(int tail, int head, const Rat& cap, const Rat& cost, int orig) {
        adj[tail].push_back({head, static_cast<int>(adj[head].size()), cap, cost, orig});
        adj[head].push_back({tail, static_cast<int>(adj[tail].size()) - 1, Rat(0), Rat(0) - cost, -1});
    }
};

/// Stand-in capacity for infinite arcs: one more than every finite capacity
/// and demand combined, hence above any feasible flow through a finite cut.
Rat infinite_stand_in(const FlowNetwork& net) {
    Rat total(1);
    for (const auto& arc : net.arcs)
        if (!arc.infinite) total = total + arc.capacity;
    for (long long d : net.demand)
        if (d > 0) total = total + Rat(d);
    return total;
}

Residual build_residual(const FlowNetwork& net, const Rat& inf_cap) {
    Residual r(net.node_count);
    for (size_t i = 0; i < net.arcs.size(); ++i) {
        const auto& arc = net.arcs[i];
        r.add(arc.tail, arc.head, arc.infinite ? inf_cap : arc.capacity, arc.cost,
              static_cast<int>(i));
    }
    return r;
}

std::vector<Rat> extract_flow(const FlowNetwork& net, const Residual& r, const Rat& inf_cap) {
    std::vector<Rat> flow(net.arcs.size(), Rat(0));
    for (const auto& edges : r.adj)
        for (const auto& e : edges)
            if (e.orig >= 0) {
                const auto& arc = net.arcs[e.orig];
                flow[e.orig] = (arc.infinite ? inf_cap : arc.capacity) - e.cap;
            }
    return flow;
}

bool dinic_levels(const Residual& r, int s, int t, std::vector<int>& level) {
    std::fill(level.begin(), level.end(), -1);
    std::queue<int> q;
    level[s] = 0;
    q.push(s);
    while (!q.empty()) {
        int v = q.front();
        q.pop();
        for (const auto& e : r.adj[v])
            if (level[e.head] < 0 && e.cap.is_positive()) {
                level[e.head] = level[v] + 1;
                q.push(e.head);
            }
    }
    return level[t] >= 0;
}

Rat dinic_push(Residual& r, const std::vector<int>& level, std::vector<size_t>& iter, int v,
               int t, const Rat& limit) {
    if (v == t) return limit;
    for (auto& i = iter[v]; i < r.adj[v].size(); ++i) {
        auto& e = r.adj[v][i];
        if (!e.cap.is_positive() || level[e.head] != level[v] + 1) continue;
        Rat pushed = dinic_push(r, level, iter, e.head, t, std::min(limit, e.cap));
        if (pushed.is_positive()) {
            e.cap = e.cap - pushed;
            auto& back = r.adj[e.head][e.rev];
            back.cap = back.cap + pushed;
            return pushed;
        }
    }
    return Rat(0);
}

std::vector<char> residual_reachable(const Residual& r, int s) {
    std::vector<char> seen(r.adj.size(), 0);
    std::queue<int> q;
    seen[s] = 1;
    q.push(s);
    while (!q.empty()) {
        int v = q.front();
        q.pop();
        for (const auto& e : r.adj[v])
            if (!seen[e.head] && e.cap.is_positive()) {
                seen[e.head] = 1;
                q.push(e.head);
            }
    }
    return seen;
}

}  // namespace

FlowResult max_flow(const FlowNetwork& net, int s, int t) {
    if (s < 0 || s >= net.node_count || t < 0 || t >= net.node_count)
        throw std::invalid_argument("max_flow: terminal out of range");
    if (s == t) throw std::invalid_argument("max_flow: source equals sink");

    Rat inf_cap = infinite_stand_in(net);
    Residual r = build_residual(net, inf_cap);
    Rat value(0);
    std::vector<int> level(net.node_count);
    while (dinic_levels(r, s, t, level)) {
        std::vector<size_t> iter(net.node_count, 0);
        while (true) {
            Rat pushed = dinic_push(r, level, iter, s, t, inf_cap);
            if (!pushed.is_positive()) break;
            value = value + pushed;
        }
    }

    FlowResult out;
    out.flow = extract_flow(net, r, inf_cap);
    out.value = value;
    out.cost = Rat(0);
    for (size_t i = 0; i < net.arcs.size(); ++i)
        out.cost = out.cost + out.flow[i] * net.arcs[i].cost;
    std::vector<char> seen = residual_reachable(r, s);
    for (size_t i = 0; i < net.arcs.size(); ++i)
        if (seen[net.arcs[i].tail] && !seen[net.arcs[i].head])
            out.min_cut.push_back(static_cast<int>(i));
    return out;
}

FlowResult min_cost_flow(const FlowNetwork& net) {
    long long balance = 0;
    for (long long d : net.demand) balance += d;
    if (balance != 0) throw std::invalid_argument("min_cost_flow: demands must sum to zero");
    for (const auto& arc : net.arcs) {
        if (arc.cost.is_negative())
            throw std::invalid_argument("min_cost_flow: negative arc cost");
        if (!arc.infinite && !arc.capacity.is_integer())
            throw std::invalid_argument("min_cost_flow: capacities must be integral");
    }

    // Super source/sink realize the demands, so one s-t flow problem remains.
    int s = net.node_count;
    int t = net.node_count + 1;
    FlowNetwork aug(net.node_count + 2);
    aug.arcs = net.arcs;
    long long need = 0;
    for (int v = 0; v < net.node_count; ++v) {
        if (net.demand[v] < 0) aug.add_arc(s, v, Rat(-net.demand[v]));
        if (net.demand[v] > 0) {
            aug.add_arc(v, t, Rat(net.demand[v]));
            need += net.demand[v];
        }
    }

    Rat inf_cap = infinite_stand_in(aug);
    Residual r = build_residual(aug, inf_cap);
    int nn = aug.node_count;
    std::vector<Rat> pot(nn, Rat(0));
    Rat shipped(0);
    Rat target(need);

    while (shipped < target) {
        // Dijkstra over reduced costs (non-negative thanks to the potentials).
        struct Item {
            Rat d;
            int v;
        };
        auto worse = [](const Item& a, const Item& b) { return b.d < a.d; };
        std::priority_queue<Item, std::vector<Item>, decltype(worse)> pq(worse);
        std::vector<Rat> dist(nn, Rat(0));
        std::vector<char> reach(nn, 0), done(nn, 0);
        std::vector<std::pair<int, int>> parent(nn, {-1, -1});
        reach[s] = 1;
        pq.push({Rat(0), s});
        while (!pq.empty()) {
            Item top = pq.top();
            pq.pop();
            if (done[top.v]) continue;
            done[top.v] = 1;
            for (size_t i = 0; i < r.adj[top.v].size(); ++i) {
                const auto& e = r.adj[top.v][i];
                if (!e.cap.is_positive() || done[e.head]) continue;
                Rat nd = top.d + e.cost + pot[top.v] - pot[e.head];
                if (!reach[e.head] || nd < dist[e.head]) {
                    dist[e.head] = nd;
                    reach[e.head] = 1;
                    parent[e.head] = {top.v, static_cast<int>(i)};
                    pq.push({nd, e.head});
                }
            }
        }
        if (!reach[t]) throw std::runtime_error("min_cost_flow: demands cannot be met");
        for (int v = 0; v < nn; ++v)
            if (reach[v]) pot[v] = pot[v] + dist[v];

        Rat push = inf_cap;
        for (int v = t; v != s; v = parent[v].first)
            push = std::min(push, r.adj[parent[v].first][parent[v].second].cap);
        for (int v = t; v != s; v = parent[v].first) {
            auto& e = r.adj[parent[v].first][parent[v].second];
            e.cap = e.cap - push;
            r.adj[v][e.rev].cap = r.adj[v][e.rev].cap + push;
        }
        shipped = shipped + push;
    }

    FlowResult out;
    out.flow = extract_flow(aug, r, inf_cap);
    out.flow.resize(net.arcs.size());
    out.value = shipped;
    out.cost = Rat(0);
    for (size_t i = 0; i < net.arcs.size(); ++i)
        out.cost = out.cost + out.flow[i] * net.arcs[i].cost;
    return out;
}

std::pair<Rat, VertexSet> min_vertex_cut(const Graph& g, int u, int v,
                                         const std::vector<Rat>& weight) {
    int n = g.n();
    if (u < 0 || u >= n || v < 0 || v >= n)
        throw std::invalid_argument("min_vertex_cut: terminal out of range");
    if (u == v) throw std::invalid_argument("min_vertex_cut: terminals must differ");
    if (g.has_edge(u, v))
        throw std::invalid_argument("min_vertex_cut: no vertex cut between adjacent vertices");
    if (static_cast<int>(weight.size()) != n)
        throw std::invalid_argument("min_vertex_cut: weight size mismatch");
    for (const auto& w : weight)
        if (w.is_negative()) throw std::invalid_argument("min_vertex_cut: negative weight");

    // Split every vertex i into entry 2i and exit 2i+1; only the entry->exit
    // arcs of non-terminal vertices carry finite capacity, so the minimum cut
    // consists of such arcs and reads off a vertex set.
    FlowNetwork net(2 * n);
    for (int i = 0; i < n; ++i) {
        if (i == u || i == v)
            net.add_infinite_arc(2 * i, 2 * i + 1);
        else
            net.add_arc(2 * i, 2 * i + 1, weight[i]);
    }
    for (auto [a, b] : g.edges()) {
        net.add_infinite_arc(2 * a + 1, 2 * b);
        net.add_infinite_arc(2 * b + 1, 2 * a);
    }
    FlowResult res = max_flow(net, 2 * u + 1, 2 * v);
    VertexSet z;
    for (int idx : res.min_cut)
        if (!net.arcs[idx].infinite) z.push_back(net.arcs[idx].tail / 2);
    return {res.value, z};
}

std::pair<Rat, VertexSet> min_weight_separating_set(const Graph& g,
                                                    const std::vector<Rat>& weight) {
    if (g.is_complete())
        throw std::invalid_argument("min_weight_separating_set: complete graph");
    bool have = false;
    Rat best(0);
    VertexSet best_z;
    for (int u = 0; u < g.n(); ++u)
        for (int v = u + 1; v < g.n(); ++v) {
            if (g.has_edge(u, v)) continue;
            auto [val, z] = min_vertex_cut(g, u, v, weight);
            if (!have || val < best) {
                best = val;
                best_z = std::move(z);
                have = true;
            }
        }
    return {best, best_z};
}

VertexSet bipartite_min_vertex_cover(const Graph& g, const VertexSet& left,
                                     const VertexSet& right,
                                     const std::vector<Rat>& weight) {
    int n = g.n();
    if (!is_sorted_unique(left) || !is_sorted_unique(right))
        throw std::invalid_argument("bipartite_min_vertex_cover: parts must be sorted sets");
    for (int v : left)
        if (v < 0 || v >= n || contains(right, v))
            throw std::invalid_argument("bipartite_min_vertex_cover: parts overlap or out of range");
    for (int v : right)
        if (v < 0 || v >= n)
            throw std::invalid_argument("bipartite_min_vertex_cover: parts overlap or out of range");
    if (static_cast<int>(weight.size()) != n)
        throw std::invalid_argument("bipartite_min_vertex_cover: weight size mismatch");
    for (const auto& w : weight)
        if (w.is_negative())
            throw std::invalid_argument("bipartite_min_vertex_cover: negative weight");

    FlowNetwork net(n + 2);
    int s = n;
    int t = n + 1;
    for (int v : left) net.add_arc(s, v, weight[v]);
    for (int v : right) net.add_arc(v, t, weight[v]);
    for (auto [a, b] : g.edges()) {
        int l = contains(left, a) ? a : b;
        int r = (l == a) ? b : a;
        if (!contains(left, l) || !contains(right, r))
            throw std::invalid_argument("bipartite_min_vertex_cover: edge inside one part");
        net.add_infinite_arc(l, r);
    }

    // Min cut = saturated source-side arcs; the incident vertices form a
    // minimum-weight cover by flow duality.
    FlowResult res = max_flow(net, s, t);
    VertexSet cover;
    for (int idx : res.min_cut) {
        const auto& arc = net.arcs[idx];
        cover.push_back(arc.tail == s ? arc.head : arc.tail);
    }
    std::sort(cover.begin(), cover.end());

    // Drop vertices covering no private edge (possible with zero weights), so
    // every survivor keeps a neighbor outside the cover.
    for (size_t i = 0; i < cover.size();) {
        bool redundant = true;
        for (int nb : g.neighbors(cover[i]))
            if (!contains(cover, nb)) {
                redundant = false;
                break;
            }
        if (redundant)
            cover.erase(cover.begin() + static_cast<long>(i));
        else
            ++i;
    }
    return cover;
}

}  // namespace cks
