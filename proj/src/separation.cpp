#include "cks/separation.hpp"

#include <algorithm>
#include <map>
#include <queue>
#include <set>
#include <stdexcept>

#include "cks/flow.hpp"

namespace cks {

void SeparationOutcome::add(LinearInequality ineq, Rat violation) {
    cuts.emplace_back(std::move(ineq), std::move(violation));
}

int SeparationOutcome::count(IneqFamily f) const {
    int c = 0;
    for (const auto& [ineq, viol] : cuts)
        if (ineq.family == f) ++c;
    return c;
}

bool SeparationOutcome::holds(const LinearInequality& ineq) const {
    for (const auto& [have, viol] : cuts)
        if (have == ineq) return true;
    return false;
}

namespace {

void validate_point(const Graph& g, const FractionalPoint& x, const char* who) {
    if (x.n != g.n() || x.k < 1)
        throw std::invalid_argument(std::string(who) + ": point does not fit the graph");
    for (const auto& v : x.val)
        if (v.is_negative() || Rat(1) < v)
            throw std::invalid_argument(std::string(who) + ": point entry outside [0, 1]");
}

std::vector<Rat> class_weights(const FractionalPoint& x, int cls) {
    std::vector<Rat> w(x.n);
    for (int v = 0; v < x.n; ++v) w[v] = x.at(v, cls);
    return w;
}

/// Minimum-weight cover of one block pair's crossing edges.  Edges are
/// (p, q) with p in the first and q in the second block.  A singleton block
/// admits a closed form: either its vertex or all opposite endpoints.
VertexSet block_pair_cover(const std::vector<std::pair<int, int>>& edges,
                           bool first_singleton, bool second_singleton,
                           const std::vector<Rat>& wt) {
    if (first_singleton || second_singleton) {
        int hub = first_singleton ? edges[0].first : edges[0].second;
        VertexSet opposite;
        for (auto [p, q] : edges) opposite.push_back(first_singleton ? q : p);
        std::sort(opposite.begin(), opposite.end());
        opposite.erase(std::unique(opposite.begin(), opposite.end()), opposite.end());
        Rat total(0);
        for (int v : opposite) total = total + wt[v];
        if (wt[hub] <= total) return {hub};
        return opposite;
    }

    // General case: route through the bipartite min-cover flow on a local
    // relabeling of the touched endpoints.
    VertexSet lefts, rights;
    for (auto [p, q] : edges) {
        lefts.push_back(p);
        rights.push_back(q);
    }
    std::sort(lefts.begin(), lefts.end());
    lefts.erase(std::unique(lefts.begin(), lefts.end()), lefts.end());
    std::sort(rights.begin(), rights.end());
    rights.erase(std::unique(rights.begin(), rights.end()), rights.end());

    std::map<int, int> local;
    VertexSet global;
    for (int v : lefts) {
        local[v] = static_cast<int>(global.size());
        global.push_back(v);
    }
    for (int v : rights) {
        local[v] = static_cast<int>(global.size());
        global.push_back(v);
    }
    std::vector<std::pair<int, int>> local_edges;
    for (auto [p, q] : edges) local_edges.push_back({local[p], local[q]});
    Graph h(static_cast<int>(global.size()), local_edges);
    VertexSet left_ids, right_ids;
    for (int v : lefts) left_ids.push_back(local[v]);
    for (int v : rights) right_ids.push_back(local[v]);
    std::vector<Rat> local_wt(global.size());
    for (size_t i = 0; i < global.size(); ++i) local_wt[i] = wt[global[i]];

    VertexSet cover;
    for (int id : bipartite_min_vertex_cover(h, left_ids, right_ids, local_wt))
        cover.push_back(global[id]);
    std::sort(cover.begin(), cover.end());
    return cover;
}

}  // namespace

GenConCut separate_gencon_fixed_partition(const Graph& g, const VertexPartition& w, int cls,
                                          const FractionalPoint& x) {
    validate_point(g, x, "separate_gencon_fixed_partition");
    std::vector<int> block(g.n(), -1);
    for (size_t b = 0; b < w.blocks.size(); ++b)
        for (int v : w.blocks[b]) {
            if (v < 0 || v >= g.n() || block[v] >= 0)
                throw std::invalid_argument("separate_gencon_fixed_partition: bad partition");
            block[v] = static_cast<int>(b);
        }
    for (int v = 0; v < g.n(); ++v)
        if (block[v] < 0)
            throw std::invalid_argument("separate_gencon_fixed_partition: partition misses a vertex");

    std::vector<Rat> wt = class_weights(x, cls);

    // Crossing edges bucketed per block pair, endpoints ordered (lower block,
    // higher block).
    std::map<std::pair<int, int>, std::vector<std::pair<int, int>>> pairs;
    for (auto [a, b] : g.edges()) {
        int ba = block[a], bb = block[b];
        if (ba == bb) continue;
        if (ba < bb)
            pairs[{ba, bb}].push_back({a, b});
        else
            pairs[{bb, ba}].push_back({b, a});
    }

    Orientation orient;
    for (const auto& [key, edges] : pairs) {
        VertexSet cover =
            block_pair_cover(edges, w.blocks[key.first].size() == 1,
                             w.blocks[key.second].size() == 1, wt);
        for (auto [p, q] : edges) {
            // Head must lie in the cover; with both endpoints covered the
            // higher-block endpoint wins (any choice realizes the cover value).
            int head = contains(cover, q) ? q : p;
            orient.arcs.push_back({head == q ? p : q, head});
        }
    }

    VertexSet s;
    for (const auto& blk : w.blocks) {
        int pick = blk[0];
        for (int v : blk)
            if (wt[pick] < wt[v]) pick = v;
        s.push_back(pick);
    }
    std::sort(s.begin(), s.end());

    GenConCut out;
    out.spec = GenConSpec{w, s, orient, cls};
    out.ineq = make_gencon(g, out.spec, x.k);
    out.lhs = evaluate(out.ineq, x);
    return out;
}

std::optional<LinearInequality> separate_indegree(const Graph& g, int cls,
                                                  const FractionalPoint& x) {
    validate_point(g, x, "separate_indegree");
    Orientation orient;
    for (auto [u, v] : g.edges()) {
        int head = x.at(u, cls) <= x.at(v, cls) ? u : v;
        orient.arcs.push_back({head == u ? v : u, head});
    }
    LinearInequality ineq = make_indegree(g, orient, cls, x.k);
    if (evaluate(ineq, x) > ineq.rhs) return ineq;
    return std::nullopt;
}

VertexPartition merge_heuristic_partition(const Graph& g, int cls, const FractionalPoint& x) {
    validate_point(g, x, "merge_heuristic_partition");
    std::vector<Rat> wt = class_weights(x, cls);
    std::vector<int> singles(g.n());
    for (int v = 0; v < g.n(); ++v) singles[v] = v;
    std::vector<VertexSet> merged;

    while (singles.size() >= 2) {
        bool found = false;
        Rat best(0);
        int bu = -1, bv = -1;
        for (size_t i = 0; i < singles.size(); ++i)
            for (size_t j = i + 1; j < singles.size(); ++j) {
                int u = singles[i], v = singles[j];
                Rat mn = std::min(wt[u], wt[v]);
                Rat delta(0);
                const auto& nu = g.neighbors(u);
                const auto& nv = g.neighbors(v);
                size_t a = 0, b = 0;
                while (a < nu.size() && b < nv.size()) {
                    if (nu[a] < nv[b])
                        ++a;
                    else if (nv[b] < nu[a])
                        ++b;
                    else {
                        if (wt[nu[a]] <= mn) delta = delta + wt[nu[a]];
                        ++a;
                        ++b;
                    }
                }
                Rat gain = g.has_edge(u, v) ? delta : delta - mn;
                // Strictly-better keeps the lexicographically first maximum.
                if (gain.is_positive() && (!found || best < gain)) {
                    found = true;
                    best = gain;
                    bu = u;
                    bv = v;
                }
            }
        if (!found) break;
        merged.push_back({bu, bv});
        singles.erase(std::remove(singles.begin(), singles.end(), bu), singles.end());
        singles.erase(std::remove(singles.begin(), singles.end(), bv), singles.end());
    }

    VertexPartition out;
    for (auto& blk : merged) out.blocks.push_back(std::move(blk));
    for (int v : singles) out.blocks.push_back({v});
    std::sort(out.blocks.begin(), out.blocks.end(),
              [](const VertexSet& a, const VertexSet& b) { return a[0] < b[0]; });
    return out;
}

SeparationOutcome separate_connectivity(const Graph& g, const FractionalPoint& x,
                                        bool exhaustive) {
    validate_point(g, x, "separate_connectivity");
    SeparationOutcome out;
    for (int c = 0; c < x.k; ++c) {
        std::vector<Rat> wt = class_weights(x, c);
        struct Cand {
            Rat sum;
            int u, v;
        };
        std::vector<Cand> cands;
        for (int u = 0; u < g.n(); ++u)
            for (int v = u + 1; v < g.n(); ++v) {
                if (g.has_edge(u, v)) continue;
                Rat sum = wt[u] + wt[v];
                if (Rat(1) < sum) cands.push_back({sum, u, v});
            }
        std::sort(cands.begin(), cands.end(), [](const Cand& a, const Cand& b) {
            if (a.sum != b.sum) return b.sum < a.sum;
            return std::pair{a.u, a.v} < std::pair{b.u, b.v};
        });
        for (const auto& cand : cands) {
            auto [val, z] = min_vertex_cut(g, cand.u, cand.v, wt);
            if (!(val < cand.sum - Rat(1))) continue;
            VertexSet zmin = minimalize_separator(g, cand.u, cand.v, z);
            LinearInequality ineq = make_connectivity(g, cand.u, cand.v, zmin, c, x.k);
            if (!out.holds(ineq)) out.add(ineq, evaluate(ineq, x) - ineq.rhs);
            if (!exhaustive) break;
        }
    }
    return out;
}

std::optional<LinearInequality> separate_multiway(const Graph& g, const FractionalPoint& x,
                                                  bool try_all_class_subsets) {
    validate_point(g, x, "separate_multiway");
    std::vector<std::vector<int>> csets;
    if (try_all_class_subsets && x.k <= 3) {
        for (unsigned mask = 1; mask < (1u << x.k); ++mask) {
            std::vector<int> cs;
            for (int c = 0; c < x.k; ++c)
                if (mask & (1u << c)) cs.push_back(c);
            csets.push_back(cs);
        }
    } else {
        std::vector<int> all(x.k);
        for (int c = 0; c < x.k; ++c) all[c] = c;
        csets.push_back(all);
    }

    auto comps = components(g);
    std::optional<LinearInequality> best;
    Rat best_viol(0);
    for (const auto& cset : csets) {
        std::vector<Rat> w2(g.n(), Rat(0));
        for (int v = 0; v < g.n(); ++v)
            for (int c : cset) w2[v] = w2[v] + x.at(v, c);
        for (const auto& comp : comps) {
            if (comp.size() < 2) continue;
            // Induced subgraph of the component, relabeled 0..|comp|-1.
            std::vector<std::pair<int, int>> local_edges;
            for (size_t i = 0; i < comp.size(); ++i)
                for (size_t j = i + 1; j < comp.size(); ++j)
                    if (g.has_edge(comp[i], comp[j]))
                        local_edges.push_back({static_cast<int>(i), static_cast<int>(j)});
            Graph h(static_cast<int>(comp.size()), local_edges);
            if (h.is_complete()) continue;
            std::vector<Rat> local_wt(comp.size());
            for (size_t i = 0; i < comp.size(); ++i) local_wt[i] = w2[comp[i]];
            auto [val, zloc] = min_weight_separating_set(h, local_wt);
            VertexSet z;
            for (int id : zloc) z.push_back(comp[id]);
            std::sort(z.begin(), z.end());

            VertexSet rest;
            for (int v : comp)
                if (!contains(z, v)) rest.push_back(v);
            VertexSet s;
            for (const auto& side : components_within(g, rest)) {
                int pick = side[0];
                for (int v : side)
                    if (w2[pick] < w2[v]) pick = v;
                s.push_back(pick);
            }
            std::sort(s.begin(), s.end());

            LinearInequality ineq = make_multiway(g, MultiwaySpec{cset, s, z}, x.k);
            Rat viol = evaluate(ineq, x) - ineq.rhs;
            if (viol.is_positive() && (!best || best_viol < viol)) {
                best = ineq;
                best_viol = viol;
            }
        }
    }
    return best;
}

namespace {

/// Unique u-v path in a tree, as the sorted set of its vertices.
VertexSet tree_path_set(const Graph& g, int u, int v) {
    std::vector<int> parent(g.n(), -2);
    std::queue<int> q;
    parent[u] = -1;
    q.push(u);
    while (!q.empty() && parent[v] == -2) {
        int a = q.front();
        q.pop();
        for (int b : g.neighbors(a))
            if (parent[b] == -2) {
                parent[b] = a;
                q.push(b);
            }
    }
    VertexSet path;
    for (int a = v; a != -1; a = parent[a]) path.push_back(a);
    std::sort(path.begin(), path.end());
    return path;
}

}  // namespace

PairingCut separate_pairing_tree(const Graph& g, const std::vector<int>& cset,
                                 const std::vector<std::pair<int, int>>& delegates,
                                 const FractionalPoint& x) {
    validate_point(g, x, "separate_pairing_tree");
    if (g.m() != g.n() - 1 || components(g).size() != 1)
        throw std::invalid_argument("separate_pairing_tree: graph is not a tree");
    if (cset.empty() || cset.size() != delegates.size())
        throw std::invalid_argument("separate_pairing_tree: one delegate pair per class required");
    if (!is_sorted_unique(cset))
        throw std::invalid_argument("separate_pairing_tree: cset not sorted");
    VertexSet endpoints;
    for (auto [a, b] : delegates) {
        if (a < 0 || a >= g.n() || b < 0 || b >= g.n() || a == b)
            throw std::invalid_argument("separate_pairing_tree: bad delegate pair");
        if (g.has_edge(a, b))
            throw std::invalid_argument("separate_pairing_tree: delegates adjacent");
        endpoints.push_back(a);
        endpoints.push_back(b);
    }
    std::sort(endpoints.begin(), endpoints.end());
    if (std::adjacent_find(endpoints.begin(), endpoints.end()) != endpoints.end())
        throw std::invalid_argument("separate_pairing_tree: delegates must be distinct");

    int np = static_cast<int>(cset.size());
    std::vector<VertexSet> path(np);
    for (int i = 0; i < np; ++i)
        path[i] = tree_path_set(g, delegates[i].first, delegates[i].second);

    // Drop any pair whose path contains another active pair's path: cutting
    // the inner path already separates the outer pair.
    std::vector<char> active(np, 1);
    bool changed = true;
    while (changed) {
        changed = false;
        for (int b = 0; b < np && !changed; ++b) {
            if (!active[b]) continue;
            for (int c = 0; c < np; ++c) {
                if (c == b || !active[c]) continue;
                if (path[c].size() < path[b].size() &&
                    std::includes(path[b].begin(), path[b].end(), path[c].begin(),
                                  path[c].end())) {
                    active[b] = 0;
                    changed = true;
                    break;
                }
            }
        }
    }

    // Candidate separator vertices per active class: path vertices that are
    // not delegates of any pair.
    std::vector<VertexSet> cand(np);
    VertexSet pool;
    std::vector<int> active_ids;
    for (int i = 0; i < np; ++i) {
        if (!active[i]) continue;
        active_ids.push_back(i);
        for (int v : path[i])
            if (!contains(endpoints, v)) {
                cand[i].push_back(v);
                pool.push_back(v);
            }
    }
    std::sort(pool.begin(), pool.end());
    pool.erase(std::unique(pool.begin(), pool.end()), pool.end());

    // Routing network: source -> candidate vertex -> class -> sink; each
    // active class receives exactly one unit from a vertex on its path.
    int nc = static_cast<int>(active_ids.size());
    std::map<int, int> vid;
    for (size_t i = 0; i < pool.size(); ++i) vid[pool[i]] = static_cast<int>(i);
    int base = static_cast<int>(pool.size());
    int s = base + nc, t = s + 1;
    FlowNetwork net(t + 1);
    for (int v : pool) net.add_arc(s, vid[v], Rat(nc));
    std::map<std::pair<int, int>, int> charge_arc;  // (vertex, active slot) -> arc id
    for (int slot = 0; slot < nc; ++slot) {
        int i = active_ids[slot];
        for (int v : cand[i])
            charge_arc[{v, slot}] = net.add_arc(vid[v], base + slot, Rat(1), x.at(v, cset[i]));
        net.add_arc(base + slot, t, Rat(1));
    }
    net.set_demand(s, -nc);
    net.set_demand(t, nc);
    FlowResult flow = min_cost_flow(net);

    PairingSpec spec;
    spec.cset = cset;
    spec.delegates = delegates;
    for (const auto& [key, arc] : charge_arc)
        if (flow.flow[arc] == Rat(1)) spec.z.push_back(key.first);
    std::sort(spec.z.begin(), spec.z.end());
    spec.z.erase(std::unique(spec.z.begin(), spec.z.end()), spec.z.end());
    for (int zv : spec.z)
        for (int c : cset) spec.gamma[{zv, c}] = 0;
    for (const auto& [key, arc] : charge_arc)
        if (flow.flow[arc] == Rat(1)) spec.gamma[{key.first, cset[active_ids[key.second]]}] = 1;

    PairingCut out;
    out.spec = spec;
    out.ineq = make_pairing(g, spec, x.k);
    return out;
}

}  // namespace cks
