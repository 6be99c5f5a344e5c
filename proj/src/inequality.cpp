#include "cks/inequality.hpp"

#include <algorithm>
#include <set>
#include <sstream>
#include <stdexcept>

namespace cks {

std::string family_name(IneqFamily f) {
    switch (f) {
        case IneqFamily::cover: return "cover";
        case IneqFamily::connectivity: return "connectivity";
        case IneqFamily::indegree: return "indegree";
        case IneqFamily::gencon: return "gencon";
        case IneqFamily::multiway: return "multiway";
        case IneqFamily::pairing: return "pairing";
        case IneqFamily::other: return "other";
    }
    return "other";
}

IneqFamily family_from_name(const std::string& s) {
    for (IneqFamily f : {IneqFamily::cover, IneqFamily::connectivity, IneqFamily::indegree,
                         IneqFamily::gencon, IneqFamily::multiway, IneqFamily::pairing,
                         IneqFamily::other})
        if (family_name(f) == s) return f;
    throw std::invalid_argument("unknown inequality family: " + s);
}

void LinearInequality::set(int v, int c, const Rat& value) {
    if (value.is_zero())
        coef.erase({v, c});
    else
        coef[{v, c}] = value;
}

Rat LinearInequality::at(int v, int c) const {
    auto it = coef.find({v, c});
    return it == coef.end() ? Rat() : it->second;
}

IncidenceVector incidence_vector(const Subpartition& sp, int n, int k) {
    IncidenceVector chi(static_cast<size_t>(n) * k, 0);
    if (static_cast<int>(sp.classes.size()) > k)
        throw std::invalid_argument("incidence_vector: too many classes");
    for (size_t c = 0; c < sp.classes.size(); ++c)
        for (int v : sp.classes[c]) {
            if (v < 0 || v >= n) throw std::invalid_argument("incidence_vector: out of range");
            chi[static_cast<size_t>(v) * k + c] = 1;
        }
    return chi;
}

namespace {

void check_class(int cls, int k) {
    if (cls < 0 || cls >= k) throw std::invalid_argument("class index out of range");
}

void check_vertex(const Graph& g, int v, const char* what) {
    if (v < 0 || v >= g.n()) throw std::invalid_argument(std::string(what) + ": vertex out of range");
}

}  // namespace

LinearInequality make_cover(int v, int k) {
    if (k < 1) throw std::invalid_argument("make_cover: k < 1");
    LinearInequality out;
    out.family = IneqFamily::cover;
    out.rhs = Rat(1);
    for (int c = 0; c < k; ++c) out.set(v, c, Rat(1));
    return out;
}

LinearInequality make_connectivity(const Graph& g, int u, int v, const VertexSet& z, int cls,
                                   int k) {
    check_class(cls, k);
    check_vertex(g, u, "make_connectivity");
    check_vertex(g, v, "make_connectivity");
    if (u == v) throw std::invalid_argument("make_connectivity: u == v");
    if (g.has_edge(u, v)) throw std::invalid_argument("make_connectivity: u,v adjacent");
    if (!is_sorted_unique(z)) throw std::invalid_argument("make_connectivity: z not sorted");
    if (contains(z, u) || contains(z, v))
        throw std::invalid_argument("make_connectivity: z touches a terminal");
    if (!separates(g, u, v, z))
        throw std::invalid_argument("make_connectivity: z does not separate u from v");
    LinearInequality out;
    out.family = IneqFamily::connectivity;
    out.rhs = Rat(1);
    out.set(u, cls, Rat(1));
    out.set(v, cls, Rat(1));
    for (int x : z) out.set(x, cls, Rat(-1));
    return out;
}

LinearInequality make_indegree(const Graph& g, const Orientation& orient, int cls, int k) {
    check_class(cls, k);
    std::set<std::pair<int, int>> covered;
    std::vector<int> indeg(g.n(), 0);
    for (auto [t, h] : orient.arcs) {
        check_vertex(g, t, "make_indegree");
        check_vertex(g, h, "make_indegree");
        if (!g.has_edge(t, h)) throw std::invalid_argument("make_indegree: arc is not an edge");
        auto e = std::minmax(t, h);
        if (!covered.insert({e.first, e.second}).second)
            throw std::invalid_argument("make_indegree: edge oriented twice");
        ++indeg[h];
    }
    if (static_cast<int>(covered.size()) != g.m())
        throw std::invalid_argument("make_indegree: orientation must cover every edge");
    LinearInequality out;
    out.family = IneqFamily::indegree;
    out.rhs = Rat(1);
    for (int v = 0; v < g.n(); ++v) out.set(v, cls, Rat(1 - indeg[v]));
    return out;
}

std::vector<int> block_indegrees(const Graph& g, const VertexPartition& w,
                                 const Orientation& orient) {
    std::vector<int> block(g.n(), -1);
    for (size_t b = 0; b < w.blocks.size(); ++b)
        for (int v : w.blocks[b]) block[v] = static_cast<int>(b);
    std::vector<std::set<int>> tails(g.n());
    for (auto [t, h] : orient.arcs) tails[h].insert(block[t]);
    std::vector<int> bd(g.n(), 0);
    for (int v = 0; v < g.n(); ++v) bd[v] = static_cast<int>(tails[v].size());
    return bd;
}

LinearInequality make_gencon(const Graph& g, const GenConSpec& spec, int k) {
    check_class(spec.cls, k);
    // 1. w must partition V(g) and s must pick exactly one vertex per block.
    std::vector<int> block(g.n(), -1);
    for (size_t b = 0; b < spec.w.blocks.size(); ++b) {
        if (spec.w.blocks[b].empty()) throw std::invalid_argument("make_gencon: empty block");
        for (int v : spec.w.blocks[b]) {
            check_vertex(g, v, "make_gencon");
            if (block[v] >= 0) throw std::invalid_argument("make_gencon: blocks overlap");
            block[v] = static_cast<int>(b);
        }
    }
    for (int v = 0; v < g.n(); ++v)
        if (block[v] < 0) throw std::invalid_argument("make_gencon: w does not cover V");
    if (spec.s.size() != spec.w.blocks.size())
        throw std::invalid_argument("make_gencon: |s| != number of blocks");
    if (!is_sorted_unique(spec.s)) throw std::invalid_argument("make_gencon: s not sorted");
    std::vector<char> block_hit(spec.w.blocks.size(), 0);
    for (int v : spec.s) {
        check_vertex(g, v, "make_gencon");
        if (block_hit[block[v]]) throw std::invalid_argument("make_gencon: two s-vertices in a block");
        block_hit[block[v]] = 1;
    }
    // 2. The orientation must cover exactly the crossing edges of w.
    auto crossing = crossing_edges(g, spec.w);
    std::set<std::pair<int, int>> want(crossing.begin(), crossing.end());
    std::set<std::pair<int, int>> got;
    for (auto [t, h] : spec.orient.arcs) {
        auto e = std::minmax(t, h);
        if (!want.count({e.first, e.second}))
            throw std::invalid_argument("make_gencon: arc is not a crossing edge");
        if (!got.insert({e.first, e.second}).second)
            throw std::invalid_argument("make_gencon: edge oriented twice");
    }
    if (got.size() != want.size())
        throw std::invalid_argument("make_gencon: orientation must cover all crossing edges");
    // 3. Coefficients from block indegrees.
    auto bd = block_indegrees(g, spec.w, spec.orient);
    std::vector<char> in_s(g.n(), 0);
    for (int v : spec.s) in_s[v] = 1;
    LinearInequality out;
    out.family = IneqFamily::gencon;
    out.rhs = Rat(1);
    for (int v = 0; v < g.n(); ++v)
        out.set(v, spec.cls, Rat(in_s[v] ? 1 - bd[v] : -bd[v]));
    return out;
}

LinearInequality make_multiway(const Graph& g, const MultiwaySpec& spec, int k) {
    if (spec.cset.empty()) throw std::invalid_argument("make_multiway: empty class set");
    if (!is_sorted_unique(spec.cset)) throw std::invalid_argument("make_multiway: cset not sorted");
    for (int c : spec.cset) check_class(c, k);
    if (!is_sorted_unique(spec.s) || !is_sorted_unique(spec.z))
        throw std::invalid_argument("make_multiway: s or z not sorted");
    if (spec.s.empty()) throw std::invalid_argument("make_multiway: empty s");
    for (int v : spec.s) check_vertex(g, v, "make_multiway");
    for (int v : spec.z) check_vertex(g, v, "make_multiway");
    for (int a : spec.s)
        if (contains(spec.z, a)) throw std::invalid_argument("make_multiway: s and z overlap");
    for (size_t i = 0; i < spec.s.size(); ++i)
        for (size_t j = i + 1; j < spec.s.size(); ++j)
            if (g.has_edge(spec.s[i], spec.s[j]))
                throw std::invalid_argument("make_multiway: s is not stable");
    // z must leave at most one s-vertex per component.
    VertexSet rest;
    for (int v = 0; v < g.n(); ++v)
        if (!contains(spec.z, v)) rest.push_back(v);
    for (const auto& comp : components_within(g, rest)) {
        int hits = 0;
        for (int v : comp)
            if (contains(spec.s, v)) ++hits;
        if (hits > 1) throw std::invalid_argument("make_multiway: z is not a multiway cut of s");
    }
    long long beta = std::max<long long>(
        static_cast<long long>(spec.s.size()) - static_cast<long long>(spec.cset.size()), 0);
    LinearInequality out;
    out.family = IneqFamily::multiway;
    out.rhs = Rat(static_cast<long long>(spec.cset.size()));
    for (int c : spec.cset) {
        for (int v : spec.s) out.set(v, c, Rat(1));
        for (int v : spec.z) out.set(v, c, Rat(-beta));
    }
    return out;
}

LinearInequality make_pairing(const Graph& g, const PairingSpec& spec, int k) {
    if (spec.cset.empty()) throw std::invalid_argument("make_pairing: empty class set");
    if (!is_sorted_unique(spec.cset)) throw std::invalid_argument("make_pairing: cset not sorted");
    for (int c : spec.cset) check_class(c, k);
    if (spec.delegates.size() != spec.cset.size())
        throw std::invalid_argument("make_pairing: one delegate pair per class required");
    if (!is_sorted_unique(spec.z)) throw std::invalid_argument("make_pairing: z not sorted");
    std::set<int> seen;
    for (auto [a, b] : spec.delegates) {
        check_vertex(g, a, "make_pairing");
        check_vertex(g, b, "make_pairing");
        if (a == b) throw std::invalid_argument("make_pairing: degenerate delegate pair");
        if (g.has_edge(a, b)) throw std::invalid_argument("make_pairing: delegates adjacent");
        if (!seen.insert(a).second || !seen.insert(b).second)
            throw std::invalid_argument("make_pairing: delegates must be distinct");
        if (contains(spec.z, a) || contains(spec.z, b))
            throw std::invalid_argument("make_pairing: z touches a delegate");
        if (!separates(g, a, b, spec.z))
            throw std::invalid_argument("make_pairing: z fails to separate a delegate pair");
    }
    for (const auto& [key, val] : spec.gamma) {
        if (!contains(spec.z, key.first))
            throw std::invalid_argument("make_pairing: gamma row outside z");
        if (std::find(spec.cset.begin(), spec.cset.end(), key.second) == spec.cset.end())
            throw std::invalid_argument("make_pairing: gamma column outside cset");
        if (val != 0 && val != 1) throw std::invalid_argument("make_pairing: gamma not 0/1");
    }
    LinearInequality out;
    out.family = IneqFamily::pairing;
    out.rhs = Rat(static_cast<long long>(spec.cset.size()));
    for (size_t i = 0; i < spec.cset.size(); ++i) {
        int c = spec.cset[i];
        out.set(spec.delegates[i].first, c, Rat(1));
        out.set(spec.delegates[i].second, c, Rat(1));
    }
    for (int zv : spec.z)
        for (int c : spec.cset) {
            auto it = spec.gamma.find({zv, c});
            if (it != spec.gamma.end() && it->second == 1) out.set(zv, c, Rat(-1));
        }
    return out;
}

Rat evaluate(const LinearInequality& ineq, const FractionalPoint& x) {
    Rat acc;
    for (const auto& [key, c] : ineq.coef) {
        auto [v, cls] = key;
        if (v < 0 || v >= x.n || cls < 0 || cls >= x.k)
            throw std::invalid_argument("evaluate: inequality does not fit the point dimensions");
        acc += c * x.at(v, cls);
    }
    return acc;
}

Rat evaluate(const LinearInequality& ineq, const IncidenceVector& chi, int n, int k) {
    if (chi.size() != static_cast<size_t>(n) * k)
        throw std::invalid_argument("evaluate: incidence vector has wrong length");
    Rat acc;
    for (const auto& [key, c] : ineq.coef) {
        auto [v, cls] = key;
        if (v < 0 || v >= n || cls < 0 || cls >= k)
            throw std::invalid_argument("evaluate: inequality does not fit the dimensions");
        if (chi[static_cast<size_t>(v) * k + cls]) acc += c;
    }
    return acc;
}

std::string serialize_inequality(const LinearInequality& ineq) {
    std::ostringstream os;
    os << "ineq " << family_name(ineq.family) << " " << ineq.rhs.str() << " {";
    for (const auto& [key, c] : ineq.coef)
        os << " (" << key.first + 1 << "," << key.second + 1 << "):" << c.str();
    os << " }";
    return os.str();
}

LinearInequality parse_inequality(const std::string& line) {
    std::istringstream is(line);
    std::string tag, fam, rhs;
    if (!(is >> tag >> fam >> rhs) || tag != "ineq")
        throw std::invalid_argument("parse_inequality: expected 'ineq <family> <rhs> { ... }'");
    LinearInequality out;
    out.family = family_from_name(fam);
    out.rhs = Rat::parse(rhs);
    std::string brace;
    if (!(is >> brace) || brace != "{")
        throw std::invalid_argument("parse_inequality: missing '{'");
    std::string tok;
    while (is >> tok) {
        if (tok == "}") return out;
        // token shape: (<v>,<c>):<coef>
        auto close = tok.find(')');
        auto colon = tok.find(':', close == std::string::npos ? 0 : close);
        if (tok.front() != '(' || close == std::string::npos || colon == std::string::npos)
            throw std::invalid_argument("parse_inequality: bad term: " + tok);
        std::string inner = tok.substr(1, close - 1);
        auto comma = inner.find(',');
        if (comma == std::string::npos)
            throw std::invalid_argument("parse_inequality: bad term: " + tok);
        int v = std::stoi(inner.substr(0, comma)) - 1;
        int c = std::stoi(inner.substr(comma + 1)) - 1;
        Rat value = Rat::parse(tok.substr(colon + 1));
        if (v < 0 || c < 0) throw std::invalid_argument("parse_inequality: ids are 1-based");
        if (out.coef.count({v, c}))
            throw std::invalid_argument("parse_inequality: duplicate term");
        out.set(v, c, value);
    }
    throw std::invalid_argument("parse_inequality: missing '}'");
}

}  // namespace cks
